#include "trawl/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "parse_call.hpp"
#include "trawl/errors.hpp"
#include "trawl/quadrature.hpp"

namespace trawl {

namespace {
constexpr double kPi = 3.14159265358979323846;

std::string fmt_num(double x) {
  std::string s = std::to_string(x);
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}
}  // namespace

TrawlFunction TrawlFunction::exponential(double lambda) {
  if (lambda <= 0.0) throw ConfigError("exp trawl: lambda must be > 0");
  return {Kind::Exponential, lambda, 0.0};
}

TrawlFunction TrawlFunction::sup_gamma(double alpha, double hurst) {
  if (alpha <= 0.0) throw ConfigError("supgamma trawl: alpha must be > 0");
  if (hurst <= 1.0) {
    throw DomainError("supgamma trawl: H <= 1 gives a divergent total mass");
  }
  return {Kind::SupGamma, alpha, hurst};
}

TrawlFunction TrawlFunction::numeric_monotone(std::vector<double> xs,
                                              std::vector<double> values) {
  if (xs.size() != values.size() || xs.size() < 2) {
    throw ConfigError("numeric trawl: need matching xs/values with >= 2 knots");
  }
  if (xs.front() != 0.0) throw ConfigError("numeric trawl: grid must start at 0");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0 && xs[i] <= xs[i - 1]) throw ConfigError("numeric trawl: xs must increase");
    if (values[i] < 0.0) throw ConfigError("numeric trawl: g must be >= 0");
    if (i > 0 && values[i] > values[i - 1] + 1e-12) {
      throw ConfigError("numeric trawl: g must be nonincreasing");
    }
  }
  TrawlFunction g(Kind::NumericMonotone, 0.0, 0.0);
  g.xs_ = std::move(xs);
  g.gs_ = std::move(values);
  return g;
}

double TrawlFunction::operator()(double u) const {
  if (u < 0.0) throw DomainError("trawl function defined on [0, inf)");
  switch (kind_) {
    case Kind::Exponential:
      return std::exp(-p1_ * u);
    case Kind::SupGamma:
      return std::pow(1.0 + u / p1_, -p2_);
    case Kind::NumericMonotone: {
      if (u >= xs_.back()) return 0.0;
      const auto it = std::upper_bound(xs_.begin(), xs_.end(), u);
      const std::size_t i = static_cast<std::size_t>(it - xs_.begin());
      const double w = (u - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
      return gs_[i - 1] + w * (gs_[i] - gs_[i - 1]);
    }
  }
  throw ConfigError("unsupported trawl kind");
}

double TrawlFunction::integral(double lo, double hi) const {
  if (lo < 0.0) throw DomainError("trawl integral: lo must be >= 0");
  if (hi < lo) throw DomainError("trawl integral: hi < lo");
  if (hi == lo) return 0.0;
  switch (kind_) {
    case Kind::Exponential: {
      const double upper = (hi >= kInf) ? 0.0 : std::exp(-p1_ * hi);
      return (std::exp(-p1_ * lo) - upper) / p1_;
    }
    case Kind::SupGamma: {
      const double em1 = 1.0 - p2_;  // 1 - H < 0
      const double upper = (hi >= kInf) ? 0.0 : std::pow(1.0 + hi / p1_, em1);
      return p1_ / (p2_ - 1.0) * (std::pow(1.0 + lo / p1_, em1) - upper);
    }
    case Kind::NumericMonotone: {
      const double support_end = xs_.back();
      const double a = std::min(lo, support_end);
      const double b = std::min(hi >= kInf ? support_end : hi, support_end);
      if (b <= a) return 0.0;
      // Integrate per knot segment so the quadrature never straddles a kink.
      double total = 0.0;
      for (std::size_t i = 1; i < xs_.size(); ++i) {
        const double sa = std::max(a, xs_[i - 1]);
        const double sb = std::min(b, xs_[i]);
        if (sb <= sa) continue;
        total += integrate([this](double u) { return (*this)(u); }, sa, sb, 1e-10);
      }
      return total;
    }
  }
  throw ConfigError("unsupported trawl kind");
}

double TrawlFunction::tail_quantile(double frac) const {
  const double target = frac * total_mass();
  if (target <= 0.0) throw DomainError("tail_quantile: frac must be > 0");
  switch (kind_) {
    case Kind::Exponential:
      return -std::log(frac) / p1_;
    case Kind::SupGamma:
      return p1_ * (std::pow(frac, 1.0 / (1.0 - p2_)) - 1.0);
    case Kind::NumericMonotone: {
      double lo = 0.0, hi = xs_.back();
      for (int it = 0; it < 200 && hi - lo > 1e-12 * (1.0 + hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        (tail_mass(mid) > target ? lo : hi) = mid;
      }
      return hi;
    }
  }
  throw ConfigError("unsupported trawl kind");
}

MemoryClass TrawlFunction::memory_class() const {
  if (kind_ == Kind::SupGamma && p2_ <= 2.0) return MemoryClass::Long;
  return MemoryClass::Short;
}

std::string TrawlFunction::to_string() const {
  switch (kind_) {
    case Kind::Exponential:
      return "exp(" + fmt_num(p1_) + ")";
    case Kind::SupGamma:
      return "supgamma(" + fmt_num(p1_) + "," + fmt_num(p2_) + ")";
    case Kind::NumericMonotone:
      return "numeric[" + std::to_string(xs_.size()) + " knots]";
  }
  return "?";
}

TrawlFunction TrawlFunction::parse(const std::string& text) {
  const auto call = detail::parse_call(text);
  if (call.name == "exp") {
    if (call.args.size() != 1) throw ConfigError("exp(lambda) expects 1 parameter");
    return exponential(call.args[0]);
  }
  if (call.name == "supgamma") {
    if (call.args.size() != 2) throw ConfigError("supgamma(alpha,H) expects 2 parameters");
    return sup_gamma(call.args[0], call.args[1]);
  }
  throw ConfigError("unknown trawl function '" + call.name + "'");
}

PeriodicFunction PeriodicFunction::one() { return {}; }

PeriodicFunction PeriodicFunction::sine(double tau) {
  if (tau <= 0.0) throw ConfigError("sine: tau must be > 0");
  PeriodicFunction p;
  p.kind_ = Kind::Sine;
  p.tau_ = tau;
  return p;
}

PeriodicFunction PeriodicFunction::fourier(double tau, std::vector<double> a,
                                           std::vector<double> b) {
  if (tau <= 0.0) throw ConfigError("fourier: tau must be > 0");
  if (a.size() != b.size() || a.empty()) {
    throw ConfigError("fourier: need matching nonempty a/b coefficient lists");
  }
  PeriodicFunction p;
  p.kind_ = Kind::FourierFinite;
  p.tau_ = tau;
  p.a_ = std::move(a);
  p.b_ = std::move(b);
  return p;
}

PeriodicFunction PeriodicFunction::tabulated_c(double delta, std::vector<double> values) {
  if (delta <= 0.0) throw ConfigError("tabulated c: delta must be > 0");
  if (values.size() < 2) throw ConfigError("tabulated c: need >= 2 values");
  PeriodicFunction p;
  p.kind_ = Kind::TabulatedC;
  p.delta_ = delta;
  p.tau_ = delta * static_cast<double>(values.size());
  p.vals_ = std::move(values);
  return p;
}

double PeriodicFunction::operator()(double x) const {
  if (x < 0.0) throw DomainError("periodic kernel defined on [0, inf)");
  if (kind_ == Kind::One) return 1.0;
  // Reduce modulo tau in extended precision so large x keep full phase accuracy.
  long double r = std::fmod(static_cast<long double>(x), static_cast<long double>(tau_));
  if (r < 0) r += tau_;
  const double xr = static_cast<double>(r);
  switch (kind_) {
    case Kind::Sine:
      return std::sin(2.0 * kPi * xr / tau_);
    case Kind::FourierFinite: {
      double v = 0.0;
      for (std::size_t k = 0; k < a_.size(); ++k) {
        const double w = 2.0 * kPi * static_cast<double>(k + 1) * xr / tau_;
        v += a_[k] * std::cos(w) + b_[k] * std::sin(w);
      }
      return v;
    }
    case Kind::TabulatedC: {
      const std::size_t m = vals_.size();
      double pos = xr / delta_;
      // Snap to the grid when x is a lag multiple up to rounding noise.
      const double nearest = std::round(pos);
      if (std::abs(pos - nearest) < 1e-9) pos = nearest;
      std::size_t i = static_cast<std::size_t>(pos) % m;
      const double frac = pos - std::floor(pos);
      if (frac == 0.0) return vals_[i];
      const std::size_t j = (i + 1) % m;
      return vals_[i] + frac * (vals_[j] - vals_[i]);
    }
    default:
      break;
  }
  throw ConfigError("unsupported periodic kind");
}

double PeriodicFunction::sup_abs() const {
  switch (kind_) {
    case Kind::One:
    case Kind::Sine:
      return 1.0;
    case Kind::FourierFinite: {
      double s = 0.0;
      for (std::size_t k = 0; k < a_.size(); ++k) s += std::abs(a_[k]) + std::abs(b_[k]);
      return s;
    }
    case Kind::TabulatedC: {
      double m = 0.0;
      for (double v : vals_) m = std::max(m, std::abs(v));
      return m;
    }
  }
  return 1.0;
}

std::string PeriodicFunction::to_string() const {
  switch (kind_) {
    case Kind::One:
      return "one";
    case Kind::Sine:
      return "sine(" + fmt_num(tau_) + ")";
    case Kind::FourierFinite: {
      std::string s = "fourier(" + fmt_num(tau_);
      for (std::size_t k = 0; k < a_.size(); ++k) {
        s += ";" + fmt_num(a_[k]) + "," + fmt_num(b_[k]);
      }
      return s + ")";
    }
    case Kind::TabulatedC:
      return "tabulated-c[" + std::to_string(vals_.size()) + "]";
  }
  return "?";
}

PeriodicFunction PeriodicFunction::parse(const std::string& text) {
  const auto call = detail::parse_call(text);
  if (call.name == "one") {
    if (!call.args.empty()) throw ConfigError("one takes no parameters");
    return one();
  }
  if (call.name == "sine") {
    if (call.args.size() != 1) throw ConfigError("sine(tau) expects 1 parameter");
    return sine(call.args[0]);
  }
  if (call.name == "fourier") {
    if (call.args.size() < 3 || call.args.size() % 2 == 0) {
      throw ConfigError("fourier(tau;a1,b1,...) expects tau plus coefficient pairs");
    }
    std::vector<double> a, b;
    for (std::size_t i = 1; i < call.args.size(); i += 2) {
      a.push_back(call.args[i]);
      b.push_back(call.args[i + 1]);
    }
    return fourier(call.args[0], std::move(a), std::move(b));
  }
  throw ConfigError("unknown periodic kernel '" + call.name + "'");
}

double correlation_factor_c(const TrawlFunction& g, const PeriodicFunction& p, double t) {
  if (t < 0.0) throw DomainError("correlation factor defined for t >= 0");
  switch (p.kind()) {
    case PeriodicFunction::Kind::One:
      return 1.0;
    case PeriodicFunction::Kind::TabulatedC:
      // The tabulated variant stores c itself.
      return p(t);
    default:
      break;
  }
  if (g.kind() == TrawlFunction::Kind::Exponential &&
      p.kind() == PeriodicFunction::Kind::Sine) {
    const double lam = g.lambda();
    const double tau = p.period();
    const double w = 2.0 * kPi * t / tau;
    return (std::sin(w) * tau * lam + 4.0 * kPi * std::cos(w)) / (4.0 * kPi);
  }
  // Generic route: Cor(Y_0, Y_t) divided by the tail-mass ratio.
  auto cov_integrand = [&](double s) {
    return [&g, &p, s](double u) { return p(u) * p(s + u) * g(s + u); };
  };
  const double tol = 1e-11;
  const double denom = integrate_to_inf([&g, &p](double u) { return p(u) * p(u) * g(u); },
                                        0.0, tol);
  if (std::abs(denom) < 1e-14) {
    throw DomainError("correlation factor: degenerate kernel, Var(Y) = 0");
  }
  const double num = integrate_to_inf(cov_integrand(t), 0.0, tol);
  const double tail_ratio = g.tail_mass(t) / g.total_mass();
  if (tail_ratio <= 0.0) throw DomainError("correlation factor: zero tail mass");
  return (num / denom) / tail_ratio;
}

}  // namespace trawl
