#include "trawl/levy.hpp"

#include <cmath>
#include <complex>

#include "parse_call.hpp"
#include "trawl/errors.hpp"

namespace trawl {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
}

LevySeed::LevySeed(Family f, double p1, double p2) : family_(f), p1_(p1), p2_(p2) {
  switch (family_) {
    case Family::Gaussian:
      if (p2_ < 0.0) throw ConfigError("gaussian: sigma2 must be >= 0");
      triplet_ = {p1_, p2_, LevyMeasureFamily::None, 0.0, 0.0, p2_ == 0.0, true};
      break;
    case Family::Poisson:
      if (p1_ <= 0.0) throw ConfigError("poisson: rate must be > 0");
      // nu = rate * delta_1; zeta chosen so the compensator cancels and
      // C(theta) = rate (e^{i theta} - 1).
      triplet_ = {p1_, 0.0, LevyMeasureFamily::PoissonAtom, p1_, 0.0, true, true};
      break;
    case Family::Gamma:
      if (p1_ <= 0.0 || p2_ <= 0.0) throw ConfigError("gamma: shape and rate must be > 0");
      // nu(dxi) = shape * xi^{-1} e^{-rate xi} dxi on (0, inf);
      // zeta = int_0^1 xi nu(dxi) = shape (1 - e^{-rate}) / rate.
      triplet_ = {p1_ * (1.0 - std::exp(-p2_)) / p2_, 0.0, LevyMeasureFamily::GammaDensity,
                  p1_, p2_, true, true};
      break;
    case Family::NegativeBinomial:
      if (p1_ <= 0.0 || p2_ <= 0.0 || p2_ >= 1.0) {
        throw ConfigError("negbin: size > 0 and prob in (0,1) required");
      }
      // nu({k}) = size * (1-prob)^k / k, k >= 1 (logarithmic jumps);
      // zeta = nu({1}) = size (1-prob).
      triplet_ = {p1_ * (1.0 - p2_), 0.0, LevyMeasureFamily::Logarithmic, p1_, p2_, true, true};
      break;
    case Family::Cauchy:
      if (p1_ <= 0.0) throw ConfigError("cauchy: scale must be > 0");
      // nu(dxi) = scale / (pi xi^2) dxi, symmetric; no moments of any order.
      triplet_ = {0.0, 0.0, LevyMeasureFamily::CauchyDensity, p1_, 0.0, false, false};
      break;
  }
}

LevySeed LevySeed::gaussian(double mu, double sigma2) { return {Family::Gaussian, mu, sigma2}; }
LevySeed LevySeed::poisson(double rate) { return {Family::Poisson, rate, 0.0}; }
LevySeed LevySeed::gamma(double shape, double rate) { return {Family::Gamma, shape, rate}; }
LevySeed LevySeed::negative_binomial(double size, double prob) {
  return {Family::NegativeBinomial, size, prob};
}
LevySeed LevySeed::cauchy(double scale) { return {Family::Cauchy, scale, 0.0}; }

std::complex<double> LevySeed::cumulant(double theta) const {
  switch (family_) {
    case Family::Gaussian:
      return kI * theta * p1_ - 0.5 * theta * theta * p2_;
    case Family::Poisson:
      return p1_ * (std::exp(kI * theta) - 1.0);
    case Family::Gamma:
      // -shape Log(1 - i theta / rate); the argument stays in the right half
      // plane, so the principal branch is the distinguished logarithm.
      return -p1_ * std::log(1.0 - kI * theta / p2_);
    case Family::NegativeBinomial: {
      const double q = 1.0 - p2_;
      return p1_ * std::log(p2_ / (1.0 - q * std::exp(kI * theta)));
    }
    case Family::Cauchy:
      return std::complex<double>(-p1_ * std::abs(theta), 0.0);
  }
  throw ConfigError("unsupported seed family");
}

std::array<double, 4> LevySeed::cumulants_1_to_4() const {
  switch (family_) {
    case Family::Gaussian:
      return {p1_, p2_, 0.0, 0.0};
    case Family::Poisson:
      return {p1_, p1_, p1_, p1_};
    case Family::Gamma: {
      const double b = p2_;
      return {p1_ / b, p1_ / (b * b), 2.0 * p1_ / (b * b * b), 6.0 * p1_ / (b * b * b * b)};
    }
    case Family::NegativeBinomial: {
      const double r = p1_, p = p2_, q = 1.0 - p2_;
      return {r * q / p, r * q / (p * p), r * q * (1.0 + q) / (p * p * p),
              r * q * (1.0 + 4.0 * q + q * q) / (p * p * p * p)};
    }
    case Family::Cauchy:
      throw UnsupportedMomentError("cauchy seed has no moments");
  }
  throw ConfigError("unsupported seed family");
}

double LevySeed::mean() const { return cumulants_1_to_4()[0]; }

double LevySeed::variance() const { return cumulants_1_to_4()[1]; }

double LevySeed::eta() const {
  const auto k = cumulants_1_to_4();
  if (k[1] <= 0.0) throw DomainError("eta undefined for a degenerate seed");
  return k[3] / (k[1] * k[1]) + 3.0;
}

bool LevySeed::has_moment(int order) const {
  if (family_ == Family::Cauchy) return false;
  return order >= 0;
}

double LevySeed::sample_slice(double leb, RandomStream& rng) const {
  if (leb < 0.0 || !std::isfinite(leb)) {
    throw DomainError("sample_slice: Lebesgue measure must be finite and >= 0");
  }
  if (leb == 0.0) return 0.0;
  switch (family_) {
    case Family::Gaussian:
      return rng.normal(leb * p1_, std::sqrt(leb * p2_));
    case Family::Poisson:
      return static_cast<double>(rng.poisson(leb * p1_));
    case Family::Gamma:
      return rng.gamma(leb * p1_, p2_);
    case Family::NegativeBinomial:
      return static_cast<double>(rng.negative_binomial(leb * p1_, p2_));
    case Family::Cauchy:
      return rng.cauchy(leb * p1_);
  }
  throw ConfigError("unsupported seed family");
}

double LevySeed::abs_levy_moment() const {
  switch (family_) {
    case Family::Gaussian:
      return 0.0;
    case Family::Poisson:
      return p1_;
    case Family::Gamma:
      return p1_ / p2_;
    case Family::NegativeBinomial:
      return p1_ * (1.0 - p2_) / p2_;
    case Family::Cauchy:
      throw UnsupportedMomentError("cauchy seed: int |xi| nu(dxi) diverges");
  }
  throw ConfigError("unsupported seed family");
}

double LevySeed::drift_gamma0() const {
  switch (family_) {
    case Family::Gaussian:
      return p1_;  // no jumps
    case Family::Poisson:
      return 0.0;  // zeta = nu({1})
    case Family::Gamma:
      return 0.0;  // zeta = int_0^1 xi nu by construction
    case Family::NegativeBinomial:
      return 0.0;
    case Family::Cauchy:
      return 0.0;  // symmetric principal value
  }
  throw ConfigError("unsupported seed family");
}

std::string LevySeed::to_string() const {
  auto fmt = [](double x) {
    std::string s = std::to_string(x);
    while (s.size() > 1 && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
  };
  switch (family_) {
    case Family::Gaussian:
      return "gaussian(" + fmt(p1_) + "," + fmt(p2_) + ")";
    case Family::Poisson:
      return "poisson(" + fmt(p1_) + ")";
    case Family::Gamma:
      return "gamma(" + fmt(p1_) + "," + fmt(p2_) + ")";
    case Family::NegativeBinomial:
      return "negbin(" + fmt(p1_) + "," + fmt(p2_) + ")";
    case Family::Cauchy:
      return "cauchy(" + fmt(p1_) + ")";
  }
  return "?";
}

LevySeed LevySeed::parse(const std::string& text) {
  const auto call = detail::parse_call(text);
  auto need = [&](std::size_t n) {
    if (call.args.size() != n) {
      throw ConfigError("seed '" + call.name + "' expects " + std::to_string(n) +
                        " parameter(s)");
    }
  };
  if (call.name == "gaussian") {
    need(2);
    return gaussian(call.args[0], call.args[1]);
  }
  if (call.name == "poisson") {
    need(1);
    return poisson(call.args[0]);
  }
  if (call.name == "gamma") {
    need(2);
    return gamma(call.args[0], call.args[1]);
  }
  if (call.name == "negbin") {
    need(2);
    return negative_binomial(call.args[0], call.args[1]);
  }
  if (call.name == "cauchy") {
    need(1);
    return cauchy(call.args[0]);
  }
  throw ConfigError("unknown seed family '" + call.name + "'");
}

}  // namespace trawl
