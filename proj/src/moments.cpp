#include "trawl/moments.hpp"

#include <cmath>

#include "trawl/errors.hpp"
#include "trawl/quadrature.hpp"

namespace trawl {

namespace {
constexpr double kPi = 3.14159265358979323846;

bool exp_sine(const ModelSpec& m) {
  return m.trawl.kind() == TrawlFunction::Kind::Exponential &&
         m.periodic.kind() == PeriodicFunction::Kind::Sine;
}

void require_second_moment(const ModelSpec& m) {
  if (!m.seed.has_moment(2)) {
    throw UnsupportedMomentError("seed " + m.seed.to_string() +
                                 " has no second moment; moment-based operations refuse it");
  }
}

void reject_tabulated_p(const ModelSpec& m, const char* op) {
  if (m.periodic.kind() == PeriodicFunction::Kind::TabulatedC) {
    throw ConfigError(std::string(op) +
                      ": a tabulated correlation factor does not determine the kernel p");
  }
}
}  // namespace

std::pair<double, double> theoretical_moments(const ModelSpec& model) {
  require_second_moment(model);
  reject_tabulated_p(model, "theoretical_moments");
  const double k1 = model.seed.mean();
  const double k2 = model.seed.variance();
  if (model.periodic.is_one()) {
    const double mass = model.trawl.total_mass();
    return {k1 * mass, k2 * mass};
  }
  if (exp_sine(model)) {
    const double lam = model.trawl.lambda();
    const double tau = model.periodic.period();
    const double mean = k1 * 2.0 * kPi * tau / (lam * lam * tau * tau + 4.0 * kPi * kPi);
    const double var =
        k2 * 8.0 * kPi * kPi / (lam * lam * lam * tau * tau + 16.0 * kPi * kPi * lam);
    return {mean, var};
  }
  const auto& g = model.trawl;
  const auto& p = model.periodic;
  const double mean =
      k1 * integrate_to_inf([&](double u) { return p(u) * g(u); }, 0.0, 1e-11);
  const double var =
      k2 * integrate_to_inf([&](double u) { return p(u) * p(u) * g(u); }, 0.0, 1e-11);
  return {mean, var};
}

double theoretical_acov(const ModelSpec& model, double t) {
  if (t < 0.0) throw DomainError("theoretical_acov: t must be >= 0");
  require_second_moment(model);
  reject_tabulated_p(model, "theoretical_acov");
  const double k2 = model.seed.variance();
  if (model.periodic.is_one()) {
    return k2 * model.trawl.tail_mass(t);
  }
  if (exp_sine(model)) {
    const double lam = model.trawl.lambda();
    const double tau = model.periodic.period();
    const double w = 2.0 * kPi * t / tau;
    return k2 * 2.0 * kPi * std::exp(-lam * t) *
           (std::sin(w) * tau * lam + 4.0 * kPi * std::cos(w)) /
           (lam * (lam * lam * tau * tau + 16.0 * kPi * kPi));
  }
  const auto& g = model.trawl;
  const auto& p = model.periodic;
  return k2 * integrate_to_inf([&](double u) { return p(u) * p(t + u) * g(t + u); }, 0.0,
                               1e-11);
}

double theoretical_acf(const ModelSpec& model, double t) {
  if (t < 0.0) throw DomainError("theoretical_acf: t must be >= 0");
  if (model.periodic.kind() == PeriodicFunction::Kind::TabulatedC) {
    // rho(t) = c(t) * tail ratio, with c read off the table directly.
    return model.periodic(t) * model.trawl.tail_mass(t) / model.trawl.total_mass();
  }
  if (model.periodic.is_one()) {
    return model.trawl.tail_mass(t) / model.trawl.total_mass();
  }
  if (exp_sine(model)) {
    return correlation_factor_c(model.trawl, model.periodic, t) *
           std::exp(-model.trawl.lambda() * t);
  }
  const auto [mean, var] = theoretical_moments(model);
  (void)mean;
  if (var <= 0.0) throw DomainError("theoretical_acf: zero variance");
  return theoretical_acov(model, t) / var;
}

SeasonalMoments seasonal_variant_moments(const ModelSpec& model, const PeriodicFunction& q,
                                         SeasonalKind kind, double t) {
  if (!model.periodic.is_one()) {
    throw ConfigError("seasonal variants are defined on the plain trawl (p == 1)");
  }
  const auto [mx, vx] = theoretical_moments(model);
  const double cx = theoretical_acov(model, t);
  const double rx = theoretical_acf(model, t);
  if (kind == SeasonalKind::Additive) {
    return {q(t) + mx, vx, cx, rx};
  }
  const double q0 = q(0.0), qt = q(t);
  SeasonalMoments out;
  out.mean = qt * mx;
  out.variance = qt * qt * vx;
  out.acov = q0 * qt * cx;
  if (qt == 0.0) {
    throw DomainError("multiplicative variant: q(t) = 0 makes the correlation undefined");
  }
  out.acor = q0 / qt * rx;
  return out;
}

double sample_mean(std::span<const double> series) {
  if (series.empty()) throw DomainError("sample_mean: empty series");
  double s = 0.0;
  for (double v : series) s += v;
  return s / static_cast<double>(series.size());
}

double sample_acov(std::span<const double> series, std::size_t lag, bool centered) {
  const std::size_t n = series.size();
  if (lag >= n) throw DomainError("sample_acov: lag must be < series length");
  const double mean = centered ? sample_mean(series) : 0.0;
  double s = 0.0;
  for (std::size_t j = 0; j + lag < n; ++j) {
    s += (series[j] - mean) * (series[j + lag] - mean);
  }
  return s / static_cast<double>(n);
}

Acf sample_acf(std::span<const double> series, double delta, std::size_t max_lag,
               bool centered) {
  if (delta <= 0.0) throw DomainError("sample_acf: delta must be > 0");
  const double g0 = sample_acov(series, 0, centered);
  if (g0 <= 0.0) throw DomainError("sample_acf: degenerate series (zero variance)");
  Acf acf;
  acf.delta = delta;
  acf.centered = centered;
  acf.values.resize(max_lag + 1);
  for (std::size_t h = 0; h <= max_lag; ++h) {
    acf.values[h] = sample_acov(series, h, centered) / g0;
  }
  return acf;
}

}  // namespace trawl
