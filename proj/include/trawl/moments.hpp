#ifndef TRAWL_MOMENTS_HPP
#define TRAWL_MOMENTS_HPP

#include <span>
#include <utility>
#include <vector>

#include "trawl/model.hpp"

namespace trawl {

/// Sample (or theoretical) autocorrelation sequence on the lag grid h*delta.
struct Acf {
  double delta = 1.0;
  std::vector<double> values;  // index h = 0..H_max, values[0] == 1
  bool centered = true;
};

/// E(Y) and Var(Y) of the periodic trawl process. Closed form for p == 1 and
/// for Exponential + Sine, quadrature otherwise.
std::pair<double, double> theoretical_moments(const ModelSpec& model);

/// Cov(Y_0, Y_t) = Var(L') int p(u) p(t+u) g(t+u) du.
double theoretical_acov(const ModelSpec& model, double t);

/// Cor(Y_0, Y_t) = c(t) * tail-mass ratio.
double theoretical_acf(const ModelSpec& model, double t);

enum class SeasonalKind { Additive, Multiplicative };

struct SeasonalMoments {
  double mean, variance, acov, acor;
};

/// Second-order statistics of the deterministic-seasonality variants
/// X^a(t) = q(t) + X_t and X^m(t) = q(t) X_t built on the plain trawl X
/// (model.periodic must be p == 1). acov/acor refer to the pair (0, t).
SeasonalMoments seasonal_variant_moments(const ModelSpec& model, const PeriodicFunction& q,
                                         SeasonalKind kind, double t);

double sample_mean(std::span<const double> series);

/// gamma_hat(h delta) with divisor n and summation range j = 1..n-h; the
/// uncentered variant omits the mean correction.
double sample_acov(std::span<const double> series, std::size_t lag, bool centered = true);

Acf sample_acf(std::span<const double> series, double delta, std::size_t max_lag,
               bool centered = true);

}  // namespace trawl

#endif  // TRAWL_MOMENTS_HPP
