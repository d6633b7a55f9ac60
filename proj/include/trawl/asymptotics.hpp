#ifndef TRAWL_ASYMPTOTICS_HPP
#define TRAWL_ASYMPTOTICS_HPP

#include <Eigen/Dense>
#include <string>

#include "trawl/model.hpp"

namespace trawl {

/// Hurwitz zeta zeta(s, a) = sum_{k>=0} (k+a)^{-s}, s > 1, a > 0.
/// Euler-Maclaurin evaluation, ~1e-12 relative accuracy.
double hurwitz_zeta(double s, double a);

/// V_Delta = sum_{j in Z} gamma(j Delta): asymptotic variance of
/// sqrt(n) (sample mean - mu). Closed form for p == 1 with exponential or
/// short-memory supGamma trawls, truncated series otherwise.
/// Long-memory models raise AssumptionViolationError.
double sample_mean_variance(const ModelSpec& model);

/// Limit matrix v_{pq;Delta} (p, q = 0..h) of n Cov(gamma*_n(p D), gamma*_n(q D)):
/// fourth-cumulant term plus the Gaussian-type double series.
Eigen::MatrixXd acov_limit_matrix(const ModelSpec& model, int h);

/// Bartlett limit matrix w_{pq;Delta} (p, q = 1..h) for sample
/// autocorrelations, from the compact combination of v entries.
Eigen::MatrixXd acf_limit_matrix(const ModelSpec& model, int h);

/// Same matrix through the expanded series representation (independent route,
/// kept for cross-validation).
Eigen::MatrixXd acf_limit_matrix_expanded(const ModelSpec& model, int h);

/// V, v and w bundled with truncation metadata.
struct AsymptoticCovariances {
  double delta = 0.0;
  double V_delta = 0.0;
  Eigen::MatrixXd v;  // (h+1) x (h+1)
  Eigen::MatrixXd w;  // h x h
  long truncation_lag = 0;
  double achieved_tol = 0.0;
};

AsymptoticCovariances asymptotic_covariances(const ModelSpec& model, int h);

/// Which summability conditions hold at the model's sampling grid, and which
/// of the mean/autocorrelation central limit theorems therefore apply.
struct CltDiagnostics {
  bool sum_abs_gamma_finite = false;  // sum |gamma(j Delta)| < inf
  bool sum_gamma_sq_finite = false;   // sum gamma^2(j Delta) < inf
  bool seed_fourth_moment = false;
  bool mean_clt_applies = false;
  bool acf_clt_applies = false;
  std::string summary;
};

CltDiagnostics check_clt_assumptions(const ModelSpec& model, double delta);

/// theta-weak-dependence coefficient theta_Y(r). Finite-variation seeds use
/// (int |xi| nu(dxi) + |gamma_0|) int_r^inf |p| g; otherwise the second-order
/// form sqrt(Var(L') int_r^inf p^2 g + (E L')^2 (int_r^inf p g)^2).
double weak_dependence_theta(const ModelSpec& model, double r);

}  // namespace trawl

#endif  // TRAWL_ASYMPTOTICS_HPP
