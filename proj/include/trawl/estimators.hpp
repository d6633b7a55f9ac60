#ifndef TRAWL_ESTIMATORS_HPP
#define TRAWL_ESTIMATORS_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trawl/levy.hpp"
#include "trawl/moments.hpp"

namespace trawl {

/// Method-of-moments fit of the kernel memory parameter together with the
/// correlation-factor values at the lag grid.
struct MomFitResult {
  double kernel_estimate = 0.0;        // lambda_hat or H_hat
  std::vector<double> c_estimates;     // c_hat(delta), ..., c_hat(tau_tilde delta)
  Eigen::MatrixXd covariance;          // T x T delta-method matrix D W D^T
  std::vector<double> std_errors;      // sqrt(diag(covariance)/n)
  double delta = 1.0;
  int tau_tilde = 0;
  std::optional<double> alpha;
  std::size_t n_obs = 0;
  bool asymptotics_valid = false;
  std::string warning;
};

struct ScalarFit {
  double estimate = 0.0;
  double std_error = 0.0;  // NaN when asymptotics are unavailable
  bool asymptotics_valid = false;
  std::string warning;
};

/// lambda_hat = -log(rho1 / c_delta) / delta (exact inversion of
/// rho(delta) = c(delta) e^{-lambda delta}).
ScalarFit mom_exp_known_c(double rho1, double c_delta, double delta);
/// Same, with the delta-method standard error from a caller-supplied w11.
ScalarFit mom_exp_known_c(double rho1, double c_delta, double delta, double w11,
                          std::size_t n);

/// H_hat = 1 - log(rho1 / c_delta) / log(1 + delta/alpha). The standard-error
/// overload refuses a confidence statement when H_hat <= 2 (long memory).
ScalarFit mom_supgamma_known_c(double rho1, double c_delta, double alpha, double delta);
ScalarFit mom_supgamma_known_c(double rho1, double c_delta, double alpha, double delta,
                               double w11, std::size_t n);

/// Known-period estimators built on two (or more) empirical autocorrelations.
/// acf must reach lag T = tau_tilde + 1; seed_for_se fixes the fourth-cumulant
/// input of the w-matrix at the fitted model (Gaussian by default, which
/// drops the fourth-cumulant term).
MomFitResult mom_exp_known_tau(const Acf& acf, int tau_tilde, double delta,
                               std::size_t n_obs,
                               const LevySeed& seed_for_se = LevySeed::gaussian(0.0, 1.0));

MomFitResult mom_supgamma_known_tau(const Acf& acf, int tau_tilde, double alpha,
                                    double delta, std::size_t n_obs,
                                    const LevySeed& seed_for_se = LevySeed::gaussian(0.0,
                                                                                     1.0));

/// The estimator maps F and their analytic Jacobians, exposed so tests can
/// cross-check against finite differences. rho holds (rho_1, ..., rho_T).
std::vector<double> mom_exp_map(const std::vector<double>& rho, double delta);
Eigen::MatrixXd mom_exp_jacobian(const std::vector<double>& rho, double delta);
std::vector<double> mom_supgamma_map(const std::vector<double>& rho, double alpha,
                                     double delta);
Eigen::MatrixXd mom_supgamma_jacobian(const std::vector<double>& rho, double alpha,
                                      double delta);

/// GMM specification: the moment map theta -> (mu(theta), D(0..m, theta))
/// with D(k) = E(Y_0 Y_{k delta}), box bounds, and a weight matrix.
struct GmmSpec {
  int lags = 2;  // m >= 2
  std::vector<std::string> param_names;
  Eigen::VectorXd lower, upper;  // finite box
  Eigen::MatrixXd weight;        // (m+2)x(m+2); size 0 means identity
  std::function<void(const Eigen::VectorXd& theta, double delta, int m, double& mu,
                     Eigen::VectorXd& D)>
      moment_map;

  /// theta = (lambda, sigma2, mu): Gaussian(mu, sigma2) seed, exponential trawl.
  static GmmSpec exp_gaussian(int m);
  /// theta = (lambda, rate): Poisson(rate) seed, exponential trawl.
  static GmmSpec exp_poisson(int m);
  /// theta = (alpha, H, sigma2): Gaussian(0, sigma2) seed, supGamma trawl.
  static GmmSpec supgamma_gaussian(int m);
};

struct GmmFitResult {
  Eigen::VectorXd theta;
  std::vector<std::string> param_names;
  Eigen::MatrixXd covariance;      // sandwich M Sigma_a M^T (per sqrt(n))
  std::vector<double> std_errors;  // sqrt(diag/N), N = n - m
  double objective = 0.0;
  bool boundary_warning = false;
  std::size_t n_obs = 0;
  int hac_bandwidth = 0;
  int restarts_used = 0;
};

/// Minimises g_{n,m}(theta)^T A g_{n,m}(theta) by seeded Nelder-Mead restarts
/// inside the box; the sandwich covariance uses a Bartlett-kernel HAC estimate
/// of Sigma_a and a finite-difference Jacobian of the moment map.
GmmFitResult gmm_fit(std::span<const double> series, const GmmSpec& spec, double delta,
                     std::uint64_t seed = 12345,
                     std::optional<int> hac_bandwidth = std::nullopt);

}  // namespace trawl

#endif  // TRAWL_ESTIMATORS_HPP
