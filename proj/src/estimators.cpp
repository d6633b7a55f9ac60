#include "trawl/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "trawl/asymptotics.hpp"
#include "trawl/errors.hpp"
#include "trawl/rng.hpp"

namespace trawl {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_ratio(double rho1, double c_delta, const char* op) {
  if (c_delta == 0.0) throw DomainError(std::string(op) + ": c(delta) must be nonzero");
  const double ratio = rho1 / c_delta;
  if (!(ratio > 0.0)) {
    throw DomainError(std::string(op) +
                      ": rho(delta)/c(delta) must be positive for the log inversion");
  }
}

std::vector<double> extract_rho(const Acf& acf, int T, const char* op) {
  if (T < 2) throw DomainError(std::string(op) + ": tau_tilde must be >= 1");
  if (static_cast<int>(acf.values.size()) <= T) {
    throw DomainError(std::string(op) + ": acf must reach lag T_Delta = " +
                      std::to_string(T));
  }
  std::vector<double> rho(static_cast<std::size_t>(T));
  for (int l = 1; l <= T; ++l) rho[static_cast<std::size_t>(l - 1)] = acf.values[static_cast<std::size_t>(l)];
  if (rho.front() == 0.0 || rho.back() == 0.0 ||
      !(rho.back() / rho.front() > 0.0)) {
    throw DomainError(std::string(op) +
                      ": rho(delta) and rho(T delta) must be nonzero with equal signs");
  }
  return rho;
}

/// w-matrix (lags 1..T) of the fitted kernel/correlation-factor model under
/// the supplied seed assumption. c_values are c_hat(delta..tau_tilde delta);
/// the fitted correlation factor uses c(0) = 1 and the first tau_tilde - 1
/// estimates, extended periodically.
Eigen::MatrixXd fitted_w_matrix(const TrawlFunction& trawl,
                                const std::vector<double>& c_values, int tau_tilde,
                                double delta, const LevySeed& seed) {
  PeriodicFunction p = PeriodicFunction::one();
  if (tau_tilde > 1) {
    std::vector<double> table(static_cast<std::size_t>(tau_tilde));
    table[0] = 1.0;  // c(0) = 1 by convention
    for (int l = 1; l < tau_tilde; ++l) {
      table[static_cast<std::size_t>(l)] = c_values[static_cast<std::size_t>(l - 1)];
    }
    p = PeriodicFunction::tabulated_c(delta, table);
  }
  ModelSpec fitted{seed, trawl, p, delta, 0};
  return acf_limit_matrix(fitted, tau_tilde + 1);
}

MomFitResult finish_known_tau(MomFitResult res, const LevySeed& seed,
                              const std::function<TrawlFunction()>& make_trawl,
                              const Eigen::MatrixXd& jac) {
  const int T = res.tau_tilde + 1;
  try {
    const Eigen::MatrixXd W =
        fitted_w_matrix(make_trawl(), res.c_estimates, res.tau_tilde, res.delta, seed);
    res.covariance = jac * W * jac.transpose();
    res.std_errors.resize(static_cast<std::size_t>(T));
    for (int i = 0; i < T; ++i) {
      res.std_errors[static_cast<std::size_t>(i)] =
          std::sqrt(std::max(0.0, res.covariance(i, i)) / static_cast<double>(res.n_obs));
    }
    res.asymptotics_valid = true;
  } catch (const Error& err) {
    res.asymptotics_valid = false;
    res.warning = err.what();
    res.covariance = Eigen::MatrixXd::Constant(T, T, kNaN);
    res.std_errors.assign(static_cast<std::size_t>(T), kNaN);
  }
  return res;
}

}  // namespace

ScalarFit mom_exp_known_c(double rho1, double c_delta, double delta) {
  if (delta <= 0.0) throw DomainError("mom_exp_known_c: delta must be > 0");
  check_ratio(rho1, c_delta, "mom_exp_known_c");
  ScalarFit fit;
  fit.estimate = -std::log(rho1 / c_delta) / delta;
  fit.std_error = kNaN;
  fit.warning = "no w11 supplied; point estimate only";
  return fit;
}

ScalarFit mom_exp_known_c(double rho1, double c_delta, double delta, double w11,
                          std::size_t n) {
  ScalarFit fit = mom_exp_known_c(rho1, c_delta, delta);
  const double lambda = fit.estimate;
  // Delta method on phi(x) = -log(x/c)/delta.
  const double sigma2 =
      w11 * std::exp(2.0 * lambda * delta) / (c_delta * c_delta * delta * delta);
  fit.std_error = std::sqrt(sigma2 / static_cast<double>(n));
  fit.asymptotics_valid = true;
  fit.warning.clear();
  return fit;
}

ScalarFit mom_supgamma_known_c(double rho1, double c_delta, double alpha, double delta) {
  if (delta <= 0.0 || alpha <= 0.0) {
    throw DomainError("mom_supgamma_known_c: alpha and delta must be > 0");
  }
  check_ratio(rho1, c_delta, "mom_supgamma_known_c");
  ScalarFit fit;
  fit.estimate = 1.0 - std::log(rho1 / c_delta) / std::log1p(delta / alpha);
  fit.std_error = kNaN;
  fit.warning = "no w11 supplied; point estimate only";
  return fit;
}

ScalarFit mom_supgamma_known_c(double rho1, double c_delta, double alpha, double delta,
                               double w11, std::size_t n) {
  ScalarFit fit = mom_supgamma_known_c(rho1, c_delta, alpha, delta);
  const double H = fit.estimate;
  if (H <= 2.0) {
    fit.asymptotics_valid = false;
    fit.std_error = kNaN;
    fit.warning =
        "H_hat <= 2: long-memory regime, the CLT assumptions fail and no confidence "
        "interval is reported";
    return fit;
  }
  const double logf = std::log1p(delta / alpha);
  const double sigma2 = w11 * std::pow(1.0 + delta / alpha, 2.0 * H - 2.0) /
                        (logf * logf * c_delta * c_delta);
  fit.std_error = std::sqrt(sigma2 / static_cast<double>(n));
  fit.asymptotics_valid = true;
  fit.warning.clear();
  return fit;
}

std::vector<double> mom_exp_map(const std::vector<double>& rho, double delta) {
  const int T = static_cast<int>(rho.size());
  std::vector<double> F(rho.size());
  const double F1 = std::log(rho.back() / rho.front()) /
                    (delta * (1.0 - static_cast<double>(T)));
  F[0] = F1;
  for (int i = 2; i <= T; ++i) {
    F[static_cast<std::size_t>(i - 1)] =
        rho[static_cast<std::size_t>(i - 2)] *
        std::exp(static_cast<double>(i - 1) * delta * F1);
  }
  return F;
}

Eigen::MatrixXd mom_exp_jacobian(const std::vector<double>& rho, double delta) {
  const int T = static_cast<int>(rho.size());
  const double Td = static_cast<double>(T);
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(T, T);
  const double F1 = std::log(rho.back() / rho.front()) / (delta * (1.0 - Td));
  D(0, 0) = 1.0 / (delta * (Td - 1.0) * rho.front());
  D(0, T - 1) = 1.0 / (delta * (1.0 - Td) * rho.back());
  for (int i = 2; i <= T; ++i) {
    const double ex = std::exp(static_cast<double>(i - 1) * delta * F1);
    const double r = rho[static_cast<std::size_t>(i - 2)];
    D(i - 1, i - 2) += ex;
    D(i - 1, 0) += r * static_cast<double>(i - 1) * delta * ex * D(0, 0);
    D(i - 1, T - 1) += r * static_cast<double>(i - 1) * delta * ex * D(0, T - 1);
  }
  return D;
}

std::vector<double> mom_supgamma_map(const std::vector<double>& rho, double alpha,
                                     double delta) {
  const int T = static_cast<int>(rho.size());
  const double kappa =
      std::log((alpha + delta) / (alpha + static_cast<double>(T) * delta));
  std::vector<double> F(rho.size());
  const double F1 = 1.0 + std::log(rho.back() / rho.front()) / kappa;
  F[0] = F1;
  for (int i = 2; i <= T; ++i) {
    const double m = 1.0 + static_cast<double>(i - 1) * delta / alpha;
    F[static_cast<std::size_t>(i - 1)] =
        rho[static_cast<std::size_t>(i - 2)] * std::pow(m, 1.0 - F1);
  }
  return F;
}

Eigen::MatrixXd mom_supgamma_jacobian(const std::vector<double>& rho, double alpha,
                                      double delta) {
  const int T = static_cast<int>(rho.size());
  const double kappa =
      std::log((alpha + delta) / (alpha + static_cast<double>(T) * delta));
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(T, T);
  const double F1 = 1.0 + std::log(rho.back() / rho.front()) / kappa;
  D(0, 0) = -1.0 / (kappa * rho.front());
  D(0, T - 1) = 1.0 / (kappa * rho.back());
  for (int i = 2; i <= T; ++i) {
    const double m = 1.0 + static_cast<double>(i - 1) * delta / alpha;
    const double P = std::pow(m, 1.0 - F1);
    const double r = rho[static_cast<std::size_t>(i - 2)];
    // dF_i/drho_j = P * 1{j = i-1} - r P log(m) dF1/drho_j.
    D(i - 1, i - 2) += P;
    D(i - 1, 0) += -r * P * std::log(m) * D(0, 0);
    D(i - 1, T - 1) += -r * P * std::log(m) * D(0, T - 1);
  }
  return D;
}

MomFitResult mom_exp_known_tau(const Acf& acf, int tau_tilde, double delta,
                               std::size_t n_obs, const LevySeed& seed_for_se) {
  const int T = tau_tilde + 1;
  const auto rho = extract_rho(acf, T, "mom_exp_known_tau");
  const auto F = mom_exp_map(rho, delta);
  MomFitResult res;
  res.delta = delta;
  res.tau_tilde = tau_tilde;
  res.n_obs = n_obs;
  res.kernel_estimate = F[0];
  res.c_estimates.assign(F.begin() + 1, F.end());
  const double lambda = F[0];
  return finish_known_tau(
      std::move(res), seed_for_se,
      [lambda]() { return TrawlFunction::exponential(lambda); },
      mom_exp_jacobian(rho, delta));
}

MomFitResult mom_supgamma_known_tau(const Acf& acf, int tau_tilde, double alpha,
                                    double delta, std::size_t n_obs,
                                    const LevySeed& seed_for_se) {
  if (alpha <= 0.0) throw DomainError("mom_supgamma_known_tau: alpha must be > 0");
  const int T = tau_tilde + 1;
  const auto rho = extract_rho(acf, T, "mom_supgamma_known_tau");
  const auto F = mom_supgamma_map(rho, alpha, delta);
  MomFitResult res;
  res.delta = delta;
  res.tau_tilde = tau_tilde;
  res.alpha = alpha;
  res.n_obs = n_obs;
  res.kernel_estimate = F[0];
  res.c_estimates.assign(F.begin() + 1, F.end());
  const double H = F[0];
  if (H <= 2.0) {
    res.asymptotics_valid = false;
    res.warning =
        "H_hat <= 2: long-memory regime, point estimates reported without standard errors";
    res.covariance = Eigen::MatrixXd::Constant(T, T, kNaN);
    res.std_errors.assign(static_cast<std::size_t>(T), kNaN);
    return res;
  }
  return finish_known_tau(
      std::move(res), seed_for_se,
      [alpha, H]() { return TrawlFunction::sup_gamma(alpha, H); },
      mom_supgamma_jacobian(rho, alpha, delta));
}

// ---------------------------------------------------------------------------
// GMM
// ---------------------------------------------------------------------------

GmmSpec GmmSpec::exp_gaussian(int m) {
  GmmSpec spec;
  spec.lags = m;
  spec.param_names = {"lambda", "sigma2", "mu"};
  spec.lower = Eigen::Vector3d(1e-3, 1e-6, -1e3);
  spec.upper = Eigen::Vector3d(1e3, 1e6, 1e3);
  spec.moment_map = [](const Eigen::VectorXd& th, double delta, int lags, double& mu,
                       Eigen::VectorXd& D) {
    const double lambda = th[0], sigma2 = th[1], mu_seed = th[2];
    mu = mu_seed / lambda;
    D.resize(lags + 1);
    for (int k = 0; k <= lags; ++k) {
      const double gk = sigma2 * std::exp(-lambda * k * delta) / lambda;
      D[k] = gk + mu * mu;
    }
  };
  return spec;
}

GmmSpec GmmSpec::exp_poisson(int m) {
  GmmSpec spec;
  spec.lags = m;
  spec.param_names = {"lambda", "rate"};
  spec.lower = Eigen::Vector2d(1e-3, 1e-6);
  spec.upper = Eigen::Vector2d(1e3, 1e6);
  spec.moment_map = [](const Eigen::VectorXd& th, double delta, int lags, double& mu,
                       Eigen::VectorXd& D) {
    const double lambda = th[0], rate = th[1];
    mu = rate / lambda;
    D.resize(lags + 1);
    for (int k = 0; k <= lags; ++k) {
      D[k] = rate * std::exp(-lambda * k * delta) / lambda + mu * mu;
    }
  };
  return spec;
}

GmmSpec GmmSpec::supgamma_gaussian(int m) {
  GmmSpec spec;
  spec.lags = m;
  spec.param_names = {"alpha", "hurst", "sigma2"};
  spec.lower = Eigen::Vector3d(1e-3, 1.0 + 1e-6, 1e-6);
  spec.upper = Eigen::Vector3d(1e3, 50.0, 1e6);
  spec.moment_map = [](const Eigen::VectorXd& th, double delta, int lags, double& mu,
                       Eigen::VectorXd& D) {
    const double alpha = th[0], H = th[1], sigma2 = th[2];
    mu = 0.0;
    D.resize(lags + 1);
    for (int k = 0; k <= lags; ++k) {
      D[k] = sigma2 * alpha / (H - 1.0) *
             std::pow(1.0 + k * delta / alpha, 1.0 - H);
    }
  };
  return spec;
}

namespace {

// Logit transform keeps Nelder-Mead strictly inside the box; positive
// parameters effectively move on a log-like scale near the lower edge.
Eigen::VectorXd to_unconstrained(const Eigen::VectorXd& theta, const GmmSpec& s) {
  Eigen::VectorXd z(theta.size());
  for (int i = 0; i < theta.size(); ++i) {
    const double f = (theta[i] - s.lower[i]) / (s.upper[i] - s.lower[i]);
    const double fc = std::clamp(f, 1e-12, 1.0 - 1e-12);
    z[i] = std::log(fc / (1.0 - fc));
  }
  return z;
}

Eigen::VectorXd to_box(const Eigen::VectorXd& z, const GmmSpec& s) {
  Eigen::VectorXd theta(z.size());
  for (int i = 0; i < z.size(); ++i) {
    theta[i] = s.lower[i] + (s.upper[i] - s.lower[i]) / (1.0 + std::exp(-z[i]));
  }
  return theta;
}

struct NmResult {
  Eigen::VectorXd z;
  double value = std::numeric_limits<double>::infinity();
  bool converged = false;
  int iterations = 0;
};

NmResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                     const Eigen::VectorXd& z0, double tol, int max_iter) {
  const int d = static_cast<int>(z0.size());
  std::vector<Eigen::VectorXd> pts(static_cast<std::size_t>(d) + 1, z0);
  std::vector<double> vals(static_cast<std::size_t>(d) + 1);
  for (int i = 0; i < d; ++i) pts[static_cast<std::size_t>(i) + 1][i] += 0.25;
  for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = f(pts[i]);

  NmResult out;
  auto order = [&]() {
    std::vector<std::size_t> idx(pts.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return vals[a] < vals[b];
    });
    std::vector<Eigen::VectorXd> p2;
    std::vector<double> v2;
    for (auto i : idx) {
      p2.push_back(pts[i]);
      v2.push_back(vals[i]);
    }
    pts.swap(p2);
    vals.swap(v2);
  };

  for (int it = 0; it < max_iter; ++it) {
    order();
    out.iterations = it;
    const double spread = std::abs(vals.back() - vals.front());
    double geom = 0.0;
    for (int i = 0; i < d; ++i) geom = std::max(geom, (pts.back() - pts.front()).cwiseAbs().maxCoeff());
    if (spread < tol * (1.0 + std::abs(vals.front())) && geom < 1e-9) {
      out.converged = true;
      break;
    }
    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(d);
    for (int i = 0; i < d; ++i) centroid += pts[static_cast<std::size_t>(i)];
    centroid /= static_cast<double>(d);

    const Eigen::VectorXd refl = centroid + (centroid - pts.back());
    const double fr = f(refl);
    if (fr < vals.front()) {
      const Eigen::VectorXd expd = centroid + 2.0 * (centroid - pts.back());
      const double fe = f(expd);
      pts.back() = (fe < fr) ? expd : refl;
      vals.back() = std::min(fe, fr);
      continue;
    }
    if (fr < vals[vals.size() - 2]) {
      pts.back() = refl;
      vals.back() = fr;
      continue;
    }
    const Eigen::VectorXd contr = centroid + 0.5 * (pts.back() - centroid);
    const double fc = f(contr);
    if (fc < vals.back()) {
      pts.back() = contr;
      vals.back() = fc;
      continue;
    }
    for (std::size_t i = 1; i < pts.size(); ++i) {
      pts[i] = pts[0] + 0.5 * (pts[i] - pts[0]);
      vals[i] = f(pts[i]);
    }
  }
  order();
  out.z = pts.front();
  out.value = vals.front();
  return out;
}

}  // namespace

GmmFitResult gmm_fit(std::span<const double> series, const GmmSpec& spec, double delta,
                     std::uint64_t seed, std::optional<int> hac_bandwidth) {
  const int m = spec.lags;
  if (m < 2) throw DomainError("gmm_fit: need lag count m >= 2");
  const std::size_t n = series.size();
  if (n <= static_cast<std::size_t>(m) + 2) {
    throw DomainError("gmm_fit: series too short for the requested lag count");
  }
  if (!spec.moment_map) throw ConfigError("gmm_fit: spec has no moment map");
  const int dim = static_cast<int>(spec.lower.size());
  const int mdim = m + 2;
  const std::size_t N = n - static_cast<std::size_t>(m);

  Eigen::MatrixXd A = spec.weight.size() > 0
                          ? spec.weight
                          : Eigen::MatrixXd::Identity(mdim, mdim);
  if (A.rows() != mdim || A.cols() != mdim) {
    throw ConfigError("gmm_fit: weight matrix must be (m+2) x (m+2)");
  }

  // Sample moment vector: the data part of g_{n,m} is theta-free, so it is
  // computed once and the objective reduces to a quadratic form evaluation.
  Eigen::VectorXd sbar = Eigen::VectorXd::Zero(mdim);
  for (std::size_t t = 0; t < N; ++t) {
    sbar[0] += series[t];
    for (int k = 0; k <= m; ++k) {
      sbar[k + 1] += series[t] * series[t + static_cast<std::size_t>(k)];
    }
  }
  sbar /= static_cast<double>(N);

  auto model_moments = [&](const Eigen::VectorXd& theta) {
    double mu = 0.0;
    Eigen::VectorXd D;
    spec.moment_map(theta, delta, m, mu, D);
    Eigen::VectorXd v(mdim);
    v[0] = mu;
    v.segment(1, m + 1) = D;
    return v;
  };
  auto objective = [&](const Eigen::VectorXd& theta) {
    const Eigen::VectorXd gbar = sbar - model_moments(theta);
    return gbar.dot(A * gbar);
  };
  auto objective_z = [&](const Eigen::VectorXd& z) { return objective(to_box(z, spec)); };

  // Seeded multistart Nelder-Mead in the transformed box.
  RandomStream rng(seed, 0x67'6d'6dULL);
  NmResult best;
  int used = 0;
  std::string trace;
  for (int restart = 0; restart < 5; ++restart) {
    Eigen::VectorXd theta0(dim);
    for (int i = 0; i < dim; ++i) {
      // Bias the draw toward the lower decades of wide positive boxes.
      const double u = rng.uniform();
      theta0[i] = spec.lower[i] +
                  (spec.upper[i] - spec.lower[i]) * std::pow(u, 3.0);
    }
    const NmResult run =
        nelder_mead(objective_z, to_unconstrained(theta0, spec), 1e-14, 2000);
    ++used;
    trace += "restart " + std::to_string(restart) + ": value " +
             std::to_string(run.value) + (run.converged ? " (converged)\n" : " (budget)\n");
    if (run.value < best.value) best = run;
    if (best.converged && best.value < 1e-16) break;
  }
  if (!best.converged && !std::isfinite(best.value)) {
    throw ConvergenceError("gmm_fit: optimizer failed on every restart\n" + trace);
  }

  GmmFitResult res;
  res.theta = to_box(best.z, spec);
  res.param_names = spec.param_names;
  res.objective = best.value;
  res.n_obs = n;
  res.restarts_used = used;
  for (int i = 0; i < dim; ++i) {
    const double width = spec.upper[i] - spec.lower[i];
    if (res.theta[i] - spec.lower[i] < 1e-4 * width ||
        spec.upper[i] - res.theta[i] < 1e-4 * width) {
      res.boundary_warning = true;
    }
  }

  // HAC (Bartlett/Newey-West) estimate of Sigma_a at theta_hat.
  const int bw = hac_bandwidth.value_or(static_cast<int>(
      std::floor(4.0 * std::pow(static_cast<double>(N) / 100.0, 2.0 / 9.0))));
  res.hac_bandwidth = bw;
  const Eigen::VectorXd mhat = model_moments(res.theta);
  Eigen::MatrixXd H(mdim, static_cast<int>(N));
  for (std::size_t t = 0; t < N; ++t) {
    H(0, static_cast<int>(t)) = series[t] - mhat[0];
    for (int k = 0; k <= m; ++k) {
      H(k + 1, static_cast<int>(t)) =
          series[t] * series[t + static_cast<std::size_t>(k)] - mhat[k + 1];
    }
  }
  const Eigen::VectorXd hbar = H.rowwise().mean();
  H.colwise() -= hbar;
  Eigen::MatrixXd Sigma = (H * H.transpose()) / static_cast<double>(N);
  for (int l = 1; l <= bw; ++l) {
    const double wl = 1.0 - static_cast<double>(l) / static_cast<double>(bw + 1);
    const auto lead = H.rightCols(static_cast<int>(N) - l);
    const auto lagd = H.leftCols(static_cast<int>(N) - l);
    const Eigen::MatrixXd G = (lead * lagd.transpose()) / static_cast<double>(N);
    Sigma += wl * (G + G.transpose());
  }

  // G0 = E[dh/dtheta'] = -d(model moments)/dtheta', central differences.
  Eigen::MatrixXd G0(mdim, dim);
  for (int i = 0; i < dim; ++i) {
    const double step = 1e-6 * std::max(1.0, std::abs(res.theta[i]));
    Eigen::VectorXd tp = res.theta, tm = res.theta;
    tp[i] += step;
    tm[i] -= step;
    G0.col(i) = -(model_moments(tp) - model_moments(tm)) / (2.0 * step);
  }
  const Eigen::MatrixXd GtAG = G0.transpose() * A * G0;
  const Eigen::MatrixXd M = GtAG.ldlt().solve(G0.transpose() * A);
  res.covariance = M * Sigma * M.transpose();
  res.std_errors.resize(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    res.std_errors[static_cast<std::size_t>(i)] =
        std::sqrt(std::max(0.0, res.covariance(i, i)) / static_cast<double>(N));
  }
  return res;
}

}  // namespace trawl
