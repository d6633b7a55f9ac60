#include "trawl/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "trawl/errors.hpp"
#include "trawl/moments.hpp"
#include "trawl/quadrature.hpp"

namespace trawl {

namespace {

void require_short_memory(const ModelSpec& model, const char* op) {
  if (model.trawl.memory_class() == MemoryClass::Long) {
    throw AssumptionViolationError(
        std::string(op) +
        ": long-memory trawl (supGamma with H <= 2) violates the summability assumptions");
  }
}

void require_fourth_moment(const ModelSpec& model, const char* op) {
  if (!model.seed.has_moment(4)) {
    throw UnsupportedMomentError(std::string(op) + ": seed lacks a finite fourth moment");
  }
}

bool tabulated_c_model(const ModelSpec& model) {
  return model.periodic.kind() == PeriodicFunction::Kind::TabulatedC;
}

// gamma(l Delta) for l = 0..L, computed once. Models specified through a
// tabulated correlation factor carry no absolute scale, so they are handled
// on the normalized grid gamma == rho; the w matrix is scale-free and the
// v/g0^2 combinations divide the normalization out.
std::vector<double> grid_acv(const ModelSpec& model, long L) {
  const bool tab = tabulated_c_model(model);
  std::vector<double> g(static_cast<std::size_t>(L) + 1);
  for (long l = 0; l <= L; ++l) {
    const double t = static_cast<double>(l) * model.delta;
    g[static_cast<std::size_t>(l)] =
        tab ? theoretical_acf(model, t) : theoretical_acov(model, t);
  }
  return g;
}

// Truncation lag: |gamma(L Delta)| below tol * gamma(0) with margin, capped.
long choose_truncation(const ModelSpec& model, double tol, long cap) {
  const double k2 = model.seed.variance();
  const double pm = model.periodic.sup_abs();
  const double g0 = k2 * pm * pm * model.trawl.total_mass();
  long L = 8;
  while (L < cap) {
    const double bound =
        k2 * pm * pm * model.trawl.tail_mass(static_cast<double>(L) * model.delta);
    if (bound < tol * g0) return L;
    L = L + std::max<long>(8, L / 2);
  }
  return cap;
}

// B_M = int_{M Delta}^{(M+1) Delta} g for the indicator-kernel G-term.
struct GTermOne {
  // sum over M >= max(p,q) of (2M - p - q + 1) B_M, with an integral tail
  // approximation beyond L terms. Returns {value, tail_error_bound}.
  static std::pair<double, double> sum(const TrawlFunction& g, double delta, int p, int q,
                                       long L) {
    const long m0 = std::max(p, q);
    double acc = 0.0;
    for (long M = m0; M <= L; ++M) {
      const double B = g.integral(static_cast<double>(M) * delta,
                                  static_cast<double>(M + 1) * delta);
      acc += static_cast<double>(2 * M - p - q + 1) * B;
      if (B == 0.0 && M > m0 + 4) return {acc, 0.0};
    }
    // Tail: sum_{M>L} (2M-p-q+1) B_M = int (2 floor(u/D) - p - q + 1) g(u) du
    // over ((L+1)D, inf); floor(u/D) ~ u/D - 1/2 with error <= 1/2.
    const double T = static_cast<double>(L + 1) * delta;
    const double tail_mass = g.tail_mass(T);
    const double tail_ug = first_moment_tail(g, T);
    const double tail = 2.0 / delta * tail_ug - static_cast<double>(p + q) * tail_mass;
    return {acc + tail, 2.0 * tail_mass};
  }

  // int_T^inf u g(u) du, closed for the parametric variants.
  static double first_moment_tail(const TrawlFunction& g, double T) {
    switch (g.kind()) {
      case TrawlFunction::Kind::Exponential: {
        const double lam = g.lambda();
        return std::exp(-lam * T) * (T / lam + 1.0 / (lam * lam));
      }
      case TrawlFunction::Kind::SupGamma: {
        const double a = g.alpha(), H = g.hurst();
        const double Y = 1.0 + T / a;
        return a * a * (std::pow(Y, 2.0 - H) / (H - 2.0) - std::pow(Y, 1.0 - H) / (H - 1.0));
      }
      case TrawlFunction::Kind::NumericMonotone:
        return integrate([&g](double u) { return u * g(u); }, T,
                         std::max(T, g.tail_quantile(1e-15)), 1e-12);
    }
    throw ConfigError("unsupported trawl kind");
  }
};

// int_{R x [0,Delta]} G_p G_q dx du for a general periodic kernel, by the
// indicator reduction: the x-integral of the four-indicator product is
// g evaluated at the largest of the four time arguments.
std::pair<double, double> g_term_general(const ModelSpec& model, int p, int q, long J) {
  const auto& g = model.trawl;
  const auto& per = model.periodic;
  const double D = model.delta;
  double acc = 0.0;
  for (long j = 0; j <= J; ++j) {
    for (long k = 0; k <= J; ++k) {
      const long M = std::max(j + p, k + q);
      auto f = [&](double u) {
        return per(u + static_cast<double>(j) * D) *
               per(u + static_cast<double>(j + p) * D) *
               per(u + static_cast<double>(k) * D) *
               per(u + static_cast<double>(k + q) * D) *
               g(u + static_cast<double>(M) * D);
      };
      acc += gk15(f, 0.0, D);
    }
  }
  const double pm = per.sup_abs();
  const double pm4 = pm * pm * pm * pm;
  // Crude tail bound: everything outside the square block.
  const double T = static_cast<double>(J) * D;
  const double bound =
      pm4 * (2.0 * static_cast<double>(J + 1) * g.tail_mass(T) +
             2.0 / D * GTermOne::first_moment_tail(g, T));
  return {acc, bound};
}

std::pair<double, double> g_term(const ModelSpec& model, int p, int q) {
  if (model.periodic.is_one()) {
    return GTermOne::sum(model.trawl, model.delta, p, q,
                         choose_truncation(model, 1e-12, 20000));
  }
  if (model.periodic.kind() == PeriodicFunction::Kind::TabulatedC) {
    throw ConfigError(
        "fourth-cumulant term needs the kernel p itself, not a tabulated correlation factor");
  }
  return g_term_general(model, p, q, std::min<long>(choose_truncation(model, 1e-10, 512), 512));
}

// int_T^inf tail_mass(u) du, closed per kind.
double second_tail(const TrawlFunction& g, double T) {
  switch (g.kind()) {
    case TrawlFunction::Kind::Exponential: {
      const double lam = g.lambda();
      return std::exp(-lam * T) / (lam * lam);
    }
    case TrawlFunction::Kind::SupGamma: {
      const double a = g.alpha(), H = g.hurst();
      return a * a / ((H - 1.0) * (H - 2.0)) * std::pow(1.0 + T / a, 2.0 - H);
    }
    case TrawlFunction::Kind::NumericMonotone: {
      const double end = g.tail_quantile(1e-15);
      if (T >= end) return 0.0;
      return integrate([&g](double u) { return g.tail_mass(u); }, T, end, 1e-12);
    }
  }
  throw ConfigError("unsupported trawl kind");
}

struct VSeries {
  double value;
  long lag;
  double tol;
};

// Truncated symmetric series sum_j gamma(j Delta) with a periodic-mean tail
// correction for slowly decaying kernels.
VSeries v_delta_series(const ModelSpec& model) {
  const long L = choose_truncation(model, 1e-12, 200000);
  const auto g = grid_acv(model, L);
  double acc = g[0];
  for (long l = 1; l <= L; ++l) acc += 2.0 * g[static_cast<std::size_t>(l)];
  // Tail correction: the trailing autocovariances track cbar * tail_mass(l D),
  // so the remainder integrates analytically; cbar averages the last block.
  const double D = model.delta;
  const double T = (static_cast<double>(L) + 0.5) * D;
  const long block = std::min<long>(L / 2, 256);
  double cbar = 0.0;
  for (long l = L - block + 1; l <= L; ++l) {
    const double psi = model.trawl.tail_mass(static_cast<double>(l) * D);
    cbar += (psi > 0.0) ? g[static_cast<std::size_t>(l)] / psi : 0.0;
  }
  cbar /= static_cast<double>(block);
  const double corr = 2.0 * cbar * second_tail(model.trawl, T) / D;
  const double err = std::abs(corr) + 2.0 * std::abs(g[static_cast<std::size_t>(L)]);
  return {acc + corr, L, err};
}

}  // namespace

double hurwitz_zeta(double s, double a) {
  if (s <= 1.0) throw DomainError("hurwitz_zeta: requires s > 1");
  if (a <= 0.0) throw DomainError("hurwitz_zeta: requires a > 0");
  // Direct terms until the Euler-Maclaurin remainder is tiny.
  const int N = std::max(16, static_cast<int>(std::ceil(18.0 - a)));
  double sum = 0.0;
  for (int k = 0; k < N; ++k) sum += std::pow(a + static_cast<double>(k), -s);
  const double T = a + static_cast<double>(N);
  sum += std::pow(T, 1.0 - s) / (s - 1.0);
  sum += 0.5 * std::pow(T, -s);
  static const double kB2j[] = {1.0 / 6.0,   -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0,
                                5.0 / 66.0,  -691.0 / 2730.0, 7.0 / 6.0};
  double fact = 1.0;       // (2j)!
  double poch = 1.0;       // s (s+1) ... (s+2j-2)
  double tpow = std::pow(T, 1.0 - s);
  for (int j = 1; j <= 7; ++j) {
    fact *= static_cast<double>(2 * j - 1) * static_cast<double>(2 * j);
    poch *= (j == 1) ? s : (s + static_cast<double>(2 * j - 3)) * (s + static_cast<double>(2 * j - 2));
    tpow /= T * T;  // T^{-s-2j+1}
    sum += kB2j[j - 1] / fact * poch * tpow;
  }
  return sum;
}

double sample_mean_variance(const ModelSpec& model) {
  require_short_memory(model, "sample_mean_variance");
  if (model.periodic.kind() == PeriodicFunction::Kind::TabulatedC) {
    throw ConfigError(
        "sample_mean_variance: a tabulated correlation factor has no absolute scale");
  }
  if (!model.seed.has_moment(2)) {
    throw UnsupportedMomentError("sample_mean_variance: seed needs a finite variance");
  }
  const double k2 = model.seed.variance();
  const double D = model.delta;
  if (model.periodic.is_one()) {
    if (model.trawl.kind() == TrawlFunction::Kind::Exponential) {
      const double lam = model.trawl.lambda();
      const double eld = std::exp(lam * D);
      return k2 * (1.0 + eld) / (lam * (eld - 1.0));
    }
    if (model.trawl.kind() == TrawlFunction::Kind::SupGamma) {
      const double a = model.trawl.alpha(), H = model.trawl.hurst();
      return k2 * a / (H - 1.0) *
             (2.0 * std::pow(a / D, H - 1.0) * hurwitz_zeta(H - 1.0, a / D) - 1.0);
    }
  }
  return v_delta_series(model).value;
}

Eigen::MatrixXd acov_limit_matrix(const ModelSpec& model, int h) {
  if (h < 0) throw DomainError("acov_limit_matrix: h must be >= 0");
  require_short_memory(model, "acov_limit_matrix");
  require_fourth_moment(model, "acov_limit_matrix");

  const double k2 = model.seed.variance();
  const double eta_m3 = model.seed.eta() - 3.0;
  const long L = choose_truncation(model, 1e-12, 100000);
  const auto g = grid_acv(model, L + 2 * h + 2);
  auto gam = [&](long l) {
    l = std::labs(l);
    return g[static_cast<std::size_t>(l)];
  };

  Eigen::MatrixXd v(h + 1, h + 1);
  for (int p = 0; p <= h; ++p) {
    for (int q = 0; q <= p; ++q) {
      double series = 0.0;
      for (long l = -L; l <= L; ++l) {
        series += gam(l) * gam(l + p - q) + gam(l - q) * gam(l + p);
      }
      double gterm = 0.0;
      if (eta_m3 != 0.0) {
        gterm = eta_m3 * k2 * k2 * g_term(model, p, q).first;
      }
      v(p, q) = v(q, p) = gterm + series;
    }
  }
  return v;
}

Eigen::MatrixXd acf_limit_matrix(const ModelSpec& model, int h) {
  if (h < 1) throw DomainError("acf_limit_matrix: h must be >= 1");
  const Eigen::MatrixXd v = acov_limit_matrix(model, h);
  const double g0 =
      tabulated_c_model(model) ? 1.0 : theoretical_acov(model, 0.0);
  std::vector<double> rho(static_cast<std::size_t>(h) + 1);
  for (int p = 0; p <= h; ++p) {
    rho[static_cast<std::size_t>(p)] =
        theoretical_acf(model, static_cast<double>(p) * model.delta);
  }
  Eigen::MatrixXd w(h, h);
  for (int p = 1; p <= h; ++p) {
    for (int q = 1; q <= h; ++q) {
      w(p - 1, q - 1) = (v(p, q) - rho[p] * v(0, q) - rho[q] * v(p, 0) +
                         rho[p] * rho[q] * v(0, 0)) /
                        (g0 * g0);
    }
  }
  return w;
}

Eigen::MatrixXd acf_limit_matrix_expanded(const ModelSpec& model, int h) {
  if (h < 1) throw DomainError("acf_limit_matrix_expanded: h must be >= 1");
  require_short_memory(model, "acf_limit_matrix_expanded");
  require_fourth_moment(model, "acf_limit_matrix_expanded");

  const double k2 = model.seed.variance();
  const double eta_m3 = model.seed.eta() - 3.0;
  const double g0 =
      tabulated_c_model(model) ? 1.0 : theoretical_acov(model, 0.0);
  const long L = choose_truncation(model, 1e-12, 100000);
  const auto g = grid_acv(model, L + 2 * h + 2);
  auto rho = [&](long l) {
    l = std::labs(l);
    return g[static_cast<std::size_t>(l)] / g[0];
  };

  Eigen::MatrixXd w(h, h);
  for (int p = 1; p <= h; ++p) {
    for (int q = 1; q <= p; ++q) {
      double series = 0.0;
      const double rp = rho(p), rq = rho(q);
      for (long l = -L; l <= L; ++l) {
        series += rho(l + q) * rho(l + p) + rho(l - q) * rho(l + p) -
                  2.0 * rho(l + q) * rho(l) * rp - 2.0 * rho(l) * rho(l + p) * rq +
                  2.0 * rp * rq * rho(l) * rho(l);
      }
      double gterm = 0.0;
      if (eta_m3 != 0.0) {
        const double spq = g_term(model, p, q).first;
        const double s0q = g_term(model, 0, q).first;
        const double sp0 = g_term(model, p, 0).first;
        const double s00 = g_term(model, 0, 0).first;
        gterm = eta_m3 * k2 * k2 / (g0 * g0) * (spq - rp * s0q - rq * sp0 + rp * rq * s00);
      }
      w(p - 1, q - 1) = w(q - 1, p - 1) = gterm + series;
    }
  }
  return w;
}

AsymptoticCovariances asymptotic_covariances(const ModelSpec& model, int h) {
  AsymptoticCovariances out;
  out.delta = model.delta;
  out.V_delta = sample_mean_variance(model);
  out.v = acov_limit_matrix(model, h);
  out.w = acf_limit_matrix(model, h);
  out.truncation_lag = choose_truncation(model, 1e-12, 100000);
  const double tail =
      model.trawl.tail_mass(static_cast<double>(out.truncation_lag) * model.delta);
  out.achieved_tol = tail / model.trawl.total_mass();
  return out;
}

CltDiagnostics check_clt_assumptions(const ModelSpec& model, double delta) {
  (void)delta;  // the criteria below do not depend on the grid width
  CltDiagnostics diag;
  const bool supgamma = model.trawl.kind() == TrawlFunction::Kind::SupGamma;
  const double H = supgamma ? model.trawl.hurst() : 0.0;
  diag.sum_abs_gamma_finite = !supgamma || H > 2.0;
  diag.sum_gamma_sq_finite = !supgamma || H > 1.5;
  diag.seed_fourth_moment = model.seed.has_moment(4);
  diag.mean_clt_applies = diag.sum_abs_gamma_finite && model.seed.has_moment(2);
  diag.acf_clt_applies =
      diag.sum_abs_gamma_finite && diag.sum_gamma_sq_finite && diag.seed_fourth_moment;
  diag.summary = std::string("sum|gamma| ") + (diag.sum_abs_gamma_finite ? "ok" : "diverges") +
                 "; sum gamma^2 " + (diag.sum_gamma_sq_finite ? "ok" : "diverges") +
                 "; mean CLT " + (diag.mean_clt_applies ? "applies" : "fails") +
                 "; acf CLT " + (diag.acf_clt_applies ? "applies" : "fails");
  return diag;
}

double weak_dependence_theta(const ModelSpec& model, double r) {
  if (r < 0.0) throw DomainError("weak_dependence_theta: r must be >= 0");
  const auto& g = model.trawl;
  const auto& p = model.periodic;
  if (p.kind() == PeriodicFunction::Kind::TabulatedC) {
    throw ConfigError("weak_dependence_theta needs the kernel p itself");
  }
  const auto& tr = model.seed.triplet();
  if (tr.finite_variation && tr.a == 0.0 &&
      model.seed.family() != LevySeed::Family::Gaussian) {
    const double jump = model.seed.abs_levy_moment();
    const double gamma0 = std::abs(model.seed.drift_gamma0());
    const double integral =
        p.is_one() ? g.tail_mass(r)
                   : integrate_to_inf([&](double s) { return std::abs(p(s)) * g(s); }, r,
                                      1e-10);
    return (jump + gamma0) * integral;
  }
  if (!model.seed.has_moment(2)) {
    throw UnsupportedMomentError("weak_dependence_theta: seed needs a finite variance");
  }
  const double k1 = model.seed.mean();
  const double k2 = model.seed.variance();
  const double i2 = p.is_one()
                        ? g.tail_mass(r)
                        : integrate_to_inf([&](double s) { return p(s) * p(s) * g(s); }, r,
                                           1e-10);
  const double i1 =
      (k1 == 0.0) ? 0.0
                  : (p.is_one() ? g.tail_mass(r)
                                : integrate_to_inf([&](double s) { return p(s) * g(s); }, r,
                                                   1e-10));
  return std::sqrt(k2 * i2 + k1 * k1 * i1 * i1);
}

}  // namespace trawl
