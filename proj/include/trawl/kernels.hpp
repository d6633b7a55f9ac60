#ifndef TRAWL_KERNELS_HPP
#define TRAWL_KERNELS_HPP

#include <string>
#include <vector>

namespace trawl {

enum class MemoryClass { Short, Long };

/// Monotone decreasing trawl function g on [0, inf) with finite total mass.
class TrawlFunction {
 public:
  enum class Kind { Exponential, SupGamma, NumericMonotone };

  static TrawlFunction exponential(double lambda);
  /// g(x) = (1 + x/alpha)^{-H}; requires alpha > 0 and H > 1 so the total
  /// mass is finite. H in (1,2] gives long memory, H > 2 short memory.
  static TrawlFunction sup_gamma(double alpha, double hurst);
  /// Piecewise-linear tabulated g; xs strictly increasing starting at 0,
  /// values nonincreasing and >= 0; g == 0 beyond the last knot.
  static TrawlFunction numeric_monotone(std::vector<double> xs, std::vector<double> values);

  double operator()(double u) const;

  /// int_lo^hi g(u) du; hi may be +inf. Closed form for the parametric
  /// variants, adaptive quadrature (abs tol 1e-10) for tabulated g.
  double integral(double lo, double hi) const;

  double total_mass() const { return integral(0.0, kInf); }
  double tail_mass(double t) const { return integral(t, kInf); }

  /// Smallest T with tail_mass(T) <= frac * total_mass().
  double tail_quantile(double frac) const;

  MemoryClass memory_class() const;

  Kind kind() const { return kind_; }
  double lambda() const { return p1_; }  // Exponential
  double alpha() const { return p1_; }   // SupGamma
  double hurst() const { return p2_; }   // SupGamma

  std::string to_string() const;
  /// Accepts exp(lambda), supgamma(alpha,H).
  static TrawlFunction parse(const std::string& text);

  static constexpr double kInf = 1e308;

 private:
  TrawlFunction(Kind k, double p1, double p2) : kind_(k), p1_(p1), p2_(p2) {}

  Kind kind_;
  double p1_ = 0.0, p2_ = 0.0;
  std::vector<double> xs_, gs_;
};

/// tau-periodic kernel p (or, for the TabulatedC variant, the correlation
/// factor c itself, known at lag-grid multiples).
class PeriodicFunction {
 public:
  enum class Kind { One, Sine, FourierFinite, TabulatedC };

  static PeriodicFunction one();
  static PeriodicFunction sine(double tau);
  /// p(x) = sum_k a_k cos(2 pi k x / tau) + b_k sin(2 pi k x / tau).
  static PeriodicFunction fourier(double tau, std::vector<double> a, std::vector<double> b);
  /// Values c(0), c(delta), ..., c((m-1) delta); period tau = m * delta.
  /// Exact at lag multiples, linear interpolation in between (display only).
  static PeriodicFunction tabulated_c(double delta, std::vector<double> values);

  /// p(x); the period reduction x mod tau is carried out in long double.
  double operator()(double x) const;

  double period() const { return tau_; }  // 0 means "any period" (p == 1)
  bool is_one() const { return kind_ == Kind::One; }
  Kind kind() const { return kind_; }
  double sup_abs() const;  // sup |p|

  std::string to_string() const;
  /// Accepts one, sine(tau), fourier(tau;a1,b1,...).
  static PeriodicFunction parse(const std::string& text);

 private:
  PeriodicFunction() = default;

  Kind kind_ = Kind::One;
  double tau_ = 0.0;
  double delta_ = 0.0;               // TabulatedC grid
  std::vector<double> a_, b_, vals_;
};

/// The tau-periodic correlation factor c(t) with c(0) = 1 and
/// Cor(Y_0, Y_t) = c(t) * tail_mass(t)/total_mass. Closed form for
/// Exponential + Sine, ratio of quadratures otherwise.
double correlation_factor_c(const TrawlFunction& g, const PeriodicFunction& p, double t);

}  // namespace trawl

#endif  // TRAWL_KERNELS_HPP
