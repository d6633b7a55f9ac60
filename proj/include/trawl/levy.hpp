#ifndef TRAWL_LEVY_HPP
#define TRAWL_LEVY_HPP

#include <array>
#include <complex>
#include <string>

#include "trawl/rng.hpp"

namespace trawl {

/// Parametric tag for the Levy measure of a seed family.
enum class LevyMeasureFamily { None, PoissonAtom, GammaDensity, Logarithmic, CauchyDensity };

/// Characteristic triplet (zeta, a, nu) of a homogeneous Levy basis under the
/// truncation function 1_{[-1,1]}.
struct LevyTriplet {
  double zeta = 0.0;       // drift
  double a = 0.0;          // Gaussian variance, >= 0
  LevyMeasureFamily levy_measure = LevyMeasureFamily::None;
  double nu_param1 = 0.0;  // family-specific
  double nu_param2 = 0.0;
  bool finite_variation = true;   // int |xi| nu(dxi) < inf and a == 0
  bool fourth_moment = true;      // int_{|xi|>1} xi^4 nu(dxi) < inf
};

/// An infinitely divisible Levy seed L'. Each supported family is closed under
/// Lebesgue scaling of the cumulant, i.e. for every s > 0 the law with
/// cumulant s*C(theta; L') stays inside the family, which is what the slice
/// sampler needs.
class LevySeed {
 public:
  enum class Family { Gaussian, Poisson, Gamma, NegativeBinomial, Cauchy };

  static LevySeed gaussian(double mu, double sigma2);
  static LevySeed poisson(double rate);
  static LevySeed gamma(double shape, double rate);
  static LevySeed negative_binomial(double size, double prob);
  static LevySeed cauchy(double scale);

  /// C(theta; L') evaluated from the family closed form.
  std::complex<double> cumulant(double theta) const;

  /// (kappa1..kappa4); throws UnsupportedMomentError when the fourth moment
  /// does not exist (Cauchy).
  std::array<double, 4> cumulants_1_to_4() const;

  double mean() const;       // kappa1
  double variance() const;   // kappa2
  double eta() const;        // E(L'^4)/kappa2^2

  bool has_moment(int order) const;

  /// One draw with cumulant leb * C(theta; L'). leb == 0 returns 0 exactly.
  double sample_slice(double leb, RandomStream& rng) const;

  const LevyTriplet& triplet() const { return triplet_; }
  Family family() const { return family_; }
  double param1() const { return p1_; }
  double param2() const { return p2_; }

  /// int |xi| nu(dxi); only meaningful for finite-variation families.
  double abs_levy_moment() const;

  /// gamma_0 = zeta - int_{|xi|<=1} xi nu(dxi) (finite-variation drift).
  double drift_gamma0() const;

  std::string to_string() const;

  /// Accepts gaussian(mu,sigma2), poisson(rate), gamma(shape,rate),
  /// negbin(size,prob), cauchy(scale).
  static LevySeed parse(const std::string& text);

 private:
  LevySeed(Family f, double p1, double p2);

  Family family_;
  double p1_, p2_;
  LevyTriplet triplet_;
};

}  // namespace trawl

#endif  // TRAWL_LEVY_HPP
