#ifndef TRAWL_RNG_HPP
#define TRAWL_RNG_HPP

#include <array>
#include <cstdint>

namespace trawl {

/// Counter-based splittable random stream.
///
/// A stream is identified by (master_seed, stream_id); substream(r) derives a
/// child stream whose draws are independent of the parent's and of any sibling,
/// so parallel replicates are bit-reproducible regardless of scheduling.
/// The engine is xoshiro256**, state-seeded through splitmix64.
///
/// All samplers draw exactly from the stated law (rejection/product methods,
/// no normal approximations), which matters when slice measures are scaled
/// arbitrarily.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t master_seed, std::uint64_t stream_id = 0);

  /// Child stream derived from (master_seed, stream_id, child_id).
  RandomStream substream(std::uint64_t child_id) const;

  std::uint64_t master_seed() const { return master_; }
  std::uint64_t stream_id() const { return id_; }

  std::uint64_t next_u64();

  /// Uniform on the open interval (0, 1).
  double uniform();

  /// Standard normal (Marsaglia polar, cached spare).
  double normal();
  double normal(double mean, double sd);

  /// Gamma(shape, rate), shape > 0, rate > 0. Marsaglia-Tsang.
  double gamma(double shape, double rate);

  /// Poisson(mean), mean >= 0. Exact: chunked product method.
  long long poisson(double mean);

  /// Negative binomial with size > 0 (possibly non-integer) and success
  /// probability prob in (0,1); mean size*(1-prob)/prob. Gamma-Poisson mixture.
  long long negative_binomial(double size, double prob);

  /// Centered Cauchy with the given scale.
  double cauchy(double scale);

 private:
  std::array<std::uint64_t, 4> state_{};
  std::uint64_t master_ = 0;
  std::uint64_t id_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;

  void seed_state();
};

}  // namespace trawl

#endif  // TRAWL_RNG_HPP
