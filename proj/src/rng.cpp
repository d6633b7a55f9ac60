#include "trawl/rng.hpp"

#include <cmath>

#include "trawl/errors.hpp"

namespace trawl {
namespace {

inline std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

RandomStream::RandomStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_(master_seed), id_(stream_id) {
  seed_state();
}

void RandomStream::seed_state() {
  // Mix (master, id) so that nearby ids land far apart in state space.
  std::uint64_t x = master_ ^ rotl(id_ + 0x632BE59BD9B4E019ULL, 17);
  x = splitmix64(x) ^ id_;
  state_[0] = splitmix64(x);
  state_[1] = splitmix64(x);
  state_[2] = splitmix64(x);
  state_[3] = splitmix64(x);
  if (state_[0] == 0 && state_[1] == 0 && state_[2] == 0 && state_[3] == 0) {
    state_[0] = 1;
  }
}

RandomStream RandomStream::substream(std::uint64_t child_id) const {
  std::uint64_t h = id_;
  h = splitmix64(h) ^ (child_id + 0x9E3779B97F4A7C15ULL);
  return RandomStream(master_, splitmix64(h));
}

std::uint64_t RandomStream::next_u64() {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RandomStream::uniform() {
  // 53-bit mantissa, shifted off zero so logs are safe.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double m = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * m;
  has_spare_ = true;
  return u * m;
}

double RandomStream::normal(double mean, double sd) { return mean + sd * normal(); }

double RandomStream::gamma(double shape, double rate) {
  if (shape <= 0.0 || rate <= 0.0) {
    throw DomainError("gamma sampler requires shape > 0 and rate > 0");
  }
  if (shape < 1.0) {
    // Boost to shape+1 and scale back by U^{1/shape}.
    const double u = uniform();
    return gamma(shape + 1.0, rate) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v / rate;
  }
}

long long RandomStream::poisson(double mean) {
  if (mean < 0.0 || !std::isfinite(mean)) {
    throw DomainError("poisson sampler requires finite mean >= 0");
  }
  long long total = 0;
  // Split large means into exact Poisson convolutions so exp(-mean) never
  // underflows in the product method.
  while (mean > 30.0) {
    total += poisson(30.0);
    mean -= 30.0;
  }
  if (mean == 0.0) return total;
  const double limit = std::exp(-mean);
  double prod = uniform();
  long long k = 0;
  while (prod > limit) {
    ++k;
    prod *= uniform();
  }
  return total + k;
}

long long RandomStream::negative_binomial(double size, double prob) {
  if (size <= 0.0 || prob <= 0.0 || prob >= 1.0) {
    throw DomainError("negative_binomial sampler requires size > 0 and prob in (0,1)");
  }
  const double lambda = gamma(size, prob / (1.0 - prob));
  return poisson(lambda);
}

double RandomStream::cauchy(double scale) {
  if (scale <= 0.0) throw DomainError("cauchy sampler requires scale > 0");
  return scale * std::tan(3.14159265358979323846 * (uniform() - 0.5));
}

}  // namespace trawl
