#ifndef TRAWL_MODEL_HPP
#define TRAWL_MODEL_HPP

#include <cstddef>
#include <string>

#include "trawl/kernels.hpp"
#include "trawl/levy.hpp"

namespace trawl {

/// One simulation/estimation target: seed, trawl function, periodic kernel,
/// sampling step and grid count.
struct ModelSpec {
  LevySeed seed;
  TrawlFunction trawl;
  PeriodicFunction periodic;
  double delta = 1.0;
  std::size_t n = 0;

  std::string to_string() const {
    return seed.to_string() + " | " + trawl.to_string() + " | " + periodic.to_string() +
           " | delta=" + std::to_string(delta);
  }
};

}  // namespace trawl

#endif  // TRAWL_MODEL_HPP
