#ifndef TRAWL_SLICESIM_HPP
#define TRAWL_SLICESIM_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "trawl/model.hpp"
#include "trawl/rng.hpp"

namespace trawl {

/// Lebesgue measures of the slices partitioning the union of the trawl sets
/// over the grid 0, delta, ..., n*delta.
///
/// Only entries with j <= n+2-i are meaningful (lower-anti-triangular layout,
/// 1-based row i and column j as in the assembly below):
///   - column 1 holds the pre-grid tail slices (e_1..e_n, d_{n+1}),
///   - row k holds c_k replicated in columns 2..n+1-k and b_k at column n+2-k,
/// where b_k = int_{(k-1)delta}^{k delta} g, d_k = int_{(k-1)delta}^{inf} g,
/// c_k = b_k - b_{k+1}, e_k = d_k - d_{k+1}.
///
/// The full dense matrix is only materialised on demand; the vectors stay
/// O(n) so large simulations never hold an (n+1)^2 array of measures.
struct SliceMatrix {
  std::size_t n = 0;
  double delta = 0.0;
  std::vector<double> b;  // size n+1, b[k-1] = b_k
  std::vector<double> c;  // size n,   c[k-1] = c_k
  std::vector<double> d;  // size n+1
  std::vector<double> e;  // size n

  /// Measure of slice (i, j), 1-based indices; 0 for the unused region.
  double measure(std::size_t i, std::size_t j) const;

  /// Dense (n+1) x (n+1) matrix with zeros in the unused region.
  std::vector<std::vector<double>> dense() const;

  double total_mass() const { return d.front(); }
};

SliceMatrix compute_slices(const TrawlFunction& g, std::size_t n, double delta);

/// Weighted slice aggregation: x[1+k] = sum_{j=1}^{k+1} w[k+2-j] *
/// sum_{i=k+2-j}^{n+2-j} L[i][j] for k = 0..n (1-based indices on L and w).
std::vector<double> add_weighted_slices(const std::vector<std::vector<double>>& L,
                                        const std::vector<double>& w);

/// Which lag the periodic kernel is evaluated at per column: the text
/// convention uses p((k+2-j)*delta); the shifted variant p((k+1-j)*delta)
/// exists for phase-sensitivity studies (identical when p == 1).
enum class WeightConvention { PaperDisplay, Shifted };

struct SimPath {
  double delta = 0.0;
  std::vector<double> values;      // Y_{burn_in*delta}, ..., Y_{n*delta}
  std::size_t burn_in = 0;
  std::uint64_t master_seed = 0;
};

/// Burn-in heuristic: ceil(T99/delta) grid points, where the tail mass beyond
/// T99 is 1% of the total.
std::size_t default_burn_in(const TrawlFunction& g, double delta);

/// Slice-based simulation of the periodic trawl process on the grid
/// 0..n*delta; the first burn_in values are discarded. Deterministic given
/// (model, master_seed): replicate r should pass distinct stream ids.
SimPath simulate(const ModelSpec& model, std::size_t n, std::uint64_t master_seed,
                 std::optional<std::size_t> burn_in = std::nullopt,
                 WeightConvention convention = WeightConvention::PaperDisplay,
                 std::uint64_t stream_id = 0);

/// Brute-force 2-D grid approximation of the defining stochastic integral:
/// one slice-scaled variate per cell of [0, g(0)] x [-temporal_extension,
/// n*delta], weighted by p(t-s) 1(x < g(t-s)). Converges in law to the slice
/// simulator output as the grid refines; kept as an independent oracle.
SimPath simulate_grid_oracle(const ModelSpec& model, std::size_t n,
                             std::size_t spatial_cells, double temporal_extension,
                             std::uint64_t master_seed, std::uint64_t stream_id = 0);

}  // namespace trawl

#endif  // TRAWL_SLICESIM_HPP
