#include "trawl/slicesim.hpp"

#include <algorithm>
#include <cmath>

#include "trawl/errors.hpp"

namespace trawl {

double SliceMatrix::measure(std::size_t i, std::size_t j) const {
  if (i < 1 || j < 1 || i > n + 1 || j > n + 2 - i) return 0.0;
  if (j == 1) return (i <= n) ? e[i - 1] : d[n];
  if (j == n + 2 - i) return b[i - 1];
  return c[i - 1];
}

std::vector<std::vector<double>> SliceMatrix::dense() const {
  std::vector<std::vector<double>> m(n + 1, std::vector<double>(n + 1, 0.0));
  for (std::size_t i = 1; i <= n + 1; ++i) {
    for (std::size_t j = 1; j <= n + 2 - i; ++j) {
      m[i - 1][j - 1] = measure(i, j);
    }
  }
  return m;
}

SliceMatrix compute_slices(const TrawlFunction& g, std::size_t n, double delta) {
  if (n < 1) throw DomainError("compute_slices: n must be >= 1");
  if (delta <= 0.0) throw DomainError("compute_slices: delta must be > 0");
  SliceMatrix s;
  s.n = n;
  s.delta = delta;
  s.b.resize(n + 1);
  s.d.resize(n + 1);
  // b_k over consecutive grid cells; d_k as tail masses so that e_k >= 0 and
  // the slice masses telescope to the total mass.
  for (std::size_t k = 1; k <= n + 1; ++k) {
    const double lo = static_cast<double>(k - 1) * delta;
    s.b[k - 1] = g.integral(lo, static_cast<double>(k) * delta);
    s.d[k - 1] = g.tail_mass(lo);
  }
  s.c.resize(n);
  s.e.resize(n);
  for (std::size_t k = 1; k <= n; ++k) {
    s.c[k - 1] = s.b[k - 1] - s.b[k];
    s.e[k - 1] = s.d[k - 1] - s.d[k];
  }
  return s;
}

std::vector<double> add_weighted_slices(const std::vector<std::vector<double>>& L,
                                        const std::vector<double>& w) {
  if (L.empty()) throw DomainError("add_weighted_slices: empty matrix");
  const std::size_t n = L.size() - 1;
  if (w.size() != n + 1) {
    throw DomainError("add_weighted_slices: weight vector must have n+1 entries");
  }
  for (const auto& row : L) {
    if (row.size() != n + 1) {
      throw DomainError("add_weighted_slices: matrix must be square (n+1) x (n+1)");
    }
  }
  std::vector<double> x(n + 1, 0.0);
  // Column suffix sums S_j(r) = sum_{i=r}^{n+2-j} L[i][j] let each x[k]
  // assemble in O(n) total work per column.
  std::vector<double> suffix(n + 2);
  for (std::size_t j = 1; j <= n + 1; ++j) {
    const std::size_t top = n + 2 - j;
    suffix[top + 1] = 0.0;
    for (std::size_t r = top; r >= 1; --r) {
      suffix[r] = suffix[r + 1] + L[r - 1][j - 1];
    }
    for (std::size_t r = 1; r <= top; ++r) {
      const std::size_t k = r + j - 2;
      x[k] += w[r - 1] * suffix[r];
    }
  }
  return x;
}

std::size_t default_burn_in(const TrawlFunction& g, double delta) {
  return static_cast<std::size_t>(std::ceil(g.tail_quantile(0.01) / delta));
}

SimPath simulate(const ModelSpec& model, std::size_t n, std::uint64_t master_seed,
                 std::optional<std::size_t> burn_in, WeightConvention convention,
                 std::uint64_t stream_id) {
  const std::size_t burn = burn_in.value_or(default_burn_in(model.trawl, model.delta));
  if (burn >= n) throw DomainError("simulate: burn_in must be < n");
  const SliceMatrix s = compute_slices(model.trawl, n, model.delta);
  RandomStream rng(master_seed, stream_id);

  std::vector<double> w(n + 1);
  const double shift = (convention == WeightConvention::Shifted) ? 1.0 : 0.0;
  for (std::size_t r = 1; r <= n + 1; ++r) {
    w[r - 1] = model.periodic((static_cast<double>(r) - shift) * model.delta);
  }

  // Stream one column at a time: draw the column's independent slice variates
  // (i.i.d. per entry, the replicated c_k measures included), then fold its
  // suffix sums into every grid point it enters. Memory stays O(n).
  std::vector<double> y(n + 1, 0.0);
  std::vector<double> column(n + 1);
  for (std::size_t j = 1; j <= n + 1; ++j) {
    const std::size_t top = n + 2 - j;
    for (std::size_t i = 1; i <= top; ++i) {
      column[i - 1] = model.seed.sample_slice(s.measure(i, j), rng);
    }
    double suf = 0.0;
    for (std::size_t r = top; r >= 1; --r) {
      suf += column[r - 1];
      y[r + j - 2] += w[r - 1] * suf;
    }
  }

  SimPath path;
  path.delta = model.delta;
  path.burn_in = burn;
  path.master_seed = master_seed;
  path.values.assign(y.begin() + static_cast<std::ptrdiff_t>(burn), y.end());
  return path;
}

namespace {

double g_inverse(const TrawlFunction& g, double x) {
  switch (g.kind()) {
    case TrawlFunction::Kind::Exponential:
      return -std::log(x) / g.lambda();
    case TrawlFunction::Kind::SupGamma:
      return g.alpha() * (std::pow(x, -1.0 / g.hurst()) - 1.0);
    case TrawlFunction::Kind::NumericMonotone: {
      if (x >= g(0.0)) return 0.0;
      // Rightmost u with g(u) > x, by bisection on the compact support.
      double lo = 0.0, hi = g.tail_quantile(1e-12);
      while (g(hi) > x) hi *= 2.0;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > x ? lo : hi) = mid;
      }
      return lo;
    }
  }
  throw ConfigError("unsupported trawl kind");
}

}  // namespace

SimPath simulate_grid_oracle(const ModelSpec& model, std::size_t n,
                             std::size_t spatial_cells, double temporal_extension,
                             std::uint64_t master_seed, std::uint64_t stream_id) {
  if (spatial_cells < 100) {
    throw DomainError("simulate_grid_oracle: need at least 100 spatial cells");
  }
  if (temporal_extension < 0.0) {
    throw DomainError("simulate_grid_oracle: temporal extension must be >= 0");
  }
  const double delta = model.delta;
  const double g0 = model.trawl(0.0);
  SimPath path;
  path.delta = delta;
  path.burn_in = 0;
  path.master_seed = master_seed;
  path.values.assign(n + 1, 0.0);
  if (g0 <= 0.0) return path;  // zero trawl mass: constant zero path

  const double t_end = static_cast<double>(n) * delta;
  const double span = t_end + temporal_extension;
  const double hx = g0 / static_cast<double>(spatial_cells);
  const std::size_t nt = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(span / hx)));
  const double ht = span / static_cast<double>(nt);
  const double cell_area = hx * ht;

  RandomStream rng(master_seed, stream_id);
  for (std::size_t it = 0; it < nt; ++it) {
    const double s_c = -temporal_extension + (static_cast<double>(it) + 0.5) * ht;
    for (std::size_t ix = 0; ix < spatial_cells; ++ix) {
      const double x_c = (static_cast<double>(ix) + 0.5) * hx;
      const double v = model.seed.sample_slice(cell_area, rng);
      // Grid times covered by this cell: s_c <= t_k and x_c < g(t_k - s_c).
      const double reach = g_inverse(model.trawl, x_c);
      const long long k_min = std::max<long long>(
          0, static_cast<long long>(std::ceil(s_c / delta - 1e-12)));
      const long long k_max = std::min<long long>(
          static_cast<long long>(n),
          static_cast<long long>(std::floor((s_c + reach) / delta)));
      for (long long k = k_min; k <= k_max; ++k) {
        const double lag = static_cast<double>(k) * delta - s_c;
        if (lag < reach) {
          path.values[static_cast<std::size_t>(k)] += v * model.periodic(lag);
        }
      }
    }
  }
  return path;
}

}  // namespace trawl
