#include "trawl/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "trawl/errors.hpp"

namespace trawl {
namespace {

// 15-point Kronrod abscissae on [-1,1] (positive half) and weights; the
// embedded 7-point Gauss rule sits on the odd-indexed abscissae.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct GkResult {
  double kronrod;
  double error;
};

GkResult gk15_core(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double result_g = fc * kWg[3];
  double result_k = fc * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double x = half * kXgk[j];
    const double f1 = f(center - x);
    const double f2 = f(center + x);
    result_k += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) result_g += kWg[j / 2] * (f1 + f2);
  }
  result_k *= half;
  result_g *= half;
  const double diff = std::abs(result_k - result_g);
  // QUADPACK-style sharpened estimate; conservative floor at machine noise.
  double err = diff;
  if (diff > 0.0) err = std::min(diff, 200.0 * diff * std::sqrt(200.0 * diff));
  return {result_k, err};
}

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

}  // namespace

double gk15(const std::function<double(double)>& f, double a, double b) {
  return gk15_core(f, a, b).kronrod;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol) {
  if (!(a <= b)) throw DomainError("integrate: requires a <= b");
  if (a == b) return 0.0;

  std::priority_queue<Segment> queue;
  auto first = gk15_core(f, a, b);
  queue.push({a, b, first.kronrod, first.error});
  double total = first.kronrod;
  double total_err = first.error;

  const int max_segments = 4000;
  int segments = 1;
  while (total_err > abs_tol && segments < max_segments) {
    Segment worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // Interval exhausted at machine resolution; accept what we have.
      queue.push(worst);
      break;
    }
    auto left = gk15_core(f, worst.a, mid);
    auto right = gk15_core(f, mid, worst.b);
    total += left.kronrod + right.kronrod - worst.value;
    total_err += left.error + right.error - worst.error;
    queue.push({worst.a, mid, left.kronrod, left.error});
    queue.push({mid, worst.b, right.kronrod, right.error});
    ++segments;
  }
  return total;
}

double integrate_to_inf(const std::function<double(double)>& f, double a,
                        double abs_tol) {
  auto mapped = [&f, a](double v) {
    const double one_minus = 1.0 - v;
    const double u = a + v / one_minus;
    return f(u) / (one_minus * one_minus);
  };
  return integrate(mapped, 0.0, 1.0, abs_tol);
}

}  // namespace trawl
