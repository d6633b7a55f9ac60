#ifndef TRAWL_QUADRATURE_HPP
#define TRAWL_QUADRATURE_HPP

#include <functional>

namespace trawl {

/// Adaptive Gauss-Kronrod (7,15) integration of f over [a, b].
/// Splits the worst segment until the accumulated error estimate drops below
/// abs_tol. Endpoints are never evaluated (the Kronrod nodes are interior).
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10);

/// Integral of f over [a, inf), mapped to [0,1) via u = a + v/(1-v).
/// f must be absolutely integrable on the tail.
double integrate_to_inf(const std::function<double(double)>& f, double a,
                        double abs_tol = 1e-10);

/// Non-adaptive single GK15 pass over [a, b]; cheap building block for smooth
/// integrands on short intervals.
double gk15(const std::function<double(double)>& f, double a, double b);

}  // namespace trawl

#endif  // TRAWL_QUADRATURE_HPP
