#pragma once

#include <functional>

namespace qsr {

/// Principal branch W0: w >= -1 with w e^w = x, for x >= -1/e.
/// Throws std::domain_error below the branch point.
double lambert_w0(double x);

/// Lower branch W-1: w <= -1 with w e^w = x, for -1/e <= x < 0.
double lambert_wm1(double x);

/// Integral of t^(a-1) e^(-t) over [x0, x1] (a > 0, 0 <= x0 <= x1), by
/// adaptive Gauss-Kronrod quadrature.
double gen_upper_incomplete_gamma(double a, double x0, double x1);

/// Globally adaptive 15-point Gauss-Kronrod integration of f over [lo, hi],
/// refining the worst segment until the error estimate is below
/// rel_tol * |integral|.
double adaptive_quadrature(const std::function<double(double)>& f, double lo,
                           double hi, double rel_tol = 1e-13);

}  // namespace qsr
