#pragma once

#include <functional>
#include <vector>

#include "fzeta/common.hpp"

namespace fzeta {

struct QuadResult {
    cplx value;
    double err;
    long long evals;
};

/// Adaptive Gauss-Kronrod (G7,K15) on [a, b] for complex-valued integrands.
/// Stops when the local error estimate satisfies abs_tol or rel_tol.
QuadResult integrate_gk(const std::function<cplx(double)>& f, double a, double b,
                        double abs_tol, double rel_tol = 1e-12, int max_depth = 48);

/// Real-valued convenience wrapper.
double integrate_gk_real(const std::function<double(double)>& f, double a, double b,
                         double abs_tol, double rel_tol = 1e-12);

/// Composite 16-point Gauss-Legendre over a fixed panel partition
/// (edges strictly increasing).
cplx integrate_gl_panels(const std::function<cplx(double)>& f, const std::vector<double>& edges);

/// Build panel edges on [a, b]: mandatory breakpoints plus uniform
/// refinement so no panel exceeds max_width.
std::vector<double> make_panel_edges(double a, double b, const std::vector<double>& breakpoints,
                                     double max_width);

/// (1/2*pi*i) * closed contour integral of f over the circle |s-center|=radius,
/// by the M-point trapezoid rule with M doubled until two successive values
/// agree within tol.  Throws NumericError past M = 2^14.
cplx circle_mean(const std::function<cplx(cplx)>& f, cplx center, double radius,
                 double tol = 1e-9, int m_start = 64);

/// Derivative f'(z) by the Cauchy integral over a circle of given radius.
cplx cauchy_derivative(const std::function<cplx(cplx)>& f, cplx z, double radius,
                       int points = 64);

}  // namespace fzeta
