#pragma once

#include <functional>
#include <vector>

#include "fzeta/common.hpp"

namespace fzeta {

/// Riemann zeta for complex argument via Euler-Maclaurin summation.
/// Valid away from z = 1; accuracy ~1e-14 for Re z > -2, |Im z| <~ 1e3.
cplx riemann_zeta(cplx z);

/// Sum_{j >= j0} j^{-p} for p > 1, j0 >= 1 (Euler-Maclaurin tail).
/// j0 may exceed the integer range; only its real value matters.
double power_sum_tail(double p, double j0);

/// Complex-exponent variant, Re p > 1.
cplx power_sum_tail_c(cplx p, long long j0);

/// (1+x)^q - 1 without cancellation for small x.
cplx pow1pm1(cplx q, double x);

struct LineFit {
    double slope = 0;
    double intercept = 0;
    double slope_stderr = 0;
    int n = 0;
};

/// Ordinary least squares y = intercept + slope * x.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Minimum of a unimodal function on [lo, hi] by golden-section search.
double golden_section_min(const std::function<double(double)>& f, double lo, double hi,
                          double tol = 1e-12);

/// Richardson extrapolation of g(h) = L + c1 h + c2 h^2 + ... to h -> 0
/// over the ladder h = h0 * 2^{-k}.  Throws NumericError if the table
/// does not settle.
double richardson_limit(const std::function<double(double)>& g, double h0,
                        double tol = 1e-10, int max_steps = 24);

/// Deterministic parallel loop: f(i) for i in [0, n).  Each index writes
/// its own output slot, so the result is identical for any thread count.
/// Thread count comes from FZETA_THREADS (default: hardware concurrency).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f);

int thread_budget();

}  // namespace fzeta
