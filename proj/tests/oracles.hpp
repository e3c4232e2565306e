// Test-only oracles, kept independent of the library's evaluation paths.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

// Riemann zeta via the alternating eta series with Cohen-Villegas-Zagier
// acceleration: zeta(s) = eta(s)/(1 - 2^{1-s}), valid for Re s > 0.
inline cplx alt_zeta(cplx s, int n = 48) {
    double d = std::pow(3.0 + std::sqrt(8.0), n);
    d = (d + 1.0 / d) / 2.0;
    double b = -1.0, c = -d;
    cplx acc = 0.0;
    for (int k = 0; k < n; ++k) {
        c = b - c;
        acc += c * std::exp(-s * std::log(static_cast<double>(k + 1)));
        b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0));
    }
    const cplx eta = acc / d;
    return eta / (1.0 - std::exp((1.0 - s) * std::log(2.0)));
}

// Composite Simpson on [a, b].
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 2000) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

// Sup-norm tube of the stacked family by direct stage summation.
inline double cantor_tube_brute(double a, double b, double t, int stages = 220) {
    double v = 0.0;
    for (int m = 1; m <= stages; ++m) {
        const double lo = std::max(t, std::pow(a, -static_cast<double>(m)));
        v += std::pow(2.0, m - 1.0) * std::pow(lo, 1.0 - b) / (b - 1.0);
    }
    return v;
}

// Sup-norm tube of the interval family by direct summation.  Interval
// lengths are kept in well-scaled form (never as b_j - a_j, which loses all
// precision once l_j drops below the ulp of a_j).
inline double interval_tube_brute(double alpha, double beta, double t, long long terms = 2000000) {
    double v = 0.0;
    for (long long j = 1; j <= terms; ++j) {
        const double aj = std::pow(static_cast<double>(j), alpha);
        const double lj = std::pow(static_cast<double>(j), -beta);
        if (aj >= t) {
            v += lj;
        } else {
            const double part = (aj - t) + lj;  // b_j - t
            if (part > 0) v += part;
        }
    }
    // midpoint tail correction for the omitted terms (full intervals)
    const double J = static_cast<double>(terms) + 0.5;
    v += std::pow(J, 1.0 - beta) / (beta - 1.0);
    return v;
}

// Periodic factor of the stacked-family tube: G(u) in the fractional
// variable u = {log t / log(1/a)}.
inline double cantor_G(double a, double b, double u) {
    const double c = std::pow(a, 1.0 - b);
    return std::pow(2.0, -u) / (b - 1.0) * (1.0 + std::pow(c, u) / (c - 2.0));
}

}  // namespace oracle
