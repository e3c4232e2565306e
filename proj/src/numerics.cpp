#include "fzeta/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace fzeta {

namespace {

// B_2, B_4, ..., B_16
constexpr double kBernoulli[] = {
    1.0 / 6,   -1.0 / 30,  1.0 / 42,     -1.0 / 30,
    5.0 / 66,  -691.0 / 2730, 7.0 / 6,   -3617.0 / 510,
};

}  // namespace

cplx riemann_zeta(cplx z) {
    if (std::abs(z - 1.0) < 1e-14) throw NumericError("riemann_zeta: argument at the pole s=1");
    // Direct sum of the first J-1 terms, then the Euler-Maclaurin tail at J.
    const int J = std::max<int>(24, static_cast<int>(2.0 * std::abs(z.imag())) + 8);
    cplx sum = 0.0;
    for (int j = 1; j < J; ++j) sum += pow_rc(j, -z);
    const double Jd = J;
    sum += pow_rc(Jd, 1.0 - z) / (z - 1.0);
    sum += 0.5 * pow_rc(Jd, -z);
    // Correction terms B_{2r}/(2r)! * z(z+1)...(z+2r-2) * J^{-z-2r+1}
    cplx rising = z;                 // z (z+1) ... running product
    double fact = 2.0;               // (2r)!
    for (int r = 1; r <= 8; ++r) {
        sum += kBernoulli[r - 1] / fact * rising * pow_rc(Jd, -z - (2.0 * r - 1.0));
        rising *= (z + (2.0 * r - 1.0)) * (z + (2.0 * r));
        fact *= (2.0 * r + 1) * (2.0 * r + 2);
    }
    return sum;
}

double power_sum_tail(double p, double j0) {
    if (p <= 1.0) throw ConfigError("power_sum_tail: exponent must exceed 1");
    if (j0 < 1) j0 = 1;
    double head = 0.0;
    double j = j0;
    for (; j < 32.0; ++j) head += std::pow(j, -p);
    const double J = std::max(j0, 32.0);
    double tail = std::pow(J, 1.0 - p) / (p - 1.0) + 0.5 * std::pow(J, -p);
    double rising = p;
    double fact = 2.0;
    for (int r = 1; r <= 4; ++r) {
        tail += kBernoulli[r - 1] / fact * rising * std::pow(J, -p - (2.0 * r - 1.0));
        rising *= (p + 2.0 * r - 1.0) * (p + 2.0 * r);
        fact *= (2.0 * r + 1) * (2.0 * r + 2);
    }
    return head + tail;
}

cplx power_sum_tail_c(cplx p, long long j0) {
    if (p.real() <= 1.0) throw ConfigError("power_sum_tail_c: Re p must exceed 1");
    if (j0 < 1) j0 = 1;
    const long long J0 = 32;
    cplx head = 0.0;
    long long j = j0;
    for (; j < J0; ++j) head += pow_rc(static_cast<double>(j), -p);
    const double J = static_cast<double>(std::max(j0, J0));
    cplx tail = pow_rc(J, 1.0 - p) / (p - 1.0) + 0.5 * pow_rc(J, -p);
    cplx rising = p;
    double fact = 2.0;
    for (int r = 1; r <= 4; ++r) {
        tail += kBernoulli[r - 1] / fact * rising * pow_rc(J, -p - (2.0 * r - 1.0));
        rising *= (p + (2.0 * r - 1.0)) * (p + (2.0 * r));
        fact *= (2.0 * r + 1) * (2.0 * r + 2);
    }
    return head + tail;
}

cplx pow1pm1(cplx q, double x) {
    const cplx z = q * std::log1p(x);
    if (std::abs(z) < 1e-4) return z * (1.0 + z / 2.0 * (1.0 + z / 3.0 * (1.0 + z / 4.0)));
    return std::exp(z) - 1.0;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const int n = static_cast<int>(x.size());
    if (n < 3 || y.size() != x.size()) throw ConfigError("fit_line: need >= 3 paired samples");
    double mx = 0, my = 0;
    for (int i = 0; i < n; ++i) { mx += x[i]; my += y[i]; }
    mx /= n; my /= n;
    double sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx <= 0) throw ConfigError("fit_line: degenerate abscissae");
    LineFit fit;
    fit.n = n;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double rss = 0;
    for (int i = 0; i < n; ++i) {
        const double r = y[i] - fit.intercept - fit.slope * x[i];
        rss += r * r;
    }
    fit.slope_stderr = std::sqrt(rss / (n - 2) / sxx);
    return fit;
}

double golden_section_min(const std::function<double(double)>& f, double lo, double hi,
                          double tol) {
    const double phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol * std::max(1.0, std::abs(a) + std::abs(b))) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - phi * (b - a); f1 = f(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + phi * (b - a); f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

double richardson_limit(const std::function<double(double)>& g, double h0, double tol,
                        int max_steps) {
    std::vector<std::vector<double>> t;
    double h = h0;
    double prev_diag = 0;
    for (int i = 0; i < max_steps; ++i) {
        std::vector<double> row(i + 1);
        row[0] = g(h);
        for (int j = 1; j <= i; ++j) {
            const double w = std::pow(2.0, j);
            row[j] = (w * row[j - 1] - t[i - 1][j - 1]) / (w - 1.0);
        }
        if (i > 2) {
            const double diag = row[i];
            const double scale = std::max(1e-30, std::abs(diag));
            if (std::abs(diag - prev_diag) < tol * scale) return diag;
        }
        prev_diag = row[i];
        t.push_back(std::move(row));
        h *= 0.5;
    }
    throw NumericError("richardson_limit: extrapolation did not converge");
}

int thread_budget() {
    if (const char* env = std::getenv("FZETA_THREADS")) {
        const int k = std::atoi(env);
        if (k >= 1) return k;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f) {
    const int k = std::min<int>(thread_budget(), static_cast<int>(n));
    if (k <= 1 || n < 64) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(k);
    for (int w = 0; w < k; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += k) f(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace fzeta
