#include "fzeta/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace fzeta {

namespace {

// Gauss-Kronrod 7-15 nodes on [0,1] half-interval (abscissa, Gauss weight, Kronrod weight).
constexpr double kGK[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0,               0.204432940075298},
    {0.586087235467691, 0.0,               0.169004726639267},
    {0.864864423359769, 0.0,               0.104790010322250},
    {0.991455371120813, 0.0,               0.022935322010529},
};

// 16-point Gauss-Legendre nodes/weights on [-1,1], positive half.
constexpr double kGL16x[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499,
};
constexpr double kGL16w[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541,
};

void gk15(const std::function<cplx(double)>& f, double a, double b, cplx& k15, double& err,
          long long& evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    cplx g7 = 0.0, k = 0.0;
    const cplx f0 = f(c);
    ++evals;
    g7 += kGK[0][1] * f0;
    k += kGK[0][2] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = h * kGK[i][0];
        const cplx fi = f(c + dx) + f(c - dx);
        evals += 2;
        g7 += kGK[i][1] * fi;
        k += kGK[i][2] * fi;
    }
    g7 *= h;
    k *= h;
    k15 = k;
    const double d = std::abs(k - g7);
    err = 200.0 * d;
    if (err > 1e-300) err *= std::sqrt(err);
    err = std::min(err, 200.0 * d);
    if (!std::isfinite(err)) err = d;
}

}  // namespace

QuadResult integrate_gk(const std::function<cplx(double)>& f, double a, double b,
                        double abs_tol, double rel_tol, int max_depth) {
    if (!(a < b)) return {0.0, 0.0, 0};
    // Global adaptivity: keep a worklist of panels and always split the one
    // with the largest error estimate until the error sum meets the target.
    struct Seg {
        double a, b, err;
        cplx val;
    };
    std::vector<Seg> segs;
    long long evals = 0;
    const std::size_t max_panels = 4096;
    auto push = [&](double lo, double hi) {
        Seg s{lo, hi, 0.0, 0.0};
        gk15(f, lo, hi, s.val, s.err, evals);
        segs.push_back(s);
    };
    push(a, b);
    int worst_splits = 0;
    const int split_cap = max_depth * 1024;
    while (true) {
        cplx total = 0.0;
        double err_sum = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < segs.size(); ++i) {
            total += segs[i].val;
            err_sum += segs[i].err;
            if (segs[i].err > segs[worst].err ||
                (segs[i].err == segs[worst].err && segs[i].a < segs[worst].a))
                worst = i;
        }
        const double target = std::max(abs_tol, rel_tol * std::abs(total));
        if (err_sum <= target || segs.size() >= max_panels || ++worst_splits > split_cap) {
            if (err_sum > 64 * std::max(target, 1e-300) && segs.size() >= max_panels)
                throw NumericError("integrate_gk: refinement budget exhausted");
            // deterministic left-to-right final summation
            std::sort(segs.begin(), segs.end(), [](const Seg& x, const Seg& y) { return x.a < y.a; });
            cplx v = 0.0;
            double e = 0.0;
            for (const auto& s : segs) { v += s.val; e += s.err; }
            return {v, e, evals};
        }
        const Seg w = segs[worst];
        segs.erase(segs.begin() + static_cast<std::ptrdiff_t>(worst));
        const double mid = 0.5 * (w.a + w.b);
        if (!(w.a < mid && mid < w.b)) {  // interval at floating resolution
            segs.push_back(w);
            segs.back().err = 0.0;
            continue;
        }
        push(w.a, mid);
        push(mid, w.b);
    }
}

double integrate_gk_real(const std::function<double(double)>& f, double a, double b,
                         double abs_tol, double rel_tol) {
    auto wrapped = [&f](double x) { return cplx(f(x), 0.0); };
    return integrate_gk(wrapped, a, b, abs_tol, rel_tol).value.real();
}

cplx integrate_gl_panels(const std::function<cplx(double)>& f, const std::vector<double>& edges) {
    cplx total = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double c = 0.5 * (edges[i] + edges[i + 1]);
        const double h = 0.5 * (edges[i + 1] - edges[i]);
        cplx acc = 0.0;
        for (int j = 0; j < 8; ++j) {
            const double dx = h * kGL16x[j];
            acc += kGL16w[j] * (f(c + dx) + f(c - dx));
        }
        total += h * acc;
    }
    return total;
}

std::vector<double> make_panel_edges(double a, double b, const std::vector<double>& breakpoints,
                                     double max_width) {
    std::vector<double> marks{a, b};
    for (double x : breakpoints)
        if (x > a && x < b) marks.push_back(x);
    std::sort(marks.begin(), marks.end());
    marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
    std::vector<double> edges;
    for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
        const double lo = marks[i], hi = marks[i + 1];
        const int k = std::max(1, static_cast<int>(std::ceil((hi - lo) / max_width)));
        for (int j = 0; j < k; ++j) edges.push_back(lo + (hi - lo) * j / k);
    }
    edges.push_back(b);
    return edges;
}

cplx circle_mean(const std::function<cplx(cplx)>& f, cplx center, double radius, double tol,
                 int m_start) {
    cplx prev = 0.0;
    bool have_prev = false;
    for (int m = m_start; m <= (1 << 14); m *= 2) {
        cplx acc = 0.0;
        for (int j = 0; j < m; ++j) {
            const double th = kTwoPi * j / m;
            const cplx w = center + radius * cplx(std::cos(th), std::sin(th));
            // f(w) * dw/(2 pi i) with dw = i r e^{i th} dth
            acc += f(w) * radius * cplx(std::cos(th), std::sin(th));
        }
        acc /= static_cast<double>(m);
        if (have_prev && std::abs(acc - prev) <= tol * std::max(1.0, std::abs(acc))) return acc;
        prev = acc;
        have_prev = true;
    }
    throw NumericError("circle_mean: contour integral did not converge (contaminated contour?)");
}

cplx cauchy_derivative(const std::function<cplx(cplx)>& f, cplx z, double radius, int points) {
    // f'(z) = (1/2 pi i) \oint f(w)/(w-z)^2 dw on the circle.
    cplx acc = 0.0;
    for (int j = 0; j < points; ++j) {
        const double th = kTwoPi * j / points;
        const cplx e(std::cos(th), std::sin(th));
        acc += f(z + radius * e) / e;
    }
    return acc / (static_cast<double>(points) * radius);
}

}  // namespace fzeta
