#include "fzeta/zeta.hpp"

#include <algorithm>
#include <cmath>

#include "fzeta/numerics.hpp"
#include "fzeta/quadrature.hpp"

namespace fzeta {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kPoleProximity = 1e-12;

double default_T(const DrumSpec& d, double T) { return T > 0 ? T : d.inner_radius; }

// (1 - 2^{-s})/s, stable near s = 0.
cplx one_minus_pow2(cplx s) {
    const cplx z = s * std::log(2.0);
    if (std::abs(z) < 1e-5)
        return std::log(2.0) * (1.0 - z / 2.0 + z * z / 6.0 - z * z * z / 24.0);
    return (1.0 - std::exp(-z)) / s;
}

// Distance to the nearest pole of the sup-norm closed form.
double pole_distance(const DrumSpec& d, cplx s) {
    return std::visit(
        overloaded{
            [&](const IntervalFamily& f) {
                const double D = (1.0 - (f.alpha + f.beta)) / f.alpha;
                return std::abs(s - cplx(D, 0.0));
            },
            [&](const PowerTail& f) { return std::abs(s + cplx(f.alpha + 1.0, 0.0)); },
            [&](const CantorInfinity& f) {
                const double la = std::log(1.0 / f.a);
                const double D = std::log(2.0) / la - (f.b + 1.0);
                const double p = kTwoPi / la;
                const double k = std::round(s.imag() / p);
                const double lattice = std::abs(s - cplx(D, k * p));
                return std::min(lattice, std::abs(s + cplx(f.b + 1.0, 0.0)));
            },
            [&](const ScaledCopy& f) { return pole_distance(*f.inner, s); },
            [&](const TranslatedCopy& f) { return pole_distance(*f.inner, s); },
            [&](const DisjointUnion& f) {
                double m = 1e308;
                for (const auto& e : f.members) m = std::min(m, pole_distance(*e, s));
                return m;
            },
        },
        d.family);
}

cplx distance_closed(const DrumSpec& d, cplx s, double T) {
    return std::visit(
        overloaded{
            [&](const IntervalFamily&) -> cplx {
                throw ConfigError("closed form unavailable for the interval family");
            },
            [&](const PowerTail& f) -> cplx {
                const double lo = std::max(T, 1.0);
                const cplx e = s + (f.alpha + 1.0);
                return pow_rc(lo, -e) / e;
            },
            [&](const CantorInfinity& f) -> cplx {
                // Sum_m 2^{m-1} int_{max(T, a^-m)} x^{-(s+b+1)-1} dx; the
                // stage tail in closed geometric form continues the series
                // meromorphically.
                const cplx e = s + (f.b + 1.0);
                const double a = f.a;
                int M = 0;
                if (T > 1.0 / a) {
                    M = static_cast<int>(std::floor(std::log(T) / std::log(1.0 / a) + 1e-12));
                    while (M > 0 && std::pow(a, -static_cast<double>(M)) > T * (1.0 + 1e-13)) --M;
                }
                cplx v = 0.0;
                if (M > 0) v += (std::pow(2.0, M) - 1.0) * pow_rc(T, -e) / e;
                const cplx q = 2.0 * pow_rc(a, e);
                v += std::pow(2.0, M) * pow_rc(a, e * (M + 1.0)) / (e * (1.0 - q));
                return v;
            },
            [&](const ScaledCopy& f) -> cplx {
                return pow_rc(f.lambda, -s) * distance_closed(*f.inner, s, T / f.lambda);
            },
            [&](const TranslatedCopy& f) -> cplx { return distance_closed(*f.inner, s, T); },
            [&](const DisjointUnion& f) -> cplx {
                cplx v = 0.0;
                for (const auto& m : f.members) v += distance_closed(*m, s, T);
                return v;
            },
        },
        d.family);
}

// ---------- shared weighted quadrature over the sup-norm tail ----------

struct TailEstimate {
    double cutoff;
    double bound;
};

// Upper bound for int_X^inf g assuming g keeps its measured power decay.
TailEstimate power_tail_bound(const std::function<double(double)>& g, double X0, double target) {
    double X = X0;
    for (int i = 0; i < 300; ++i) {
        const double g1 = g(X);
        if (g1 <= 0.0 || g1 < 1e-320) return {X, 0.0};
        const double g2 = g(X * 2.718281828459045);
        const double nu = std::log(std::max(g2, 1e-320) / g1);
        if (nu < -1.05) {
            const double bound = 2.0 * g1 * X / (-nu - 1.0);
            if (bound <= target) return {X, bound};
        }
        X *= 2.0;
        if (!std::isfinite(X)) break;
    }
    throw NumericError("zeta quadrature: integrand tail does not decay within budget");
}

// Numeric integral of col_len(x) * prod_i x^{e_i} over the x-only tail
// beyond T (2-D drums).  For 1-D drums: per-interval numeric integrals of
// the same radial weight.
EvalResult sup_weighted_quad(const DrumSpec& d, const std::vector<cplx>& exps, double T,
                             double tol) {
    auto weight = [&](double x) {
        cplx w = 1.0;
        for (cplx e : exps) w *= pow_rc(x, e);
        return w;
    };
    double sum_re = 0.0;
    for (cplx e : exps) sum_re += e.real();

    if (d.ambient_dim == 1) {
        // recurse transforms; base family integrates interval by interval
        std::function<cplx(const DrumSpec&, double, const std::vector<cplx>&)> ev =
            [&](const DrumSpec& dd, double TT, const std::vector<cplx>& ee) -> cplx {
            return std::visit(
                overloaded{
                    [&](const IntervalFamily& f) -> cplx {
                        cplx E = 0.0;  // combined radial exponent
                        for (cplx e : ee) E += e;
                        const cplx q1 = E + 1.0;
                        if (std::abs(q1) < 1e-12)
                            throw NumericError("interval weighted quadrature: exponent -1");
                        // exact antiderivative per interval; EM tail beyond J
                        const double jf =
                            TT <= 1.0 ? 1.0 : std::ceil(std::pow(TT, 1.0 / f.alpha)) + 1.0;
                        if (jf > 4e7)
                            throw NumericError("interval weighted quadrature: T out of range");
                        const double J = jf + 4096.0;
                        cplx acc = 0.0;
                        for (double j = 1.0; j <= J; ++j) {
                            const double aj = std::pow(j, f.alpha);
                            const double lj = std::pow(j, -f.beta);
                            double lo = aj, len = lj;
                            if (aj < TT) {
                                len = (aj - TT) + lj;
                                if (len <= 0) continue;
                                lo = TT;
                            }
                            // int_lo^{lo+len} x^E dx = lo^{E+1}((1+len/lo)^{E+1}-1)/(E+1)
                            acc += pow_rc(lo, q1) * pow1pm1(q1, len / lo) / q1;
                        }
                        // leading tail sum_{j>J} l_j a_j^E, second order bounded
                        const cplx p_tail = f.beta - f.alpha * E;
                        if (p_tail.real() <= 1.0)
                            throw NumericError("interval weighted quadrature: divergent tail");
                        acc += power_sum_tail_c(p_tail, static_cast<long long>(J) + 1);
                        return acc;
                    },
                    [&](const ScaledCopy& f) -> cplx {
                        // int over lambda*Omega = lambda^{N + sum e} int over Omega
                        cplx scale = std::pow(f.lambda, dd.ambient_dim);
                        for (cplx e : ee) scale *= pow_rc(f.lambda, e);
                        return scale * ev(*f.inner, TT / f.lambda, ee);
                    },
                    [&](const TranslatedCopy& f) -> cplx { return ev(*f.inner, TT, ee); },
                    [&](const DisjointUnion& f) -> cplx {
                        cplx v = 0.0;
                        for (const auto& m : f.members) v += ev(*m, TT, ee);
                        return v;
                    },
                    [&](const auto&) -> cplx {
                        throw ConfigError("weighted quadrature: unsupported 1-D family");
                    },
                },
                dd.family);
        };
        const cplx v = ev(d, T, exps);
        return {v, 1e-12 * std::abs(v)};
    }

    auto integrand = [&](double x) { return column_length(d, x) * weight(x); };
    auto mag = [&](double x) { return column_length(d, x) * std::pow(x, sum_re); };
    const double lo = std::max(T, d.inner_radius * (1.0 - 1e-12));
    const double probe = std::max(lo, d.inner_radius) * 1.5;
    const double scale0 = std::max(mag(probe) * probe, 1e-300);
    const TailEstimate tail = power_tail_bound(mag, 4.0 * probe, tol * scale0 / 4.0);
    const auto marks = tube_breakpoints(d, lo, tail.cutoff);
    cplx v = 0.0;
    double err = tail.bound;
    double a = lo;
    auto run = [&](double from, double to) {
        if (to <= from) return;
        const QuadResult q = integrate_gk(integrand, from, to, tol * scale0 / 8.0, tol / 8.0);
        v += q.value;
        err += q.err;
    };
    for (double m : marks) {
        run(a, m);
        a = m;
    }
    run(a, tail.cutoff);
    return {v, err};
}

// Accelerated-series evaluation for 1-D drums (distance kind).
cplx interval_tree_eval(const DrumSpec& d, cplx s, double T) {
    return std::visit(
        overloaded{
            [&](const IntervalFamily& f) { return interval_distance_zeta(f.alpha, f.beta, s, T); },
            [&](const ScaledCopy& f) {
                return pow_rc(f.lambda, -s) * interval_tree_eval(*f.inner, s, T / f.lambda);
            },
            [&](const TranslatedCopy& f) { return interval_tree_eval(*f.inner, s, T); },
            [&](const DisjointUnion& f) {
                cplx v = 0.0;
                for (const auto& m : f.members) v += interval_tree_eval(*m, s, T);
                return v;
            },
            [&](const auto&) -> cplx {
                throw ConfigError("distance quadrature: unsupported 1-D family");
            },
        },
        d.family);
}

EvalResult distance_sup_quad(const DrumSpec& d, cplx s, double T, double tol) {
    const int N = d.ambient_dim;
    if (N == 1) {
        const cplx v = interval_tree_eval(d, s, T);
        return {v, 1e-13 * std::abs(v)};
    }
    return sup_weighted_quad(d, {-s - cplx(N, 0.0)}, T, tol);
}

// ---------- Euclidean distance quadrature (explicit copy enumeration) ----------

void for_each_segment(const DrumSpec& d, double x, double y_off, double scale, long long& budget,
                      const std::function<void(double, double)>& fn) {
    std::visit(
        overloaded{
            [&](const IntervalFamily&) {},
            [&](const PowerTail& f) {
                if (x <= scale) return;
                if (--budget < 0) throw NumericError("segment enumeration budget exceeded");
                fn(y_off, scale * std::pow(x / scale, -f.alpha));
            },
            [&](const CantorInfinity& f) {
                const double xl = x / scale;
                if (xl <= 1.0 / f.a) return;
                const double h = scale * std::pow(xl, -f.b);
                double base = 0.0, copies = 1.0;
                for (int m = 1; m <= 60; ++m) {
                    if (std::pow(f.a, -static_cast<double>(m)) > xl) break;
                    const double delta = std::pow(f.a, m * f.b);
                    budget -= static_cast<long long>(copies);
                    if (budget < 0) throw NumericError("segment enumeration budget exceeded");
                    for (double k = 0; k < copies; ++k)
                        fn(y_off + scale * (base + k * delta), h);
                    base += copies * delta;
                    copies *= 2.0;
                }
            },
            [&](const ScaledCopy& f) {
                for_each_segment(*f.inner, x, y_off, scale * f.lambda, budget, fn);
            },
            [&](const TranslatedCopy& f) {
                for_each_segment(*f.inner, x, y_off + scale * f.offset[1], scale, budget, fn);
            },
            [&](const DisjointUnion& f) {
                for (const auto& m : f.members) for_each_segment(*m, x, y_off, scale, budget, fn);
            },
        },
        d.family);
}

EvalResult distance_euclid_quad(const DrumSpec& d, double T, double tol,
                                const std::vector<cplx>& weight_exponents) {
    const int N = d.ambient_dim;
    if (N == 1) return sup_weighted_quad(d, weight_exponents, T, tol);
    auto weight = [&](double r2) {
        const double r = std::sqrt(r2);
        cplx w = 1.0;
        for (cplx e : weight_exponents) w *= pow_rc(r, e);
        return w;
    };
    double sum_re = 0.0;
    for (cplx e : weight_exponents) sum_re += e.real();
    auto inner_full = [&](double x) {
        cplx acc = 0.0;
        long long budget = 1 << 18;
        for_each_segment(d, x, 0.0, 1.0, budget, [&](double c, double h) {
            acc += integrate_gk([&](double y) { return weight(x * x + y * y); }, c, c + h,
                                1e-300, 1e-11)
                       .value;
        });
        return acc;
    };
    auto mag = [&](double x) { return column_length(d, x) * std::pow(x, sum_re); };
    const double lo = std::max(T, d.inner_radius * (1.0 - 1e-12));
    const double probe = std::max(lo, d.inner_radius) * 1.5;
    const double scale0 = std::max(mag(probe) * probe, 1e-300);
    const TailEstimate tail = power_tail_bound(mag, 4.0 * probe, tol * scale0 / 4.0);
    cplx v = 0.0;
    double err = tail.bound;
    {
        const auto marks = tube_breakpoints(d, lo, tail.cutoff);
        double a = lo;
        auto run = [&](double from, double to) {
            if (to <= from) return;
            const QuadResult q = integrate_gk(inner_full, from, to, tol * scale0 / 8.0, tol / 8.0);
            v += q.value;
            err += q.err;
        };
        for (double m : marks) {
            run(a, m);
            a = m;
        }
        run(a, tail.cutoff);
    }
    // boundary sliver: x < T with x^2 + y^2 > T^2
    const double S = std::min(d.strip_height, T);
    const double x_lo = std::sqrt((T - S) * (T + S));
    if (T - x_lo > 1e-12 * T) {
        auto inner_sliver = [&](double x) {
            const double ystar = std::sqrt((T - x) * (T + x));
            cplx acc = 0.0;
            long long budget = 1 << 18;
            for_each_segment(d, x, 0.0, 1.0, budget, [&](double c, double h) {
                const double ylo = std::max(c, ystar), yhi = c + h;
                if (yhi <= ylo) return;
                acc += integrate_gk([&](double y) { return weight(x * x + y * y); }, ylo, yhi,
                                    1e-300, 1e-11)
                           .value;
            });
            return acc;
        };
        const QuadResult q = integrate_gk(inner_sliver, x_lo, T, tol * scale0 / 8.0, tol / 8.0);
        v += q.value;
        err += q.err;
    }
    return {v, err};
}

// ---------- tube-kind quadrature ----------

// Tube zeta of the interval family: the tube function is piecewise linear
// in t (constant between intervals, slope -1 inside them), so every cell
// integrates in closed form; the cell sum is accelerated by a midpoint
// Euler-Maclaurin step in the interval index.
cplx interval_tube_zeta(double alpha, double beta, cplx s, double T) {
    const cplx e1 = s + 1.0;
    // int_lo^{lo+width} t^{-s-2} dt, cancellation-free for width << lo
    auto I0w = [&](double lo, double width) {
        if (width <= 0.0) return cplx(0.0, 0.0);
        if (std::abs(e1) < 1e-9) return cplx(std::log1p(width / lo), 0.0);
        return -pow_rc(lo, -e1) * pow1pm1(-e1, width / lo) / e1;
    };
    // int_lo^{b} (b - t) t^{-s-2} dt by 3-point Gauss in the scaled variable
    // (the span is tiny relative to t, so every factor stays well-scaled)
    auto bridge = [&](double lo, double width) {
        if (width <= 0.0) return cplx(0.0, 0.0);
        static constexpr double xi[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
        static constexpr double wq[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
        const double m = lo + 0.5 * width;
        const cplx head = pow_rc(m, -s - 2.0);
        cplx acc = 0.0;
        for (int k = 0; k < 3; ++k) {
            const double dt = 0.5 * width * xi[k];
            // (b - t) = width/2 (1 - xi), t^{-s-2} = m^{-s-2}(1 + pm1)
            acc += wq[k] * (0.5 * width * (1.0 - xi[k])) *
                   (1.0 + pow1pm1(-s - 2.0, dt / m));
        }
        return head * acc * (0.5 * width);
    };
    // wide-cell exact antiderivatives (safe when width/lo is not small)
    auto I1w = [&](double lo, double width) {  // int t^{-s-1}
        if (width <= 0.0) return cplx(0.0, 0.0);
        if (std::abs(s) < 1e-9) return cplx(std::log1p(width / lo), 0.0);
        return -pow_rc(lo, -s) * pow1pm1(-s, width / lo) / s;
    };
    const double volume = riemann_zeta(cplx(beta, 0.0)).real();
    cplx acc = 0.0;
    if (T < 1.0) acc += volume * I0w(T, 1.0 - T);
    const double t0 = std::max(T, 1.0);
    // the two sub-cells owned by interval j: the sloped span [a_j, b_j] and
    // the flat span [b_j, a_{j+1}]
    auto slope_piece = [&](double lo, double width, double b, double tail_next) {
        if (width <= 0.0) return cplx(0.0, 0.0);
        if (width > 1e-3 * lo) {
            // int (tail + b - t) t^{-s-2}: exact, no cancellation danger here
            return (tail_next + b) * I0w(lo, width) - I1w(lo, width);
        }
        return tail_next * I0w(lo, width) + bridge(lo, width);
    };
    auto cell = [&](double j, double clip) {
        const double aj = std::pow(j, alpha);
        const double lj = std::pow(j, -beta);
        const double bj = aj + lj;
        const double gap = aj * pow1pm1(cplx(alpha, 0.0), 1.0 / j).real() - lj;  // a_{j+1}-b_j
        const double tail_next = power_sum_tail(beta, j + 1.0);
        cplx v = 0.0;
        if (clip <= aj) {
            v += slope_piece(aj, lj, bj, tail_next);
            v += tail_next * I0w(bj, gap);
        } else if (clip < bj) {
            v += slope_piece(clip, (aj - clip) + lj, bj, tail_next);
            v += tail_next * I0w(bj, gap);
        } else if (clip < bj + gap) {
            v += tail_next * I0w(clip, (bj - clip) + gap);
        }
        return v;
    };
    const double jf = std::max(std::ceil(std::pow(t0, 1.0 / alpha)) - 1.0, 1.0);
    if (jf > 4e15) throw NumericError("interval tube zeta: reference radius out of range");
    const double J = jf + 12000.0;
    for (double j = jf; j <= J; ++j) acc += cell(j, t0);
    // remainder: midpoint Euler-Maclaurin over the smooth cell function,
    // integrated in log space (the tail spans many decades)
    auto F = [&](double x) { return cell(x, 0.0); };
    auto Fmag = [&](double x) { return std::abs(F(x)); };
    const double x0 = J + 0.5;
    const TailEstimate te = power_tail_bound(Fmag, 4.0 * x0, 1e-14 * std::abs(acc) + 1e-300);
    const double U = std::log(te.cutoff / x0);
    acc += integrate_gk([&](double u) {
               const double x = x0 * std::exp(u);
               return F(x) * x;
           },
           0.0, U, 1e-15 * std::abs(acc) + 1e-300, 1e-12)
               .value;
    const double h = 0.125;
    acc += (F(x0 + h) - F(x0 - h)) / (2.0 * h) / 24.0;
    return acc;
}

cplx tube_zeta_tree_1d(const DrumSpec& d, cplx s, double T) {
    return std::visit(
        overloaded{
            [&](const IntervalFamily& f) { return interval_tube_zeta(f.alpha, f.beta, s, T); },
            [&](const ScaledCopy& f) {
                return pow_rc(f.lambda, -s) * tube_zeta_tree_1d(*f.inner, s, T / f.lambda);
            },
            [&](const TranslatedCopy& f) { return tube_zeta_tree_1d(*f.inner, s, T); },
            [&](const DisjointUnion& f) {
                cplx v = 0.0;
                for (const auto& m : f.members) v += tube_zeta_tree_1d(*m, s, T);
                return v;
            },
            [&](const auto&) -> cplx {
                throw ConfigError("tube zeta: unsupported 1-D family");
            },
        },
        d.family);
}

EvalResult tube_quad(const DrumSpec& d, cplx s, double T, Norm norm, double tol) {
    const int N = d.ambient_dim;
    if (N == 1) {
        const cplx v = tube_zeta_tree_1d(d, s, T);
        return {v, 1e-11 * std::abs(v)};
    }
    auto tube = [&](double t) { return norm == Norm::Sup ? sup_tube(d, t) : euclid_tube(d, t); };
    auto decay_tail = [&](double V) {
        const double f1 = tube(T * std::exp(V));
        if (f1 < 1e-320) return 0.0;
        const double f2 = tube(T * std::exp(V + 0.5));
        const double nu = 2.0 * std::log(std::max(f2, 1e-320) / f1);  // d ln tube / dv
        const double rate = (s.real() + N) - nu;
        if (rate <= 0.01) return 1e300;
        return 2.0 * f1 * std::exp(-(s.real() + N) * V) / rate;
    };
    const double ref = std::abs(tube(T)) / std::max(std::abs(s.real() + N), 0.2);
    double V = 8.0;
    for (int i = 0; i < 400 && decay_tail(V) > tol * std::max(ref, 1e-300) / 4.0; ++i) V += 4.0;
    auto integrand = [&](double v) {
        return std::exp(-(s + cplx(N, 0.0)) * v) * tube(T * std::exp(v));
    };
    std::vector<double> vb;
    for (double x : tube_breakpoints(d, T, T * std::exp(V))) vb.push_back(std::log(x / T));
    const double width = 1.0 / std::max(1.0, std::abs(s.imag()) / 4.0);
    std::vector<double> edges = make_panel_edges(0.0, V, vb, width);
    cplx value = integrate_gl_panels(integrand, edges);
    double err = 0.0;
    for (int round = 0;; ++round) {
        std::vector<double> fine;
        fine.reserve(edges.size() * 2);
        for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
            fine.push_back(edges[i]);
            fine.push_back(0.5 * (edges[i] + edges[i + 1]));
        }
        fine.push_back(edges.back());
        const cplx refined = integrate_gl_panels(integrand, fine);
        err = std::abs(refined - value);
        value = refined;
        edges = std::move(fine);
        if (err <= tol * std::max(std::abs(refined), 1e-300) / 2.0) break;
        if (round >= 8) {
            if (err > 64 * tol * std::abs(refined))
                throw NumericError("tube zeta quadrature: tolerance unreachable within budget");
            break;
        }
    }
    const cplx pref = pow_rc(T, -s - cplx(N, 0.0));
    return {pref * value, std::abs(pref) * (err + decay_tail(V))};
}

// Partial integral over [lo, hi] of col_len(x) x^{-w} (real w), by exact
// antiderivatives; used by the divergence probe where the full integral
// does not exist.
double sup_partial_moment(const DrumSpec& d, double lo, double hi, double w) {
    if (hi <= lo) return 0.0;
    auto piece = [](double a, double b, double p) {
        if (b <= a) return 0.0;
        if (std::abs(p - 1.0) < 1e-12) return std::log(b / a);
        return (std::pow(a, 1.0 - p) - std::pow(b, 1.0 - p)) / (p - 1.0);
    };
    return std::visit(
        overloaded{
            [&](const IntervalFamily& f) {
                if (std::pow(1e8, f.alpha) < hi)
                    throw ConfigError("partial moment: cutoff too large for interval drums");
                double v = 0.0;
                for (long long j = 1; j < 100000000; ++j) {
                    const double jd = static_cast<double>(j);
                    const double aj = std::pow(jd, f.alpha);
                    if (aj >= hi) break;
                    const double bj = aj + std::pow(jd, -f.beta);
                    if (bj > lo) v += piece(std::max(aj, lo), std::min(bj, hi), w);
                }
                return v;
            },
            [&](const PowerTail& f) { return piece(std::max(lo, 1.0), hi, w + f.alpha); },
            [&](const CantorInfinity& f) {
                double v = 0.0, copies = 1.0;
                for (int m = 1; m <= 2000; ++m) {
                    const double xm = std::pow(f.a, -static_cast<double>(m));
                    if (xm >= hi) break;
                    v += copies * piece(std::max(xm, lo), hi, w + f.b);
                    copies *= 2.0;
                }
                return v;
            },
            [&](const ScaledCopy& f) {
                return std::pow(f.lambda, d.ambient_dim - w) *
                       sup_partial_moment(*f.inner, lo / f.lambda, hi / f.lambda, w);
            },
            [&](const TranslatedCopy& f) { return sup_partial_moment(*f.inner, lo, hi, w); },
            [&](const DisjointUnion& f) {
                double v = 0;
                for (const auto& m : f.members) v += sup_partial_moment(*m, lo, hi, w);
                return v;
            },
        },
        d.family);
}

// Real-axis evaluation close to the abscissa (blow-up probe).
double axis_eval(const DrumSpec& d, double sr, double T) {
    if (has_closed_form(d)) return zeta_closed_form(d, cplx(sr, 0.0), T).real();
    if (d.ambient_dim == 1) return interval_tree_eval(d, cplx(sr, 0.0), T).real();
    throw ConfigError("abscissa probe: no evaluator valid this close to the abscissa");
}

}  // namespace

double drum_abscissa(const DrumSpec& d) {
    return std::visit(
        overloaded{
            [&](const IntervalFamily& f) { return (1.0 - (f.alpha + f.beta)) / f.alpha; },
            [&](const PowerTail& f) { return -1.0 - f.alpha; },
            [&](const CantorInfinity& f) {
                return std::log(2.0) / std::log(1.0 / f.a) - (f.b + 1.0);
            },
            [&](const ScaledCopy& f) { return drum_abscissa(*f.inner); },
            [&](const TranslatedCopy& f) { return drum_abscissa(*f.inner); },
            [&](const DisjointUnion& f) {
                double m = -1e308;
                for (const auto& e : f.members) m = std::max(m, drum_abscissa(*e));
                return m;
            },
        },
        d.family);
}

bool has_closed_form(const DrumSpec& d) {
    return std::visit(
        overloaded{
            [&](const IntervalFamily&) { return false; },
            [&](const PowerTail&) { return true; },
            [&](const CantorInfinity&) { return true; },
            [&](const ScaledCopy& f) { return has_closed_form(*f.inner); },
            [&](const TranslatedCopy& f) { return has_closed_form(*f.inner); },
            [&](const DisjointUnion& f) {
                for (const auto& m : f.members)
                    if (!has_closed_form(*m)) return false;
                return true;
            },
        },
        d.family);
}

ZetaHandle make_zeta(DrumPtr drum, ZetaKind kind, Norm norm, double T, ZetaMethod method) {
    if (!drum) throw ConfigError("make_zeta: null drum");
    ZetaHandle h;
    h.T = default_T(*drum, T);
    h.kind = kind;
    h.norm = norm;
    h.method = method;
    h.abscissa = drum_abscissa(*drum);
    if (method == ZetaMethod::ClosedForm && (norm != Norm::Sup || !has_closed_form(*drum)))
        throw ConfigError("closed-form zeta unavailable for this drum/norm");
    h.drum = std::move(drum);
    return h;
}

cplx zeta_closed_form(const DrumSpec& d, cplx s, double T, ZetaKind kind) {
    if (!has_closed_form(d)) throw ConfigError("closed form unavailable for this family");
    const double Tr = default_T(d, T);
    if (pole_distance(d, s) < kPoleProximity)
        throw NumericError("zeta closed form: s within 1e-12 of a pole");
    if (kind == ZetaKind::Distance) return distance_closed(d, s, Tr);
    const int N = d.ambient_dim;
    const double tubeT = sup_tube(d, Tr);
    auto g = [&](cplx z) {
        return pow_rc(Tr, -z - cplx(N, 0.0)) * tubeT - distance_closed(d, z, Tr);
    };
    if (std::abs(s + cplx(N, 0.0)) < 1e-6)  // removable point of the tube form
        return cauchy_derivative(g, cplx(-N, 0.0), 1e-3, 64);
    return g(s) / (s + cplx(N, 0.0));
}

EvalResult zeta_quadrature(const ZetaHandle& h, cplx s, double tol) {
    if (s.real() <= h.abscissa + h.margin)
        throw ConfigError("zeta quadrature: Re s too close to the abscissa of convergence");
    if (h.kind == ZetaKind::Tube) return tube_quad(*h.drum, s, h.T, h.norm, tol);
    if (h.norm == Norm::Sup) return distance_sup_quad(*h.drum, s, h.T, tol);
    const int N = h.drum->ambient_dim;
    return distance_euclid_quad(*h.drum, h.T, tol, {-s - cplx(N, 0.0)});
}

EvalResult zeta_eval(const ZetaHandle& h, cplx s, double tol) {
    if (h.method == ZetaMethod::ClosedForm) {
        const cplx v = zeta_closed_form(*h.drum, s, h.T, h.kind);
        return {v, 1e-14 * std::abs(v)};
    }
    return zeta_quadrature(h, s, tol);
}

ResidualReport functional_equation_residual(DrumPtr drum, cplx s, double T, Norm norm,
                                            double tol) {
    const double Tr = default_T(*drum, T);
    const int N = drum->ambient_dim;
    cplx lhs;
    if (norm == Norm::Sup && has_closed_form(*drum)) {
        lhs = zeta_closed_form(*drum, s, Tr, ZetaKind::Distance);
    } else {
        ZetaHandle h = make_zeta(drum, ZetaKind::Distance, norm, Tr);
        lhs = zeta_quadrature(h, s, tol).value;
    }
    ZetaHandle ht = make_zeta(drum, ZetaKind::Tube, norm, Tr);
    const cplx tz = zeta_quadrature(ht, s, tol).value;
    const TubeFunction tf = make_tube(drum, norm);
    const cplx rhs = pow_rc(Tr, -s - cplx(N, 0.0)) * tf(Tr) - (s + cplx(N, 0.0)) * tz;
    ResidualReport r{lhs, rhs, std::abs(lhs - rhs), 0.0};
    r.rel_residual = r.abs_residual / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    return r;
}

ResidualReport scaling_identity_residual(DrumPtr drum, double lambda, cplx s, double T, Norm norm,
                                         double tol) {
    if (!(lambda > 0)) throw ConfigError("scaling residual: lambda must be positive");
    const double Tr = default_T(*drum, T);
    const DrumPtr scaled = make_scaled(drum, lambda);
    auto eval = [&](DrumPtr d, double TT) -> cplx {
        if (norm == Norm::Sup && has_closed_form(*d))
            return zeta_closed_form(*d, s, TT, ZetaKind::Distance);
        ZetaHandle h = make_zeta(d, ZetaKind::Distance, norm, TT);
        return zeta_quadrature(h, s, tol).value;
    };
    const cplx lhs = eval(scaled, lambda * Tr);
    const cplx rhs = pow_rc(lambda, -s) * eval(drum, Tr);
    ResidualReport r{lhs, rhs, std::abs(lhs - rhs), 0.0};
    r.rel_residual = r.abs_residual / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    return r;
}

ResidualReport inversion_identity_residual(DrumPtr drum, cplx s, double T, Norm norm, double tol) {
    const double Tr = default_T(*drum, T);
    const int N = drum->ambient_dim;
    cplx lhs;
    if (norm == Norm::Sup && has_closed_form(*drum)) {
        lhs = zeta_closed_form(*drum, s, Tr, ZetaKind::Distance);
    } else {
        ZetaHandle h = make_zeta(drum, ZetaKind::Distance, norm, Tr);
        lhs = zeta_quadrature(h, s, tol).value;
    }
    if (s.real() <= drum_abscissa(*drum) + 0.05)
        throw ConfigError("inversion residual: Re s too close to the abscissa");
    // inverted-drum side: |y|^{s-N} at y = x/|x|^2 becomes |x|^{N-s},
    // composed with the inversion Jacobian |x|^{-2N}
    const std::vector<cplx> jac{cplx(N, 0.0) - s, cplx(-2.0 * N, 0.0)};
    const cplx rhs = (norm == Norm::Sup) ? sup_weighted_quad(*drum, jac, Tr, tol).value
                                         : distance_euclid_quad(*drum, Tr, tol, jac).value;
    ResidualReport r{lhs, rhs, std::abs(lhs - rhs), 0.0};
    r.rel_residual = r.abs_residual / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    return r;
}

GrowthReport abscissa_probe(const ZetaHandle& h, double s_real, const std::vector<double>& ladder) {
    if (ladder.empty()) throw ConfigError("abscissa probe: empty ladder");
    GrowthReport rep;
    rep.divergence_mode = s_real < h.abscissa;
    if (rep.divergence_mode) {
        const double w = s_real + h.drum->ambient_dim;
        for (double X : ladder) {
            rep.abscissae.push_back(X);
            rep.values.push_back(sup_partial_moment(*h.drum, h.T, X, w));
        }
    } else {
        const double gap0 = std::max(s_real - h.abscissa, 1e-12);
        for (std::size_t k = 0; k < ladder.size(); ++k) {
            const double gap = gap0 * std::pow(0.5, static_cast<double>(k));
            rep.abscissae.push_back(gap);
            rep.values.push_back(std::abs(axis_eval(*h.drum, h.abscissa + gap, h.T)));
        }
    }
    rep.increasing = true;
    for (std::size_t i = 1; i < rep.values.size(); ++i)
        if (rep.values[i] <= rep.values[i - 1]) rep.increasing = false;
    rep.last_to_first =
        rep.values.empty() ? 0.0 : rep.values.back() / std::max(rep.values.front(), 1e-300);
    return rep;
}

cplx norm_difference_distance_zeta(DrumPtr drum, cplx s, double T, double tol) {
    const double Tr = default_T(*drum, T);
    const int N = drum->ambient_dim;
    if (N == 1) return 0.0;  // the norms coincide on the line
    if (s.real() <= -(N + 1.0) + 0.02)
        throw ConfigError("norm difference: Re s below the difference abscissa");
    auto gap = [&](double v) { return tube_norm_gap(*drum, Tr * std::exp(v)); };
    auto decay_tail = [&](double V) {
        const double f1 = gap(V);
        if (f1 < 1e-320) return 0.0;
        const double f2 = gap(V + 0.5);
        const double nu = 2.0 * std::log(std::max(f2, 1e-320) / f1);
        const double rate = (s.real() + N) - nu;
        if (rate <= 0.01) return 1e300;
        return 2.0 * f1 * std::exp(-(s.real() + N) * V) / rate;
    };
    const double ref = std::max(gap(0.5), 1e-300);
    double V = 8.0;
    for (int i = 0; i < 200 && decay_tail(V) > tol * ref / 4.0; ++i) V += 4.0;
    auto integrand = [&](double v) { return std::exp(-(s + cplx(N, 0.0)) * v) * gap(v); };
    std::vector<double> vb;
    for (double x : tube_breakpoints(*drum, Tr, Tr * std::exp(V))) vb.push_back(std::log(x / Tr));
    const double width = 1.0 / std::max(1.0, std::abs(s.imag()) / 4.0);
    const std::vector<double> edges = make_panel_edges(0.0, V, vb, width);
    const cplx tube_diff = pow_rc(Tr, -s - cplx(N, 0.0)) * integrate_gl_panels(integrand, edges);
    return pow_rc(Tr, -s - cplx(N, 0.0)) * gap(0.0) - (s + cplx(N, 0.0)) * tube_diff;
}

cplx interval_distance_zeta(double alpha, double beta, cplx s, double T) {
    if (std::abs(s) < 1e-300) throw NumericError("interval zeta: s = 0 is a removable case; offset s");
    const cplx arg1 = alpha * (s + 1.0) + beta;
    if (std::abs(arg1 - 1.0) < kPoleProximity)
        throw NumericError("interval zeta: s within 1e-12 of the principal pole");
    cplx v = one_minus_pow2(s);
    cplx c = 1.0;
    cplx acc = 0.0;
    for (int m = 1; m <= 400; ++m) {
        const cplx arg = alpha * s + static_cast<double>(m) * (alpha + beta);
        const cplx term = c * (riemann_zeta(arg) - 1.0);
        acc += term;
        if (m > 2 && std::abs(term) < 1e-17 * (std::abs(acc) + std::abs(v) + 1e-300)) break;
        c = -c * (s + static_cast<double>(m)) / (m + 1.0);
    }
    v += acc;
    if (T > 1.0) {
        if (std::pow(1e8, alpha) < T)
            throw ConfigError("interval zeta: reference radius too large");
        for (long long j = 1; j < 100000000; ++j) {
            const double jd = static_cast<double>(j);
            const double aj = std::pow(jd, alpha);
            if (aj >= T) break;
            const double bj = std::min(aj + std::pow(jd, -beta), T);
            v -= (pow_rc(aj, -s) - pow_rc(bj, -s)) / s;
        }
    }
    return v;
}

}  // namespace fzeta
