#include "fzeta/tube.hpp"

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

// Smallest j with j^alpha >= t, as a double (beyond 2^53 the +-1 boundary
// adjustment is below ulp resolution and irrelevant to the sums).
double first_full_interval(double alpha, double t) {
    if (t <= 1.0) return 1.0;
    double j = std::ceil(std::pow(t, 1.0 / alpha) - 1e-9);
    if (j < 1.0) j = 1.0;
    if (j < 9e15) {
        while (std::pow(j, alpha) < t) ++j;
        while (j > 1.0 && std::pow(j - 1.0, alpha) >= t) --j;
    }
    return j;
}

double interval_tube_exact(double alpha, double beta, double t, double total_volume) {
    if (t <= 1.0) return total_volume;
    const double jf = first_full_interval(alpha, t);
    double v = power_sum_tail(beta, jf);
    if (jf >= 2.0) {
        const double j = jf - 1.0;
        const double part = (std::pow(j, alpha) - t) + std::pow(j, -beta);  // b_j - t
        if (part > 0) v += part;
    }
    return v;
}

// Plain partial sum with a midpoint-rule tail; the independent cross-check
// for the Euler-Maclaurin route.
double interval_tube_direct(double alpha, double beta, double t, double total_volume) {
    if (t <= 1.0) return total_volume;
    const double jf = first_full_interval(alpha, t);
    if (jf > 4e15) return interval_tube_exact(alpha, beta, t, total_volume);
    double v = 0.0;
    const double K = jf + 20000.0;
    for (double j = jf; j < K; ++j) v += std::pow(j, -beta);
    v += std::pow(K - 0.5, 1.0 - beta) / (beta - 1.0);
    if (jf >= 2.0) {
        const double j = jf - 1.0;
        const double part = (std::pow(j, alpha) - t) + std::pow(j, -beta);
        if (part > 0) v += part;
    }
    return v;
}

// Largest m >= 0 with a^{-m} <= t.
int cantor_stage(double a, double t) {
    if (t < 1.0 / a) return 0;
    const double la = std::log(1.0 / a);
    int m = static_cast<int>(std::floor(std::log(t) / la + 1e-12));
    while (m > 0 && std::pow(a, -static_cast<double>(m)) > t * (1.0 + 1e-13)) --m;
    while (std::pow(a, -static_cast<double>(m + 1)) <= t * (1.0 + 1e-13)) ++m;
    return m;
}

// Stage-by-stage tail sum, truncated at relative machine accuracy.  The
// exponent bb plays the role of b; with bb = b + w this doubles as the
// weighted moment series.
double cantor_xtail_series(double a, double bb, double t) {
    const int M = cantor_stage(a, t);
    double head_copies = 0.0, pw = 1.0;  // sum of 2^{m-1}, m = 1..M
    for (int m = 1; m <= M; ++m) {
        head_copies += pw;
        pw *= 2.0;
    }
    double v = head_copies * std::pow(t, 1.0 - bb) / (bb - 1.0);
    const double q = 2.0 * std::pow(a, bb - 1.0);
    double term = 0.5 * std::pow(q, M + 1.0) / (bb - 1.0);
    for (int m = 0; m < 4000; ++m) {
        v += term;
        term *= q;
        if (term < 1e-17 * v) break;
    }
    return v;
}

double powertail_xtail(double alpha, double T, double w) {
    const double lo = std::max(T, 1.0);
    return std::pow(lo, 1.0 - alpha - w) / (alpha + w - 1.0);
}

double interval_moment(double alpha, double beta, double T, double w);

// Integral of x^{-w} over the x-only tail, closed form per family.
double radial_moment(const DrumSpec& d, double T, double w) {
    return std::visit(
        overloaded{
            [&](const IntervalFamily& f) { return interval_moment(f.alpha, f.beta, T, w); },
            [&](const PowerTail& f) { return powertail_xtail(f.alpha, T, w); },
            [&](const CantorInfinity& f) { return cantor_xtail_series(f.a, f.b + w, T); },
            [&](const ScaledCopy& f) {
                return std::pow(f.lambda, d.ambient_dim - w) * radial_moment(*f.inner, T / f.lambda, w);
            },
            [&](const TranslatedCopy& f) { return radial_moment(*f.inner, T, w); },
            [&](const DisjointUnion& f) {
                double s = 0;
                for (const auto& m : f.members) s += radial_moment(*m, T, w);
                return s;
            },
        },
        d.family);
}

// Sum over intervals of int x^{-w} dx beyond T: stable antiderivative per
// interval for the first block, then a two-term Euler-Maclaurin tail.
double interval_moment(double alpha, double beta, double T, double w) {
    const double decay = alpha * w + beta;  // term_j ~ j^{-(alpha w + beta)}
    if (decay <= 1.0) throw ConfigError("interval moment: exponent too small to converge");
    if (std::abs(w - 1.0) < 1e-12) throw ConfigError("interval moment: w = 1 unsupported");
    const double jf = first_full_interval(alpha, std::max(T, 1.0));
    if (jf > 4e15) throw NumericError("interval moment: reference radius out of range");
    const double J = jf + 4096.0;
    double v = 0.0;
    for (double j = std::max(1.0, jf - 1.0); j <= J; ++j) {
        const double aj = std::pow(j, alpha);
        const double lj = std::pow(j, -beta);
        double lo = aj, len = lj;
        if (aj < T) {
            len = (aj - T) + lj;
            if (len <= 0) continue;
            lo = T;
        }
        // int_lo^{lo+len} x^{-w} dx = lo^{1-w} (1 - (1+len/lo)^{1-w})/(w-1)
        v -= std::pow(lo, 1.0 - w) * pow1pm1(cplx(1.0 - w, 0.0), len / lo).real() / (w - 1.0);
    }
    // leading tail Sum l_j a_j^{-w} plus the first curvature correction
    v += power_sum_tail(decay, J + 1);
    v += 0.5 * w * power_sum_tail(alpha * (w + 1.0) + 2.0 * beta, J + 1);
    return v;
}

double quad_sup_tube(const DrumSpec& d, double t);

}  // namespace

double cantor_tube_closed(double a, double b, double t) {
    const double q = std::pow(a, b - 1.0);
    const double volume = q / ((b - 1.0) * (1.0 - 2.0 * q));
    if (t <= 1.0 / a) return volume;
    const int M = cantor_stage(a, t);
    const double first = std::pow(t, 1.0 - b) * (std::pow(2.0, M) - 1.0) / (b - 1.0);
    return first + cantor_level_tail_volume(a, b, M);
}

double sup_tube(const DrumSpec& d, double t) {
    return std::visit(
        overloaded{
            [&](const IntervalFamily& f) { return interval_tube_exact(f.alpha, f.beta, t, d.volume); },
            [&](const PowerTail& f) {
                return t <= 1.0 ? d.volume : std::pow(t, 1.0 - f.alpha) / (f.alpha - 1.0);
            },
            [&](const CantorInfinity& f) {
                return t <= 1.0 / f.a ? d.volume : cantor_xtail_series(f.a, f.b, t);
            },
            [&](const ScaledCopy& f) {
                return std::pow(f.lambda, d.ambient_dim) * sup_tube(*f.inner, t / f.lambda);
            },
            [&](const TranslatedCopy& f) { return sup_tube(*f.inner, t); },
            [&](const DisjointUnion& f) {
                double s = 0;
                for (const auto& m : f.members) s += sup_tube(*m, t);
                return s;
            },
        },
        d.family);
}

double column_length_above(const DrumSpec& d, double x, double y0) {
    return std::visit(
        overloaded{
            [&](const IntervalFamily&) { return 0.0; },
            [&](const PowerTail& f) {
                if (x <= 1.0) return 0.0;
                const double h = std::pow(x, -f.alpha);
                if (y0 <= 0.0) return h;
                return y0 >= h ? 0.0 : h - y0;
            },
            [&](const CantorInfinity& f) {
                if (x <= 1.0 / f.a) return 0.0;
                const int M = cantor_stage(f.a, x);
                const double h = std::pow(x, -f.b);
                double total = 0.0;
                double base = 0.0;    // bottom of stage m slab
                double copies = 1.0;  // 2^{m-1}
                for (int m = 1; m <= M; ++m) {
                    const double delta = std::pow(f.a, m * f.b);  // slab height per copy
                    if (y0 <= base) {
                        total += copies * h;
                    } else {
                        const double r = (y0 - base) / delta;
                        const double kfull = std::ceil(r - 1e-15);
                        if (kfull < copies) total += (copies - std::max(kfull, 0.0)) * h;
                        const double kp = std::floor(r);
                        if (kp >= 0.0 && kp < copies && kp < kfull) {
                            const double c = base + kp * delta;
                            if (c + h > y0) total += c + h - y0;
                        }
                    }
                    base += copies * delta;
                    copies *= 2.0;
                }
                return total;
            },
            [&](const ScaledCopy& f) {
                return f.lambda * column_length_above(*f.inner, x / f.lambda, y0 / f.lambda);
            },
            [&](const TranslatedCopy& f) {
                return column_length_above(*f.inner, x, y0 - f.offset[1]);
            },
            [&](const DisjointUnion& f) {
                double s = 0;
                for (const auto& m : f.members) s += column_length_above(*m, x, y0);
                return s;
            },
        },
        d.family);
}

double column_length(const DrumSpec& d, double x) { return column_length_above(d, x, -1.0); }

double tube_norm_gap(const DrumSpec& d, double t) {
    if (d.ambient_dim == 1) return 0.0;
    if (t <= d.inner_radius) return 0.0;  // both tubes equal the full volume
    const double s_top = std::min(d.strip_height, t);
    if (s_top <= 0.0) return 0.0;
    // measure{|x|_sup <= t < |x|_2} via y0 = sqrt(t^2 - x^2) as the variable
    auto f = [&](double y0) {
        const double x = std::sqrt((t - y0) * (t + y0));
        if (!(x > 0.0)) return 0.0;
        return column_length_above(d, x, y0) * y0 / x;
    };
    // geometric panels towards y0 = 0: the support can be a thin band near
    // the axis (graph drums), far below the node spacing of one global panel
    double v = 0.0;
    double hi = s_top;
    for (int k = 0; k < 64 && hi > 1e-300; ++k) {
        const double lo = (k == 63) ? 0.0 : hi * 0.5;
        v += integrate_gk_real(f, lo, hi, 1e-300, 1e-11);
        hi = lo;
    }
    return v;
}

double euclid_tube(const DrumSpec& d, double t) { return sup_tube(d, t) + tube_norm_gap(d, t); }

std::vector<double> tube_breakpoints(const DrumSpec& d, double lo, double hi) {
    std::vector<double> out;
    std::visit(
        overloaded{
            [&](const IntervalFamily&) {},  // dense endpoints; adaptivity copes
            [&](const PowerTail&) {
                if (1.0 > lo && 1.0 < hi) out.push_back(1.0);
            },
            [&](const CantorInfinity& f) {
                for (int m = 1; m <= 2000; ++m) {
                    const double x = std::pow(f.a, -static_cast<double>(m));
                    if (x >= hi) break;
                    if (x > lo) out.push_back(x);
                }
            },
            [&](const ScaledCopy& f) {
                for (double x : tube_breakpoints(*f.inner, lo / f.lambda, hi / f.lambda))
                    out.push_back(x * f.lambda);
            },
            [&](const TranslatedCopy& f) { out = tube_breakpoints(*f.inner, lo, hi); },
            [&](const DisjointUnion& f) {
                for (const auto& m : f.members)
                    for (double x : tube_breakpoints(*m, lo, hi)) out.push_back(x);
            },
        },
        d.family);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double sup_radial_moment(const DrumSpec& d, double T, double w) { return radial_moment(d, T, w); }

namespace {

// Quadrature route for the sup tube: numeric integral of the column length.
double quad_sup_tube(const DrumSpec& d, double t) {
    if (d.ambient_dim == 1) {
        return std::visit(
            overloaded{
                [&](const IntervalFamily& f) {
                    return interval_tube_direct(f.alpha, f.beta, t, d.volume);
                },
                [&](const ScaledCopy& f) { return f.lambda * quad_sup_tube(*f.inner, t / f.lambda); },
                [&](const TranslatedCopy& f) { return quad_sup_tube(*f.inner, t); },
                [&](const DisjointUnion& f) {
                    double s = 0;
                    for (const auto& m : f.members) s += quad_sup_tube(*m, t);
                    return s;
                },
                [&](const auto&) -> double {
                    throw ConfigError("quadrature tube: unsupported 1-D family");
                },
            },
            d.family);
    }
    if (t <= d.inner_radius) return d.volume;
    auto col = [&](double x) { return column_length(d, x); };
    double X = std::max(4.0 * t, 4.0 * d.inner_radius);
    double tail = 0.0;
    for (int grow = 0; grow < 200; ++grow) {
        const double f1 = col(X), f2 = col(X * 2.718281828459045);
        if (f1 <= 0.0) { tail = 0.0; break; }
        const double nu = std::log(std::max(f2, 1e-300) / f1);  // local decay exponent
        if (nu >= -1.0001) { X *= 4.0; continue; }
        tail = 2.0 * f1 * X / (-nu - 1.0);
        if (tail < 1e-13 * d.volume || tail < 1e-13) break;
        X *= 2.0;
    }
    const auto marks = tube_breakpoints(d, t, X);
    double v = 0.0;
    double lo = t;
    auto segment = [&](double a, double b) {
        if (b <= a) return;
        v += integrate_gk_real(col, a, b, 1e-15, 1e-12);
    };
    for (double m : marks) {
        segment(lo, m);
        lo = m;
    }
    segment(lo, X);
    return v + tail;
}

}  // namespace

namespace {

// stage cutoff and guaranteed truncation remainder, aggregated over every
// stacked component (scaled copies weight the remainder by lambda^N)
void collect_truncation(const DrumSpec& d, double weight, int& cutoff, double& tail) {
    std::visit(overloaded{
                   [&](const CantorInfinity& f) {
                       const int m = cantor_level_cutoff(f.a, f.b);
                       cutoff = std::max(cutoff, m);
                       tail += weight * cantor_level_tail_volume(f.a, f.b, m);
                   },
                   [&](const ScaledCopy& f) {
                       collect_truncation(*f.inner,
                                          weight * std::pow(f.lambda, d.ambient_dim), cutoff,
                                          tail);
                   },
                   [&](const TranslatedCopy& f) { collect_truncation(*f.inner, weight, cutoff, tail); },
                   [&](const DisjointUnion& f) {
                       for (const auto& m : f.members) collect_truncation(*m, weight, cutoff, tail);
                   },
                   [&](const auto&) {},
               },
               d.family);
}

}  // namespace

TubeFunction make_tube(DrumPtr drum, Norm norm, TubeMethod method) {
    if (!drum) throw ConfigError("make_tube: null drum");
    TubeFunction t;
    t.drum = std::move(drum);
    t.norm = norm;
    t.method = method;
    t.level_cutoff = 0;
    t.tail_bound = 0.0;
    collect_truncation(*t.drum, 1.0, t.level_cutoff, t.tail_bound);
    return t;
}

double TubeFunction::operator()(double t) const {
    if (!(t > 0)) throw ConfigError("tube evaluation requires t > 0");
    if (method == TubeMethod::ExactSeries)
        return norm == Norm::Sup ? sup_tube(*drum, t) : euclid_tube(*drum, t);
    const double base = quad_sup_tube(*drum, t);
    return norm == Norm::Sup ? base : base + tube_norm_gap(*drum, t);
}

double tube_volume(const TubeFunction& tube, double t) { return tube(t); }

std::pair<double, double> scale_tube_identity(DrumPtr drum, double lambda, double t, Norm norm) {
    if (!(lambda > 0) || !(t > 0)) throw ConfigError("scale_tube_identity: need lambda, t > 0");
    const TubeFunction scaled = make_tube(make_scaled(drum, lambda), norm);
    const TubeFunction plain = make_tube(drum, norm);
    const double lhs = scaled(t);
    const double rhs = std::pow(lambda, drum->ambient_dim) * plain(t / lambda);
    return {lhs, rhs};
}

double inverted_near_ball_volume(DrumPtr drum, double eps, Norm norm) {
    if (!drum) throw ConfigError("inverted_near_ball_volume: null drum");
    if (!(eps > 0)) throw ConfigError("inverted_near_ball_volume: eps must be positive");
    const double T = 1.0 / eps;
    if (T < drum->inner_radius)
        throw ConfigError(
            "inverted_near_ball_volume: 1/eps falls below the drum inner radius; "
            "the full inverted volume would be required");
    const double w = 2.0 * drum->ambient_dim;  // inversion Jacobian weight
    if (norm == Norm::Sup || drum->ambient_dim == 1) return sup_radial_moment(*drum, T, w);
    if (const auto* p = std::get_if<PowerTail>(&drum->family)) {
        // Euclidean, single graph region: inner integral of (x^2+y^2)^{-2}
        // has an elementary antiderivative.
        const double alpha = p->alpha;
        auto inner = [](double x, double y) {
            return y / (2.0 * x * x * (x * x + y * y)) + std::atan(y / x) / (2.0 * x * x * x);
        };
        auto full_col = [&](double x) {
            const double h = std::pow(x, -alpha);
            return inner(x, h);  // minus inner(x, 0) = 0
        };
        // main part: x >= T, entire column
        double X = 8.0 * T;
        double v = 0.0;
        while (true) {
            v = integrate_gk_real(full_col, T, X, 1e-300, 1e-12);
            const double tail_est = 2.0 * full_col(X) * X / (alpha + 4.0 - 1.0);
            if (tail_est < 1e-13 * v) {
                v += tail_est * 0.5;
                break;
            }
            X *= 4.0;
        }
        // boundary sliver: x in [sqrt(T^2 - S^2), T), y above sqrt(T^2 - x^2)
        const double S = std::min(drum->strip_height, T);
        const double x_lo = std::sqrt((T - S) * (T + S));
        if (T - x_lo > 1e-12 * T) {
            auto sliver = [&](double x) {
                const double h = std::pow(x, -alpha);
                const double ystar = std::sqrt((T - x) * (T + x));
                if (ystar >= h || x <= 1.0) return 0.0;
                return inner(x, h) - inner(x, ystar);
            };
            v += integrate_gk_real(sliver, std::max(x_lo, 1.0), T, 1e-300, 1e-11);
        }
        return v;
    }
    throw ConfigError("inverted_near_ball_volume: Euclidean norm unsupported for this family");
}

}  // namespace fzeta
