#include "fzeta/minkowski.hpp"

#include <algorithm>
#include <cmath>

#include "fzeta/numerics.hpp"

namespace fzeta {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

PeriodicProfile periodic_profile(double a, double b) {
    if (!(a > 0 && a < 0.5)) throw ConfigError("periodic profile: a outside (0, 1/2)");
    const double T = std::log(1.0 / a);
    const double c = std::pow(a, 1.0 - b);  // > 2 under the volume condition
    if (!(c > 2.0)) throw ConfigError("periodic profile: parameters violate b > 1 + log_{1/a} 2");
    PeriodicProfile prof;
    prof.period = T;
    prof.sampler = [a, b, c, T](double tau) {
        double u = tau / T;
        u -= std::floor(u);
        return std::pow(2.0, -u) / (b - 1.0) * (1.0 + std::pow(c, u) / (c - 2.0));
    };
    prof.breakpoints = {0.0};  // fractional-part reset; smooth elsewhere
    prof.max_value = (1.0 / (b - 1.0)) * (c - 1.0) / (c - 2.0);  // = G(0)
    // unique interior minimum; golden section over the full period
    prof.argmin = golden_section_min(prof.sampler, 0.0, T, 1e-14);
    prof.min_value = prof.sampler(prof.argmin);
    return prof;
}

PeriodicProfile periodic_profile(const DrumSpec& cantor) {
    const auto* f = std::get_if<CantorInfinity>(&cantor.family);
    if (!f) throw ConfigError("periodic profile: the drum is not a stacked family");
    return periodic_profile(f->a, f->b);
}

DimensionInfo exact_dimension(const DrumSpec& d) {
    return std::visit(
        overloaded{
            [&](const IntervalFamily& f) {
                const double D = (1.0 - (f.alpha + f.beta)) / f.alpha;
                const double M = 1.0 / (f.beta - 1.0);
                return DimensionInfo{D, {M, M}, true};
            },
            [&](const PowerTail& f) {
                const double D = -1.0 - f.alpha;
                const double M = 1.0 / (f.alpha - 1.0);
                return DimensionInfo{D, {M, M}, true};
            },
            [&](const CantorInfinity& f) {
                const PeriodicProfile prof = periodic_profile(f.a, f.b);
                const double D = std::log(2.0) / std::log(1.0 / f.a) - (f.b + 1.0);
                return DimensionInfo{D, {prof.min_value, prof.max_value}, false};
            },
            [&](const ScaledCopy& f) {
                DimensionInfo info = exact_dimension(*f.inner);
                const double factor = std::pow(f.lambda, -info.dimension);
                info.content.lower *= factor;
                info.content.upper *= factor;
                return info;
            },
            [&](const TranslatedCopy& f) { return exact_dimension(*f.inner); },
            [&](const DisjointUnion& f) {
                // dimension of a finite union is the max; members at the top
                // dimension contribute additively to the content bounds
                double D = -1e308;
                for (const auto& m : f.members) D = std::max(D, exact_dimension(*m).dimension);
                double lo = 0, hi = 0;
                bool measurable = true;
                for (const auto& m : f.members) {
                    const DimensionInfo mi = exact_dimension(*m);
                    if (mi.dimension < D - 1e-12) continue;
                    lo += mi.content.lower;
                    hi += mi.content.upper;
                    measurable = measurable && mi.measurable;
                }
                if (f.members.size() > 1) measurable = false;
                return DimensionInfo{D, {lo, hi}, measurable};
            },
        },
        d.family);
}

DimensionEstimate estimate_dimension(const TubeFunction& tube, double t_min, double t_max,
                                     int n_points) {
    if (!(t_min > 0) || !(t_max / t_min >= 1e3))
        throw ConfigError("estimate_dimension: window must span at least 3 decades");
    if (n_points < 16) throw ConfigError("estimate_dimension: need at least 16 grid points");
    std::vector<double> lx(n_points), ly(n_points);
    const double step = std::log(t_max / t_min) / (n_points - 1);
    for (int i = 0; i < n_points; ++i) {
        const double t = t_min * std::exp(i * step);
        const double v = tube(t);
        if (v < 1e-300)
            throw NumericError("estimate_dimension: tube underflow inside the window");
        lx[i] = std::log(t);
        ly[i] = std::log(v);
    }
    const LineFit fit = fit_line(lx, ly);
    DimensionEstimate est;
    est.slope = fit.slope;
    est.slope_stderr = fit.slope_stderr;
    est.d_hat = fit.slope - tube.drum->ambient_dim;
    est.half_width = 2.0 * fit.slope_stderr;
    est.n_points = n_points;
    return est;
}

ContentInterval content_bounds(const TubeFunction& tube, double D, double t_min, double t_max,
                               int points_per_period) {
    if (!(t_min > 0 && t_max > t_min)) throw ConfigError("content_bounds: bad window");
    const int N = tube.drum->ambient_dim;
    // grid density: points per multiplicative period e^T for lattice drums,
    // per decade otherwise
    double period = 0.0;  // largest component period; 0 when not log-periodic
    std::function<void(const DrumSpec&)> find_period = [&](const DrumSpec& dd) {
        if (const auto* c = std::get_if<CantorInfinity>(&dd.family))
            period = std::max(period, std::log(1.0 / c->a));
        else if (const auto* sc = std::get_if<ScaledCopy>(&dd.family))
            find_period(*sc->inner);
        else if (const auto* tr = std::get_if<TranslatedCopy>(&dd.family))
            find_period(*tr->inner);
        else if (const auto* un = std::get_if<DisjointUnion>(&dd.family)) {
            for (const auto& m : un->members) find_period(*m);
        }
    };
    find_period(*tube.drum);
    const double span = std::log(t_max / t_min);
    if (period > 0.0 && span + 1e-9 < 3.0 * period)
        throw ConfigError("content_bounds: window must span at least 3 multiplicative periods");
    if (period == 0.0) period = std::log(10.0);
    const long long n =
        std::max<long long>(64, static_cast<long long>(span / period * points_per_period));
    std::vector<double> vals(static_cast<std::size_t>(n) + 1);
    parallel_for(vals.size(), [&](std::size_t i) {
        const double t = t_min * std::exp(span * static_cast<double>(i) / static_cast<double>(n));
        vals[i] = tube(t) / std::pow(t, N + D);
    });
    ContentInterval ci{vals[0], vals[0]};
    for (double v : vals) {
        ci.lower = std::min(ci.lower, v);
        ci.upper = std::max(ci.upper, v);
    }
    return ci;
}

MinkowskiReport minkowski_report(DrumPtr drum, Norm norm) {
    const DimensionInfo info = exact_dimension(*drum);
    const TubeFunction tube = make_tube(drum, norm);
    const double t0 = std::max(2.0 * drum->inner_radius, 1.0);
    const DimensionEstimate est = estimate_dimension(tube, t0, t0 * 1e5, 96);
    const ContentInterval ci = content_bounds(tube, info.dimension, t0 * 1e2, t0 * 1e7, 1024);
    MinkowskiReport rep;
    rep.dimension = info.dimension;
    rep.dimension_estimate = est.d_hat;
    rep.half_width = est.half_width;
    rep.lower_content = ci.lower;
    rep.upper_content = ci.upper;
    rep.measurable = info.measurable;
    return rep;
}

}  // namespace fzeta
