#include "fzeta/poles.hpp"

#include <algorithm>
#include <cmath>

#include "fzeta/numerics.hpp"
#include "fzeta/quadrature.hpp"

namespace fzeta {

namespace {

template <class... Ts>
struct overloaded2 : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded2(Ts...) -> overloaded2<Ts...>;

struct CantorParams {
    double a, b, scale;
};

CantorParams cantor_params(const DrumSpec& d) {
    if (const auto* c = std::get_if<CantorInfinity>(&d.family)) return {c->a, c->b, 1.0};
    if (const auto* sc = std::get_if<ScaledCopy>(&d.family)) {
        CantorParams p = cantor_params(*sc->inner);
        p.scale *= sc->lambda;
        return p;
    }
    if (const auto* tr = std::get_if<TranslatedCopy>(&d.family)) return cantor_params(*tr->inner);
    throw ConfigError("operation requires a stacked-family drum");
}

// winding number and first moment of f'/f along a rectangle, f' by Cauchy
// circles of radius min(width, height)/4 with 64 points
struct WindingResult {
    double winding;    // (1/2 pi i) \oint f'/f
    cplx moment;       // (1/2 pi i) \oint s f'/f
    bool integer_ok;   // winding within 1e-3 of an integer
};

WindingResult rect_winding(const std::function<cplx(cplx)>& f, const Window& w) {
    const cplx c1(w.re_min, w.im_min), c2(w.re_max, w.im_min), c3(w.re_max, w.im_max),
        c4(w.re_min, w.im_max);
    const cplx corners[5] = {c1, c2, c3, c4, c1};
    WindingResult last{0.0, 0.0, false};
    // start at the quarter-cell radius; shrink when a pole sits close enough
    // to the boundary to contaminate the derivative circles
    double r = 0.25 * std::min(w.re_max - w.re_min, w.im_max - w.im_min);
    for (int shrink = 0; shrink < 4; ++shrink, r *= 0.5) {
        auto logd = [&](cplx s) { return cauchy_derivative(f, s, r, 64) / f(s); };
        auto edge = [&](cplx a, cplx b, int panels, cplx& wind, cplx& mom) {
            std::vector<double> edges;
            for (int i = 0; i <= panels; ++i) edges.push_back(static_cast<double>(i) / panels);
            const cplx dir = b - a;
            wind += dir * integrate_gl_panels([&](double t) { return logd(a + t * dir); }, edges);
            mom += dir * integrate_gl_panels(
                             [&](double t) {
                                 const cplx s = a + t * dir;
                                 return s * logd(s);
                             },
                             edges);
        };
        int panels = 4;
        cplx prev_w = 0.0, prev_m = 0.0;
        for (int round = 0; round < 5; ++round) {
            cplx wind = 0.0, mom = 0.0;
            for (int e = 0; e < 4; ++e) {
                const double len = std::abs(corners[e + 1] - corners[e]);
                const int p = std::max(panels, static_cast<int>(std::ceil(len / (2.0 * r))));
                edge(corners[e], corners[e + 1], p, wind, mom);
            }
            wind /= cplx(0.0, kTwoPi);
            mom /= cplx(0.0, kTwoPi);
            if (round > 0 && std::abs(wind - prev_w) < 5e-4 && std::abs(mom - prev_m) < 1e-5) {
                const double wr = wind.real();
                const bool ok =
                    std::abs(wr - std::round(wr)) < 1e-3 && std::abs(wind.imag()) < 1e-3;
                last = {wr, mom, ok};
                if (ok) return last;
                break;  // converged to a non-integer: shrink the circles
            }
            prev_w = wind;
            prev_m = mom;
            panels *= 2;
            if (round == 4) last = {wind.real(), mom, false};
        }
    }
    return last;
}

Window perturbed(const Window& w, double fr, double fi) {
    const double dw = (w.re_max - w.re_min) * fr;
    const double dh = (w.im_max - w.im_min) * fi;
    return {w.re_min - dw, w.re_max + dw, w.im_min - dh, w.im_max + dh};
}

// ordering tolerant of last-bit noise in the real parts
bool pole_order(const ComplexDimension& x, const ComplexDimension& y) {
    if (std::abs(x.location.real() - y.location.real()) > 1e-9)
        return x.location.real() < y.location.real();
    return x.location.imag() < y.location.imag();
}

}  // namespace

double principal_pole_gap(const DrumSpec& d) {
    return std::visit(
        overloaded2{
            [&](const CantorInfinity& f) {
                const double la = std::log(1.0 / f.a);
                return std::min({1.0, kTwoPi / la, std::log(2.0) / la});
            },
            [&](const ScaledCopy& f) { return principal_pole_gap(*f.inner); },
            [&](const TranslatedCopy& f) { return principal_pole_gap(*f.inner); },
            [&](const DisjointUnion& f) {
                double m = 1.0;
                for (const auto& e : f.members) m = std::min(m, principal_pole_gap(*e));
                return m;
            },
            [&](const auto&) { return 1.0; },
        },
        d.family);
}

namespace {

// per-component lattice, residues carrying the accumulated lambda^{-omega}
// scaling factor
void collect_lattice(const DrumSpec& d, const Window& w, double scale,
                     std::vector<ComplexDimension>& out) {
    std::visit(
        overloaded2{
            [&](const CantorInfinity& f) {
                const double la = std::log(1.0 / f.a);
                const double D = std::log(2.0) / la - (f.b + 1.0);
                const double p = kTwoPi / la;
                auto scaled_residue = [&](cplx omega, cplx res) {
                    return scale == 1.0 ? res : pow_rc(scale, -omega) * res;
                };
                const double real_pole = -(f.b + 1.0);
                if (real_pole > w.re_min && real_pole < w.re_max && w.im_min < 0.0 &&
                    w.im_max > 0.0) {
                    // res of 1/((s+b+1)(a^{-(s+b+1)} - 2)) at -(b+1) is -1
                    out.push_back({cplx(real_pole, 0.0), 1,
                                   scaled_residue(cplx(real_pole, 0.0), -1.0),
                                   Provenance::LatticePredicted});
                }
                if (D > w.re_min && D < w.re_max) {
                    const int k_lo = static_cast<int>(std::ceil(w.im_min / p - 1e-12));
                    const int k_hi = static_cast<int>(std::floor(w.im_max / p + 1e-12));
                    for (int k = k_lo; k <= k_hi; ++k) {
                        const cplx sk(D, k * p);
                        // residue of the distance zeta: 1/((s_k+b+1) 2 log(1/a))
                        const cplx res = 1.0 / ((sk + (f.b + 1.0)) * (2.0 * la));
                        out.push_back({sk, 1, scaled_residue(sk, res),
                                       Provenance::LatticePredicted});
                    }
                }
            },
            [&](const ScaledCopy& f) { collect_lattice(*f.inner, w, scale * f.lambda, out); },
            [&](const TranslatedCopy& f) { collect_lattice(*f.inner, w, scale, out); },
            [&](const DisjointUnion& f) {
                for (const auto& m : f.members) collect_lattice(*m, w, scale, out);
            },
            [&](const auto&) -> void {
                throw ConfigError("pole lattice requires stacked-family components");
            },
        },
        d.family);
}

}  // namespace

std::vector<ComplexDimension> pole_lattice(const DrumSpec& cantor, const Window& w) {
    if (!(w.re_min < w.re_max && w.im_min < w.im_max))
        throw ConfigError("pole lattice: degenerate window");
    std::vector<ComplexDimension> out;
    collect_lattice(cantor, w, 1.0, out);
    std::sort(out.begin(), out.end(), pole_order);
    // shared locations across components merge into one pole, residues added
    std::vector<ComplexDimension> merged;
    for (const auto& p : out) {
        if (!merged.empty() && std::abs(p.location - merged.back().location) < 1e-9)
            merged.back().residue += p.residue;
        else
            merged.push_back(p);
    }
    return merged;
}

cplx residue_contour(const std::function<cplx(cplx)>& f, cplx center, double radius, double tol) {
    if (!(radius > 0)) throw ConfigError("residue_contour: radius must be positive");
    return circle_mean(f, center, radius, tol);
}

double residue_from_right(const std::function<double(double)>& f, double D, double delta,
                          double tol) {
    auto g = [&](double h) { return h * f(D + h); };
    return richardson_limit(g, delta, tol);
}

std::vector<ComplexDimension> locate_poles(const std::function<cplx(cplx)>& f, const Window& w) {
    if (!(w.re_min < w.re_max && w.im_min < w.im_max))
        throw ConfigError("locate_poles: degenerate window");
    std::vector<ComplexDimension> found;
    std::vector<Window> stack{w};
    int steps = 0;
    while (!stack.empty()) {
        if (++steps > 4000) throw NumericError("locate_poles: subdivision budget exhausted");
        Window cell = stack.back();
        stack.pop_back();
        WindingResult wr = rect_winding(f, cell);
        if (!wr.integer_ok) {
            // boundary pole or zero: perturb the boundary by 1e-2 of the size
            bool fixed = false;
            for (double fr : {1e-2, -1e-2, 2.3e-2}) {
                const Window cw = perturbed(cell, fr, fr * 1.7);
                wr = rect_winding(f, cw);
                if (wr.integer_ok) {
                    cell = cw;
                    fixed = true;
                    break;
                }
            }
            if (!fixed)
                throw NumericError("locate_poles: winding integral not near an integer "
                                   "(pole or zero pinned to a cell boundary)");
        }
        const int n = static_cast<int>(std::round(wr.winding));
        const double width = cell.re_max - cell.re_min;
        const double height = cell.im_max - cell.im_min;
        const double diam = std::hypot(width, height);
        if (n == 0) {
            // a cancelling pole-zero pair leaves winding 0 but a nonzero
            // first moment; such cells still need splitting
            const double scale = std::max({1.0, std::abs(cell.re_max), std::abs(cell.im_max)});
            if (std::abs(wr.moment) < 1e-4 * scale || diam < 2e-3) continue;
        }
        if (n == -1 && diam < 0.6) {
            // single pole: first-moment centroid, polished on a small circle
            const cplx omega = -wr.moment;
            double rr = std::max(std::min({0.35 * width, 0.35 * height, 0.2}), 1e-3);
            cplx polished = omega, res = 0.0;
            for (int attempt = 0; attempt < 4; ++attempt) {
                const cplx denom = residue_contour(f, omega, rr, 1e-11);
                const cplx num =
                    residue_contour([&](cplx s) { return s * f(s); }, omega, rr, 1e-11);
                polished = num / denom;
                res = residue_contour(f, polished, rr, 1e-11);
                const cplx res_half = residue_contour(f, polished, 0.5 * rr, 1e-11);
                if (std::abs(res - res_half) < 1e-9 * std::max(1.0, std::abs(res))) break;
                rr *= 0.5;  // contaminated contour: shrink
            }
            found.push_back({polished, 1, res, Provenance::ArgumentPrinciple});
            continue;
        }
        if (n == 1 && diam < 0.6) continue;  // an isolated zero: discard
        // subdivide the longer side; avoid splitting straight through a
        // lattice by trying a few ratios when a child reports non-integer
        const bool split_re = width >= height;
        const double ratios[] = {0.5, 0.375, 0.64, 0.29, 0.71};
        bool done = false;
        for (double rho : ratios) {
            const double cut = split_re ? cell.re_min + rho * width : cell.im_min + rho * height;
            Window a = cell, b = cell;
            if (split_re) {
                a.re_max = cut;
                b.re_min = cut;
            } else {
                a.im_max = cut;
                b.im_min = cut;
            }
            const WindingResult wa = rect_winding(f, a);
            if (!wa.integer_ok) continue;
            stack.push_back(a);
            stack.push_back(b);
            done = true;
            break;
        }
        if (!done) throw NumericError("locate_poles: could not split a cell cleanly");
    }
    std::sort(found.begin(), found.end(), pole_order);
    return found;
}

ResidueContentReport residue_content_check(DrumPtr drum) {
    const DimensionInfo info = exact_dimension(*drum);
    const double D = info.dimension;
    const int N = drum->ambient_dim;
    double tube_res, dist_res;
    if (has_closed_form(*drum)) {
        const double gap = 0.45 * principal_pole_gap(*drum);
        auto fd = [&](cplx s) { return zeta_closed_form(*drum, s, 0, ZetaKind::Distance); };
        auto ft = [&](cplx s) { return zeta_closed_form(*drum, s, 0, ZetaKind::Tube); };
        dist_res = residue_contour(fd, cplx(D, 0.0), gap).real();
        tube_res = residue_contour(ft, cplx(D, 0.0), gap).real();
    } else {
        // real-axis extraction (interval family route)
        const double T = drum->inner_radius;
        auto fd = [&](double s) {
            return interval_distance_zeta(
                       std::get<IntervalFamily>(drum->family).alpha,
                       std::get<IntervalFamily>(drum->family).beta, cplx(s, 0.0), T)
                .real();
        };
        const double tubeT = sup_tube(*drum, T);
        auto ft = [&](double s) {
            return (std::pow(T, -s - N) * tubeT - fd(s)) / (s + N);
        };
        dist_res = residue_from_right(fd, D, 0.5, 1e-9);
        tube_res = residue_from_right(ft, D, 0.5, 1e-9);
    }
    ResidueContentReport rep;
    rep.dimension = D;
    rep.tube_residue = tube_res;
    rep.distance_residue = dist_res;
    rep.lower_content = info.content.lower;
    rep.upper_content = info.content.upper;
    rep.measurable = info.measurable;
    const double slack = 1e-9 * std::max(1.0, std::abs(tube_res));
    if (info.measurable) {
        rep.sandwich_ok = std::abs(tube_res - info.content.lower) <
                          1e-6 * std::max(1.0, std::abs(tube_res));
    } else {
        rep.sandwich_ok =
            tube_res > info.content.lower + slack && tube_res < info.content.upper - slack;
    }
    rep.ratio_ok = std::abs(dist_res - (-(N + D)) * tube_res) <
                   1e-8 * std::max(1.0, std::abs(dist_res));
    return rep;
}

FourierResidueReport fourier_residue_link(DrumPtr cantor, int k_max) {
    const CantorParams cp = cantor_params(*cantor);
    if (cp.scale != 1.0) throw ConfigError("fourier link: base stacked drum expected");
    const PeriodicProfile prof = periodic_profile(cp.a, cp.b);
    const double T = prof.period;
    const double D = drum_abscissa(*cantor);
    const double p = kTwoPi / T;
    const double gap = 0.45 * std::min(p, std::log(2.0) / std::log(1.0 / cp.a));
    auto ft = [&](cplx s) { return zeta_closed_form(*cantor, s, 0, ZetaKind::Tube); };
    // panels refined enough to resolve e^{-2 pi i k tau / T} for the largest k
    auto fourier = [&](int k) {
        const int panels = std::max(48, 12 * std::abs(k));
        std::vector<double> edges;
        for (int i = 0; i <= panels; ++i) edges.push_back(T * i / panels);
        const cplx I = integrate_gl_panels(
            [&](double tau) {
                return std::exp(cplx(0.0, -kTwoPi * k * tau / T)) * prof.sampler(tau);
            },
            edges);
        return I / T;
    };
    FourierResidueReport rep;
    rep.max_mismatch = 0.0;
    rep.bound_ok = true;
    const double mean = fourier(0).real();
    rep.mean_value = mean;
    double max14 = 0.0, max816 = 0.0;
    for (int k = -k_max; k <= k_max; ++k) {
        FourierResidueLink link;
        link.k = k;
        link.fourier_value = fourier(k);
        link.contour_residue = residue_contour(ft, cplx(D, k * p), gap, 1e-11);
        link.mismatch = std::abs(link.fourier_value - link.contour_residue);
        rep.max_mismatch = std::max(rep.max_mismatch, link.mismatch);
        if (std::abs(link.contour_residue) > mean * (1.0 + 1e-9)) rep.bound_ok = false;
        const int ak = std::abs(k);
        if (ak >= 1 && ak <= 4) max14 = std::max(max14, std::abs(link.contour_residue));
        if (ak >= 8 && ak <= 16) max816 = std::max(max816, std::abs(link.contour_residue));
        rep.links.push_back(link);
    }
    rep.envelope_decreasing = (k_max < 16) || (max816 < max14);
    return rep;
}

ContentBoundReport content_upper_bound_check(DrumPtr cantor) {
    const CantorParams cp = cantor_params(*cantor);
    if (cp.scale != 1.0) throw ConfigError("content bound: base stacked drum expected");
    const DimensionInfo info = exact_dimension(*cantor);
    const double D = info.dimension;
    const int N = cantor->ambient_dim;
    const double lambda = kTwoPi / std::log(1.0 / cp.a);  // principal pole spacing
    const double gap = 0.45 * std::min(lambda, std::log(2.0) / std::log(1.0 / cp.a));
    auto ft = [&](cplx s) { return zeta_closed_form(*cantor, s, 0, ZetaKind::Tube); };
    const double res = residue_contour(ft, cplx(D, 0.0), gap).real();
    const double C = 3.0;
    ContentBoundReport rep;
    rep.upper_content = info.content.upper;
    rep.tube_residue = res;
    rep.lambda_gap = lambda;
    rep.bound = (-(N + D)) * C * lambda / (kTwoPi * (1.0 - std::exp(kTwoPi * (N + D) / lambda))) *
                res;
    const double x = -kTwoPi * (N + D) / lambda;
    rep.bound_tauber = C * res * x / (1.0 - std::exp(-x));
    rep.ok = rep.upper_content <= rep.bound;
    return rep;
}

InvertedContentReport inverted_content_relation(DrumPtr drum) {
    const DimensionInfo info = exact_dimension(*drum);
    if (!info.measurable) throw ConfigError("inverted content: measurable drum expected");
    const double D = info.dimension;
    const int N = drum->ambient_dim;
    const double M = info.content.lower;
    const Norm norm = (N == 1) ? Norm::Sup : Norm::Euclidean;
    std::vector<double> le, lv;
    const int n = 16;
    for (int i = 0; i < n; ++i) {
        const double eps = 1e-1 * std::pow(1e-2, static_cast<double>(i) / (n - 1));
        const double v = inverted_near_ball_volume(drum, eps / drum->inner_radius, norm);
        le.push_back(std::log(eps / drum->inner_radius));
        lv.push_back(std::log(v));
    }
    const LineFit fit = fit_line(le, lv);
    // estimate of the relative content at the origin from the smallest radii
    double est = 0.0;
    for (int i = n - 4; i < n; ++i) est += std::exp(lv[i] - (N - D) * le[i]);
    est /= 4.0;
    InvertedContentReport rep;
    rep.predicted = -(N + D) / (N - D) * M;
    rep.estimate = est;
    rep.slope = fit.slope;
    rep.slope_expected = N - D;
    rep.rel_error = std::abs(rep.estimate - rep.predicted) / std::abs(rep.predicted);
    rep.ok = rep.rel_error < 0.10 && std::abs(rep.slope - rep.slope_expected) < 0.1;
    return rep;
}

}  // namespace fzeta
