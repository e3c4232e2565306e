// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Every tolerance is pinned in code.
#include <cstdarg>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "fzeta/constructions.hpp"
#include "fzeta/numerics.hpp"
#include "fzeta/poles.hpp"
#include "oracles.hpp"

using namespace fzeta;

namespace {

int failures = 0;

void report(const char* name, bool pass, const std::string& detail) {
    std::printf("%s %s: %s\n", pass ? "PASS" : "FAIL", name, detail.c_str());
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, ...) {
    char buf[256];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return buf;
}

const DrumPtr kCantor = make_cantor_infinity(0.25, 2.0);
const DrumPtr kPower = make_power_tail(2.0);
const DrumPtr kInterval = make_interval_family(1.0, 2.0);

std::vector<cplx> grid25(double D) {
    std::vector<cplx> g;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            g.emplace_back(D + 0.5 + 3.5 * i / 4.0, -10.0 + 20.0 * j / 4.0);
    return g;
}

void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (const DrumPtr& d : {kPower, kCantor}) {
        const ZetaHandle h = make_zeta(d, ZetaKind::Distance, Norm::Sup);
        for (cplx s : grid25(drum_abscissa(*d))) {
            const cplx closed = zeta_closed_form(*d, s);
            const cplx quad = zeta_quadrature(h, s, 1e-8).value;
            worst = std::max(worst, std::abs(quad - closed) / std::abs(closed));
        }
    }
    const double dt = seconds_since(t0);
    report("criterion-01 closed-form-vs-quadrature", worst <= 1e-6 && dt <= 10.0,
           fmt("max rel err %.3e (tol 1e-6), runtime %.2f s (cap 10 s)", worst, dt));
}

void criterion_2() {
    double worst = 0.0;
    for (const DrumPtr& d : {kPower, kCantor}) {
        for (cplx s : grid25(drum_abscissa(*d)))
            worst = std::max(worst,
                             functional_equation_residual(d, s, 0, Norm::Sup, 1e-8).rel_residual);
    }
    double sym = 0.0;
    for (cplx s : grid25(-3.0)) {
        const cplx v = 1.0 - (s + 2.0) / (s + 3.0) - 1.0 / (s + 3.0);
        sym = std::max(sym, std::abs(v));
    }
    report("criterion-02 functional-equation", worst <= 1e-6 && sym <= 1e-10,
           fmt("max rel residual %.3e (tol 1e-6), symbolic check %.3e (tol 1e-10)", worst, sym));
}

void criterion_3() {
    bool pass = true;
    std::string detail;
    struct Case {
        DrumPtr drum;
        double t_min, t_max, expect;
        const char* name;
    };
    const Case cases[] = {
        {kInterval, 1e3, 1e6, -2.0, "interval"},
        {kPower, 1e2, 1e6, -3.0, "power-tail"},
        {kCantor, 4.0, std::pow(4.0, 12.0), -2.5, "stacked"},
    };
    for (const Case& c : cases) {
        const auto t0 = std::chrono::steady_clock::now();
        const DimensionEstimate est =
            estimate_dimension(make_tube(c.drum), c.t_min, c.t_max, 96);
        const double dt = seconds_since(t0);
        const bool ok = std::abs(est.d_hat - c.expect) <= 0.05 && dt <= 5.0;
        pass = pass && ok;
        detail += fmt("%s D=%.4f (err %.4f, %.2f s) ", c.name, est.d_hat,
                      std::abs(est.d_hat - c.expect), dt);
    }
    report("criterion-03 dimension-recovery", pass, detail + "(tol 0.05, cap 5 s each)");
}

void criterion_4() {
    const ResidueContentReport rp = residue_content_check(kPower);
    const bool p_ok = std::abs(rp.tube_residue - 1.0) <= 1e-6;
    const ResidueContentReport rc = residue_content_check(kCantor);
    const double expect = 2.0 / std::log(4.0);
    const bool c_res = std::abs(rc.tube_residue - expect) <= 1e-8;
    const bool c_inside = rc.tube_residue >= std::sqrt(2.0) + 1e-2 &&
                          rc.tube_residue <= 1.5 - 1e-2;
    const ContentInterval ci =
        content_bounds(make_tube(kCantor), -2.5, std::pow(4.0, 12.0), std::pow(4.0, 15.0));
    const bool c_bounds = std::abs(ci.lower - std::sqrt(2.0)) <= 1e-3 &&
                          std::abs(ci.upper - 1.5) <= 1e-3;
    report("criterion-04 content-identities", p_ok && c_res && c_inside && c_bounds,
           fmt("power res %.8f (=1 tol 1e-6); stacked res %.8f (=1.442695, margins %.3f/%.3f >= "
               "1e-2); sampled bounds [%.6f, %.6f]",
               rp.tube_residue, rc.tube_residue, rc.tube_residue - std::sqrt(2.0),
               1.5 - rc.tube_residue, ci.lower, ci.upper));
}

void criterion_5() {
    const FourierResidueReport rep = fourier_residue_link(kCantor, 16);
    double worst8 = 0.0;
    for (const auto& link : rep.links)
        if (std::abs(link.k) <= 8) worst8 = std::max(worst8, link.mismatch);
    const bool k0 = std::abs(rep.mean_value - 2.0 / std::log(4.0)) <= 1e-8;
    report("criterion-05 fourier-residue-law",
           worst8 <= 1e-8 && k0 && rep.envelope_decreasing && rep.bound_ok,
           fmt("max mismatch |k|<=8: %.3e (tol 1e-8); k=0 %.12f; envelope %s", worst8,
               rep.mean_value, rep.envelope_decreasing ? "decreasing" : "NOT decreasing"));
}

void criterion_6() {
    const auto t0 = std::chrono::steady_clock::now();
    const Window w{-3.5, -2.0, -10.0, 10.0};
    auto f = [&](cplx s) { return zeta_closed_form(*kCantor, s); };
    const auto found = locate_poles(f, w);
    const auto predicted = pole_lattice(*kCantor, w);
    const double dt = seconds_since(t0);
    bool ok = found.size() == predicted.size() && found.size() == 6;
    double worst_loc = 0.0, worst_res = 0.0;
    if (ok) {
        for (std::size_t i = 0; i < found.size(); ++i) {
            worst_loc = std::max(worst_loc, std::abs(found[i].location - predicted[i].location));
            worst_res = std::max(worst_res, std::abs(found[i].residue - predicted[i].residue));
            ok = ok && found[i].order == 1;
        }
        ok = ok && worst_loc <= 1e-8 && worst_res <= 1e-8;
    }
    ok = ok && dt <= 30.0;
    report("criterion-06 pole-lattice-search", ok,
           fmt("%zu poles (expect 6), loc err %.2e, res err %.2e (tol 1e-8), %.1f s (cap 30 s)",
               found.size(), worst_loc, worst_res, dt));
}

void criterion_7() {
    std::mt19937 rng(424242);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double worst_s = 0.0, worst_i = 0.0;
    for (const DrumPtr& d : {kPower, kCantor, kInterval}) {
        const double D = drum_abscissa(*d);
        for (int i = 0; i < 20; ++i) {
            const double lambda = 0.25 + 3.75 * U(rng);
            const cplx s(D + 0.5 + 3.0 * U(rng), -8.0 + 16.0 * U(rng));
            const double T = d->inner_radius * (1.0 + U(rng));
            worst_s = std::max(
                worst_s,
                scaling_identity_residual(d, lambda, s, T, Norm::Sup, 1e-8).rel_residual);
            worst_i = std::max(
                worst_i, inversion_identity_residual(d, s, T, Norm::Sup, 1e-8).rel_residual);
        }
    }
    report("criterion-07 scaling-and-inversion", worst_s <= 1e-6 && worst_i <= 1e-6,
           fmt("20 draws x 3 families: scaling %.3e, inversion %.3e (tol 1e-6)", worst_s,
               worst_i));
}

void criterion_8() {
    const InvertedContentReport rep = inverted_content_relation(kPower);
    const bool ok = rep.rel_error <= 0.10 && std::abs(rep.slope - 5.0) <= 0.1;
    report("criterion-08 inverted-content", ok,
           fmt("estimate %.6f vs 0.2 (rel err %.3f, tol 0.10); slope %.4f (expect 5 +- 0.1)",
               rep.estimate, rep.rel_error, rep.slope));
}

void criterion_9() {
    const ContentBoundReport a = content_upper_bound_check(kCantor);
    const ContentBoundReport b = content_upper_bound_check(make_cantor_infinity(1.0 / 3.0, 2.5));
    report("criterion-09 upper-content-bound-C3", a.ok && b.ok,
           fmt("(1/4,2): 1.5 <= %.4f; (1/3,2.5): %.4f <= %.4f", a.bound, b.upper_content,
               b.bound));
}

void criterion_10() {
    bool pass = true;
    std::string detail;
    // built drums at n = 2 and n = 3
    for (int n : {2, 3}) {
        const BuiltDrum built = build_algebraic_qp(n, -2.5, 0.25);
        const auto* uni = std::get_if<DisjointUnion>(&built.drum->family);
        bool dims = uni != nullptr;
        if (uni)
            for (const auto& m : uni->members)
                dims = dims && std::abs(exact_dimension(*m).dimension + 2.5) < 1e-12;
        const ContentInterval bounds = composite_normalized_bounds(built.report);
        bool inside = true;
        for (int i = 0; i <= 90; ++i) {
            const double t = 1e2 * std::pow(10.0, 3.0 * i / 90.0);
            const double norm = composite_tube(*built.drum, t) / std::pow(t, 2.0 - 2.5);
            inside = inside && norm >= bounds.lower && norm <= bounds.upper;
        }
        bool ratios = true;
        for (int i = 1; i < n; ++i) {
            const double expect = std::sqrt(static_cast<double>(i == 1 ? 2 : 3));
            ratios = ratios && std::abs(built.report.quasiperiods[i] /
                                            built.report.quasiperiods[0] -
                                        expect) <= 1e-12;
        }
        const bool probe =
            independence_probe(built.report.quasiperiods, 10, 1e-9).pass;
        pass = pass && dims && inside && ratios && probe;
        detail += fmt("n=%d[dims %d bracket %d ratios %d probe %d] ", n, dims, inside, ratios,
                      probe);
    }
    // hyperfractal gap monotonicity over 1..4 levels
    double prev = 1e300;
    bool mono = true;
    double g1 = 0, g4 = 0;
    for (int levels = 1; levels <= 4; ++levels) {
        const double gap = build_hyperfractal(-2.5, levels).report.min_gap;
        if (levels == 1) g1 = gap;
        if (levels == 4) g4 = gap;
        mono = mono && gap <= prev + 1e-12;
        prev = gap;
    }
    pass = pass && mono && g4 <= g1;
    report("criterion-10 constructions", pass,
           detail + fmt("hyperfractal gaps %.4f -> %.4f %s", g1, g4,
                        mono ? "nonincreasing" : "NOT monotone"));
}

void criterion_11() {
    bool pass = true;
    std::string detail;
    for (const DrumPtr& d : {kPower, kCantor}) {
        std::vector<double> lx, ly;
        for (int i = 0; i < 25; ++i) {
            const double t = 1e2 * std::pow(10.0, 3.0 * i / 24.0);
            const double gap = tube_norm_gap(*d, t);
            if (gap > 0) {
                lx.push_back(std::log(t));
                ly.push_back(std::log(gap));
            }
        }
        const LineFit fit = fit_line(lx, ly);
        pass = pass && fit.slope <= -0.9;
        detail += fmt("slope %.3f ", fit.slope);
    }
    report("criterion-11 norm-comparison-decay", pass, detail + "(cap -0.9)");
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    const double total = seconds_since(t0);
    const bool in_budget = total <= 300.0;
    std::printf("%s total-runtime: %.1f s (cap 300 s)\n", in_budget ? "PASS" : "FAIL", total);
    if (!in_budget) ++failures;
    std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
