#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fzeta/constructions.hpp"
#include "fzeta/zeta.hpp"
#include "oracles.hpp"

using namespace fzeta;

TEST_CASE("algebraic recipe: parameters and quasiperiod ratios") {
    const BuiltDrum built = build_algebraic_qp(2, -2.5, 0.25);
    const auto& rep = built.report;
    REQUIRE(rep.parameters.size() == 2);
    // b_1 = log_4 2 - D - 1 = 0.5 + 2.5 - 1 = 2
    CHECK(rep.parameters[0].second == doctest::Approx(2.0).epsilon(1e-14));
    // a_2 = (1/4)^{sqrt 2}
    CHECK(rep.parameters[1].first ==
          doctest::Approx(std::pow(0.25, std::sqrt(2.0))).epsilon(1e-14));
    CHECK(rep.quasiperiods[1] / rep.quasiperiods[0] ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(rep.classification == PeriodClass::Algebraic);
    CHECK(rep.independence_pass);
    CHECK_FALSE(rep.sup_norm_profile_only);

    const BuiltDrum b3 = build_algebraic_qp(3, -2.5, 0.25);
    CHECK(b3.report.quasiperiods[1] / b3.report.quasiperiods[0] ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(b3.report.quasiperiods[2] / b3.report.quasiperiods[0] ==
          doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    // quasiperiods strictly increasing
    CHECK(b3.report.quasiperiods[0] < b3.report.quasiperiods[1]);
    CHECK(b3.report.quasiperiods[1] < b3.report.quasiperiods[2]);
}

TEST_CASE("transcendental recipe: prime logarithm periods") {
    const BuiltDrum built = build_transcendental_qp(2, -2.5);
    CHECK(built.report.quasiperiods[0] == doctest::Approx(std::log(3.0)).epsilon(1e-15));
    CHECK(built.report.quasiperiods[1] == doctest::Approx(std::log(5.0)).epsilon(1e-15));
    CHECK(built.report.quasiperiods[0] / built.report.quasiperiods[1] ==
          doctest::Approx(0.6826061944859854).epsilon(1e-12));
    CHECK(built.report.classification == PeriodClass::Transcendental);
    CHECK(built.report.independence_pass);

    const BuiltDrum b4 = build_transcendental_qp(4, -2.5);
    CHECK(b4.report.quasiperiods[3] == doctest::Approx(std::log(11.0)).epsilon(1e-15));
}

TEST_CASE("infinite-recipe truncation marker") {
    const BuiltDrum finite = build_transcendental_qp(3, -2.5);
    CHECK_FALSE(finite.report.infinite_family);
    const BuiltDrum trunc = build_transcendental_qp(3, -2.5, false, true);
    CHECK(trunc.report.infinite_family);
    CHECK(trunc.report.order == 3);  // truncation level
    CHECK(trunc.report.quasiperiods == finite.report.quasiperiods);
}

TEST_CASE("builder rejections") {
    CHECK_THROWS_AS(build_algebraic_qp(2, -1.5, 0.25), ConfigError);
    CHECK_THROWS_AS(build_algebraic_qp(1, -2.5, 0.25), ConfigError);
    CHECK_THROWS_AS(build_algebraic_qp(2, -2.5, 0.6), ConfigError);
    // outside (-3,-2): rejected unless the sup-profile flag is set
    CHECK_THROWS_AS(build_algebraic_qp(2, -3.5, 0.25), ConfigError);
    const BuiltDrum flagged = build_algebraic_qp(2, -3.5, 0.25, true);
    CHECK(flagged.report.sup_norm_profile_only);
}

TEST_CASE("every component shares the target dimension") {
    for (const BuiltDrum& built :
         {build_algebraic_qp(3, -2.5, 0.25), build_transcendental_qp(3, -2.5)}) {
        const auto* uni = std::get_if<DisjointUnion>(&built.drum->family);
        REQUIRE(uni != nullptr);
        for (const auto& m : uni->members) {
            CHECK(exact_dimension(*m).dimension ==
                  doctest::Approx(built.report.target_dimension).epsilon(1e-12));
        }
        CHECK(exact_dimension(*built.drum).dimension ==
              doctest::Approx(built.report.target_dimension).epsilon(1e-12));
    }
}

TEST_CASE("composite tube equals the sum of scaled component tubes") {
    const BuiltDrum built = build_algebraic_qp(2, -2.5, 0.25);
    const auto& rep = built.report;
    for (double t : {5.0, 40.0, 333.0}) {
        double expect = 0.0;
        for (std::size_t i = 0; i < rep.parameters.size(); ++i) {
            const auto [a, b] = rep.parameters[i];
            const double scale = std::pow(2.0, static_cast<double>(i) + 1.0);
            expect += std::pow(scale, -2.0) * oracle::cantor_tube_brute(a, b, scale * t);
        }
        CHECK(composite_tube(*built.drum, t) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("composite tube follows the component profile sum at large t") {
    const BuiltDrum built = build_algebraic_qp(2, -2.5, 0.25);
    const auto& rep = built.report;
    const double D = rep.target_dimension;
    for (double t : {1e4, 1e5, 3e6}) {
        double expect = 0.0;
        for (std::size_t i = 0; i < rep.parameters.size(); ++i) {
            const auto [a, b] = rep.parameters[i];
            const double n = static_cast<double>(i) + 1.0;
            expect += std::pow(2.0, n * D) *
                      oracle::cantor_G(a, b, std::fmod((std::log(t) + n * std::log(2.0)) /
                                                           std::log(1.0 / a),
                                                       1.0));
        }
        const double got = composite_tube(*built.drum, t) / std::pow(t, 2.0 + D);
        // the power-tail corrections decay like t^{-log_{1/a_1} 2}
        CHECK(got == doctest::Approx(expect).epsilon(0.02));
    }
}

TEST_CASE("normalized composite tube stays inside the computed bracket") {
    for (const BuiltDrum& built :
         {build_algebraic_qp(2, -2.5, 0.25), build_algebraic_qp(3, -2.5, 0.25),
          build_transcendental_qp(2, -2.5), build_transcendental_qp(3, -2.5)}) {
        const ContentInterval bounds = composite_normalized_bounds(built.report);
        CHECK(bounds.lower > 0.0);
        // each component maximum obeys max G = (1 + 1/(c-2))/(b-1) with
        // c = 2 a^{D+2} > 2, so M is capped by sum 2^{nD} (1 + 1/(c_n-2))/(b_n-1)
        double cap = 0.0;
        for (std::size_t i = 0; i < built.report.parameters.size(); ++i) {
            const auto [a, b] = built.report.parameters[i];
            const double c = std::pow(a, 1.0 - b);
            cap += std::pow(2.0, (static_cast<double>(i) + 1.0) * built.report.target_dimension) *
                   (1.0 + 1.0 / (c - 2.0)) / (b - 1.0);
        }
        CHECK(bounds.upper <= cap + 1e-12);
        const double D = built.report.target_dimension;
        for (int i = 0; i <= 60; ++i) {
            const double t = 1e2 * std::pow(10.0, 3.0 * i / 60.0);  // three decades
            const double norm = composite_tube(*built.drum, t) / std::pow(t, 2.0 + D);
            CHECK(norm >= bounds.lower);
            CHECK(norm <= bounds.upper);
        }
    }
}

TEST_CASE("union zeta splits into scaled component zetas") {
    const BuiltDrum built = build_algebraic_qp(2, -2.5, 0.25);
    const cplx s(-1.8, 3.0);
    const cplx whole = zeta_closed_form(*built.drum, s, 1.0);
    cplx parts = 0.0;
    for (std::size_t i = 0; i < built.report.parameters.size(); ++i) {
        const auto [a, b] = built.report.parameters[i];
        const double lam = std::pow(2.0, -(static_cast<double>(i) + 1.0));
        parts += pow_rc(lam, -s) *
                 zeta_closed_form(*make_cantor_infinity(a, b), s, 1.0 / lam);
    }
    CHECK(std::abs(whole - parts) < 1e-11 * std::abs(whole));
}

TEST_CASE("union zeta by quadrature matches the termwise scaling sum") {
    const BuiltDrum built = build_algebraic_qp(2, -2.5, 0.25);
    const cplx s(-1.7, 2.5);
    const ZetaHandle h = make_zeta(built.drum, ZetaKind::Distance, Norm::Sup, 1.0);
    const cplx quad = zeta_quadrature(h, s, 1e-9).value;
    cplx parts = 0.0;
    for (std::size_t i = 0; i < built.report.parameters.size(); ++i) {
        const auto [a, b] = built.report.parameters[i];
        const double lam = std::pow(2.0, -(static_cast<double>(i) + 1.0));
        parts += pow_rc(lam, -s) * zeta_closed_form(*make_cantor_infinity(a, b), s, 1.0 / lam);
    }
    CHECK(std::abs(quad - parts) < 1e-6 * std::abs(parts));
}

TEST_CASE("hyperfractal pole-gap densification") {
    double prev_gap = 1e300;
    std::vector<double> gaps;
    for (int levels : {1, 2, 3, 4}) {
        const BuiltHyperfractal built = build_hyperfractal(-2.5, levels);
        CHECK(built.report.min_gap <= prev_gap + 1e-12);
        prev_gap = built.report.min_gap;
        gaps.push_back(built.report.min_gap);
        // oscillatory periods decrease monotonically
        const auto& ps = built.report.oscillatory_periods;
        for (std::size_t i = 1; i < ps.size(); ++i) CHECK(ps[i] < ps[i - 1]);
    }
    // single lattice: the gap is exactly p(a_1) = 2 pi / log 3
    const BuiltHyperfractal one = build_hyperfractal(-2.5, 1);
    CHECK(one.report.min_gap == doctest::Approx(kTwoPi / std::log(3.0)).epsilon(1e-12));
    CHECK(gaps[3] <= gaps[1]);

    // custom sequence validation
    CHECK_THROWS_AS(build_hyperfractal(-2.5, 2, {0.3, 0.4}), ConfigError);
    CHECK_THROWS_AS(build_hyperfractal(-2.5, 2, {0.3}), ConfigError);
}

TEST_CASE("independence probe") {
    const double l4 = std::log(4.0);
    // algebraic triple passes at max_coef = 10
    CHECK(independence_probe({l4, std::sqrt(2.0) * l4, std::sqrt(3.0) * l4}, 10).pass);
    // exact rational relation fails with witness (-2, 1)
    const IndependenceProbe bad = independence_probe({l4, 2.0 * l4}, 10);
    CHECK_FALSE(bad.pass);
    REQUIRE(bad.witness.size() == 2);
    CHECK(bad.witness[0] * 1.0 + bad.witness[1] * 2.0 == 0);
    // prime logarithms pass
    CHECK(independence_probe({std::log(3.0), std::log(5.0)}, 10).pass);
    // guards
    CHECK_THROWS_AS(independence_probe({1.0, 2.0, 3.0, 4.0, 5.0, 6.0}, 10), ConfigError);
    CHECK_THROWS_AS(independence_probe({1.0}, 13), ConfigError);
}
