#include "fzeta/constructions.hpp"

#include <algorithm>
#include <cmath>

#include "fzeta/tube.hpp"

namespace fzeta {

namespace {

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59};
constexpr int kMaxOrder = 16;

struct Component {
    double a, b;
};

// b_i = log_{1/a_i} 2 - D - 1 pins every component to the same dimension D.
double b_for(double a, double D) { return std::log(2.0) / std::log(1.0 / a) - D - 1.0; }

BuiltDrum assemble(const std::vector<Component>& comps, double D, PeriodClass cls,
                   bool infinite_family, bool allow_sup_profile_only) {
    if (!(D < -2.0)) throw ConfigError("construction requires D < -2");
    const bool proper = (D > -3.0);
    if (!proper && !allow_sup_profile_only)
        throw ConfigError(
            "construction: D outside (-3, -2) only yields the sup-norm profile; "
            "pass the explicit flag to accept that");
    std::vector<DrumPtr> members;
    QuasiperiodicReport rep;
    rep.order = static_cast<int>(comps.size());
    rep.infinite_family = infinite_family;
    rep.target_dimension = D;
    rep.classification = cls;
    rep.sup_norm_profile_only = !proper;
    double offset = 0.0;  // l_i: total height of the previous components
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const double scale = std::pow(2.0, -static_cast<double>(i + 1));
        DrumPtr base = make_cantor_infinity(comps[i].a, comps[i].b);
        DrumPtr member = make_translated(make_scaled(base, scale), {0.0, offset});
        offset += scale * base->strip_height;
        members.push_back(std::move(member));
        rep.parameters.emplace_back(comps[i].a, comps[i].b);
        const double T = std::log(1.0 / comps[i].a);
        rep.quasiperiods.push_back(T);
        rep.oscillatory_periods.push_back(kTwoPi / T);
    }
    BuiltDrum out;
    out.drum = make_disjoint_union(std::move(members));
    rep.probe_max_coef = 10;
    rep.probe_tol = 1e-9;
    rep.independence_pass = independence_probe(rep.quasiperiods, rep.probe_max_coef,
                                               rep.probe_tol)
                                .pass;
    out.report = rep;
    return out;
}

}  // namespace

BuiltDrum build_algebraic_qp(int n, double D, double a1, bool allow_sup_profile_only,
                             bool as_infinite_truncation) {
    if (n < 2 || n > kMaxOrder) throw ConfigError("order must be between 2 and 16");
    if (!(a1 > 0 && a1 < 0.5)) throw ConfigError("a1 must lie in (0, 1/2)");
    std::vector<Component> comps;
    comps.push_back({a1, b_for(a1, D)});
    for (int i = 1; i < n; ++i) {
        const double a = std::pow(a1, std::sqrt(static_cast<double>(kPrimes[i - 1])));
        comps.push_back({a, b_for(a, D)});
    }
    return assemble(comps, D, PeriodClass::Algebraic, as_infinite_truncation,
                    allow_sup_profile_only);
}

BuiltDrum build_transcendental_qp(int n, double D, bool allow_sup_profile_only,
                                  bool as_infinite_truncation) {
    if (n < 2 || n > kMaxOrder) throw ConfigError("order must be between 2 and 16");
    std::vector<Component> comps;
    for (int i = 0; i < n; ++i) {
        const double a = 1.0 / kPrimes[i + 1];  // 1/3, 1/5, 1/7, ...
        comps.push_back({a, b_for(a, D)});
    }
    return assemble(comps, D, PeriodClass::Transcendental, as_infinite_truncation,
                     allow_sup_profile_only);
}

BuiltHyperfractal build_hyperfractal(double D, int n_levels, std::vector<double> a_seq,
                                     double ordinate_cap) {
    if (!(D < -2.0)) throw ConfigError("construction requires D < -2");
    if (n_levels < 1 || n_levels > kMaxOrder) throw ConfigError("levels must be between 1 and 16");
    if (a_seq.empty()) {
        for (int k = 1; k <= n_levels; ++k) a_seq.push_back(1.0 / (k + 2.0));
    }
    if (static_cast<int>(a_seq.size()) != n_levels)
        throw ConfigError("a-sequence length must match the level count");
    for (std::size_t k = 0; k < a_seq.size(); ++k) {
        if (!(a_seq[k] > 0 && a_seq[k] < 0.5)) throw ConfigError("a_k must lie in (0, 1/2)");
        if (k > 0 && a_seq[k] > a_seq[k - 1]) throw ConfigError("a-sequence must be nonincreasing");
    }
    std::vector<DrumPtr> members;
    BuiltHyperfractal out;
    out.report.target_dimension = D;
    out.report.n_levels = n_levels;
    out.report.ordinate_cap = ordinate_cap;
    double offset = 0.0;
    std::vector<double> ordinates;
    for (int k = 0; k < n_levels; ++k) {
        const double a = a_seq[k];
        const double b = b_for(a, D);
        const double scale = std::pow(2.0, -static_cast<double>(k + 1));
        DrumPtr base = make_cantor_infinity(a, b);
        members.push_back(make_translated(make_scaled(base, scale), {0.0, offset}));
        offset += scale * base->strip_height;
        out.report.parameters.emplace_back(a, b);
        const double p = kTwoPi / std::log(1.0 / a);
        out.report.oscillatory_periods.push_back(p);
        for (double y = 0.0; y <= ordinate_cap; y += p) {
            ordinates.push_back(y);
            if (y > 0.0) ordinates.push_back(-y);
        }
    }
    std::sort(ordinates.begin(), ordinates.end());
    ordinates.erase(std::unique(ordinates.begin(), ordinates.end(),
                                [](double x, double y) { return std::abs(x - y) < 1e-9; }),
                    ordinates.end());
    out.report.pole_ordinates = ordinates;
    double gap = out.report.oscillatory_periods.front();
    for (std::size_t i = 1; i < ordinates.size(); ++i)
        gap = std::min(gap, ordinates[i] - ordinates[i - 1]);
    out.report.min_gap = gap;
    out.drum = make_disjoint_union(std::move(members));
    return out;
}

double composite_tube(const DrumSpec& union_drum, double t) {
    if (!std::holds_alternative<DisjointUnion>(union_drum.family))
        throw ConfigError("composite tube expects a union drum");
    return sup_tube(union_drum, t);
}

ContentInterval composite_normalized_bounds(const QuasiperiodicReport& report) {
    if (report.parameters.empty()) throw ConfigError("empty construction report");
    const double D = report.target_dimension;
    ContentInterval ci{0.0, 0.0};
    for (std::size_t i = 0; i < report.parameters.size(); ++i) {
        const auto [a, b] = report.parameters[i];
        const PeriodicProfile prof = periodic_profile(a, b);
        const double w = std::pow(2.0, (static_cast<double>(i) + 1.0) * D);
        if (i == 0) ci.lower = w * prof.min_value;
        ci.upper += w * prof.max_value;
    }
    return ci;
}

IndependenceProbe independence_probe(const std::vector<double>& periods, int max_coef,
                                     double tol) {
    const int n = static_cast<int>(periods.size());
    if (n < 1 || n > 5) throw ConfigError("independence probe: 1 to 5 periods supported");
    if (max_coef < 1 || max_coef > 12) throw ConfigError("independence probe: max_coef in [1, 12]");
    IndependenceProbe out;
    out.max_coef = max_coef;
    out.tol = tol;
    std::vector<long long> lam(n, -max_coef);
    const long long base = 2 * max_coef + 1;
    long long total = 1;
    for (int i = 0; i < n; ++i) total *= base;
    for (long long idx = 0; idx < total; ++idx) {
        long long v = idx;
        bool all_zero = true;
        double dot = 0.0, scale = 0.0;
        for (int i = 0; i < n; ++i) {
            lam[i] = v % base - max_coef;
            v /= base;
            if (lam[i] != 0) all_zero = false;
            dot += static_cast<double>(lam[i]) * periods[i];
            scale += std::abs(static_cast<double>(lam[i]) * periods[i]);
        }
        if (all_zero) continue;
        if (std::abs(dot) <= tol * scale) {
            out.pass = false;
            out.witness = lam;
            return out;
        }
    }
    out.pass = true;
    return out;
}

}  // namespace fzeta
