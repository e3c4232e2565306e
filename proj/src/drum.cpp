#include "fzeta/drum.hpp"

#include <algorithm>
#include <cmath>

#include "fzeta/numerics.hpp"

namespace fzeta {

namespace {

double riemann_zeta_real(double p) { return riemann_zeta(cplx(p, 0.0)).real(); }

// Intervals (j^alpha, j^alpha + j^-beta) must be pairwise disjoint for the
// closed-form volume and tube series to be exact.  Always true for
// alpha >= 1; for alpha < 1 scan the finitely many candidates.
void check_interval_disjointness(double alpha, double beta) {
    if (alpha >= 1.0) return;
    for (long long j = 1; j < 1000000; ++j) {
        const double jd = static_cast<double>(j);
        const double gap = std::pow(jd + 1.0, alpha) - std::pow(jd, alpha);
        if (std::pow(jd, -beta) > gap)
            throw ConfigError("interval family: intervals overlap at j=" + std::to_string(j));
        // sufficient once alpha*(j+1)^{alpha-1} dominates j^{-beta}
        if (alpha * std::pow(jd + 1.0, alpha - 1.0) >= std::pow(jd, -beta)) return;
    }
    throw ConfigError("interval family: could not certify disjointness");
}

}  // namespace

double cantor_strip_height(double a, double b) {
    const double ab = std::pow(a, b);
    return ab / (1.0 - 2.0 * ab);
}

double cantor_level_tail_volume(double a, double b, int beyond_level) {
    // Sum_{m > M} 2^{m-1} a^{m(b-1)} / (b-1), geometric with ratio 2 a^{b-1} < 1.
    const double q = 2.0 * std::pow(a, b - 1.0);
    const double first = 0.5 * std::pow(q, beyond_level + 1.0);
    return first / ((1.0 - q) * (b - 1.0));
}

int cantor_level_cutoff(double a, double b, double tol) {
    int m = 1;
    while (cantor_level_tail_volume(a, b, m) > tol && m < 4000) ++m;
    return m;
}

DrumPtr make_interval_family(double alpha, double beta) {
    if (!(alpha > 0)) throw ConfigError("interval family requires alpha > 0");
    if (!(beta > 1)) throw ConfigError("interval family requires beta > 1");
    check_interval_disjointness(alpha, beta);
    auto d = std::make_shared<DrumSpec>();
    d->ambient_dim = 1;
    d->family = IntervalFamily{alpha, beta};
    d->volume = riemann_zeta_real(beta);
    d->inner_radius = 1.0;
    d->strip_height = 0.0;
    return d;
}

DrumPtr make_power_tail(double alpha) {
    if (!(alpha > 1)) throw ConfigError("power tail requires alpha > 1");
    auto d = std::make_shared<DrumSpec>();
    d->ambient_dim = 2;
    d->family = PowerTail{alpha};
    d->volume = 1.0 / (alpha - 1.0);
    d->inner_radius = 1.0;
    d->strip_height = 1.0;
    return d;
}

DrumPtr make_cantor_infinity(double a, double b) {
    if (!(a > 0 && a < 0.5)) throw ConfigError("stacked family requires a in (0, 1/2)");
    const double b_min = 1.0 + std::log(2.0) / std::log(1.0 / a);
    if (!(b > b_min))
        throw ConfigError("stacked family requires b > 1 + log_{1/a} 2 (finite volume)");
    auto d = std::make_shared<DrumSpec>();
    d->ambient_dim = 2;
    d->family = CantorInfinity{a, b};
    const double q = std::pow(a, b - 1.0);
    d->volume = q / ((b - 1.0) * (1.0 - 2.0 * q));
    d->inner_radius = 1.0 / a;
    d->strip_height = cantor_strip_height(a, b);
    return d;
}

DrumPtr make_scaled(DrumPtr inner, double lambda) {
    if (!inner) throw ConfigError("scaled copy requires an inner drum");
    if (!(lambda > 0)) throw ConfigError("scaled copy requires lambda > 0");
    auto d = std::make_shared<DrumSpec>();
    d->ambient_dim = inner->ambient_dim;
    d->volume = std::pow(lambda, inner->ambient_dim) * inner->volume;
    d->inner_radius = lambda * inner->inner_radius;
    d->strip_height = lambda * inner->strip_height;
    d->family = ScaledCopy{lambda, std::move(inner)};
    return d;
}

DrumPtr make_translated(DrumPtr inner, std::vector<double> offset) {
    if (!inner) throw ConfigError("translated copy requires an inner drum");
    if (static_cast<int>(offset.size()) != inner->ambient_dim)
        throw ConfigError("translation offset dimension mismatch");
    if (inner->ambient_dim == 2) {
        if (offset[0] != 0.0 || offset[1] < 0.0)
            throw ConfigError("only nonnegative vertical translations are supported");
    } else if (offset[0] != 0.0) {
        throw ConfigError("translations of 1-D drums are not supported");
    }
    auto d = std::make_shared<DrumSpec>();
    d->ambient_dim = inner->ambient_dim;
    d->volume = inner->volume;
    d->inner_radius = inner->inner_radius;
    d->strip_height = inner->strip_height + (inner->ambient_dim == 2 ? offset[1] : 0.0);
    d->family = TranslatedCopy{std::move(offset), std::move(inner)};
    return d;
}

DrumPtr make_disjoint_union(std::vector<DrumPtr> members) {
    if (members.empty()) throw ConfigError("disjoint union requires at least one member");
    auto d = std::make_shared<DrumSpec>();
    d->ambient_dim = members.front()->ambient_dim;
    double vol = 0, inner = members.front()->inner_radius, strip = 0;
    for (const auto& m : members) {
        if (!m) throw ConfigError("disjoint union: null member");
        if (m->ambient_dim != d->ambient_dim)
            throw ConfigError("disjoint union: mixed ambient dimensions");
        vol += m->volume;
        inner = std::min(inner, m->inner_radius);
        strip = std::max(strip, m->strip_height);
    }
    d->volume = vol;
    d->inner_radius = inner;
    d->strip_height = strip;
    d->family = DisjointUnion{std::move(members)};
    return d;
}

nlohmann::json drum_to_json(const DrumSpec& d) {
    nlohmann::json fam;
    std::visit(
        [&fam](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, IntervalFamily>) {
                fam = {{"tag", "interval_family"}, {"alpha", f.alpha}, {"beta", f.beta}};
            } else if constexpr (std::is_same_v<T, PowerTail>) {
                fam = {{"tag", "power_tail"}, {"alpha", f.alpha}};
            } else if constexpr (std::is_same_v<T, CantorInfinity>) {
                fam = {{"tag", "cantor_infinity"}, {"a", f.a}, {"b", f.b}};
            } else if constexpr (std::is_same_v<T, ScaledCopy>) {
                fam = {{"tag", "scaled"},
                       {"lambda", f.lambda},
                       {"inner", drum_to_json(*f.inner)["family"]}};
            } else if constexpr (std::is_same_v<T, TranslatedCopy>) {
                fam = {{"tag", "translated"},
                       {"offset", f.offset},
                       {"inner", drum_to_json(*f.inner)["family"]}};
            } else if constexpr (std::is_same_v<T, DisjointUnion>) {
                fam = {{"tag", "disjoint_union"}};
                fam["members"] = nlohmann::json::array();
                for (const auto& m : f.members) fam["members"].push_back(drum_to_json(*m)["family"]);
            }
        },
        d.family);
    return {{"ambient_dim", d.ambient_dim}, {"family", fam}, {"transforms", nlohmann::json::array()}};
}

namespace {

DrumPtr family_from_json(const nlohmann::json& fam, int ambient_dim) {
    if (!fam.contains("tag")) throw ConfigError("drum JSON: family.tag missing");
    const std::string tag = fam.at("tag").get<std::string>();
    if (tag == "interval_family") {
        if (ambient_dim != 1) throw ConfigError("interval_family requires ambient_dim 1");
        return make_interval_family(fam.at("alpha").get<double>(), fam.at("beta").get<double>());
    }
    if (tag == "power_tail") {
        if (ambient_dim != 2) throw ConfigError("power_tail requires ambient_dim 2");
        return make_power_tail(fam.at("alpha").get<double>());
    }
    if (tag == "cantor_infinity") {
        if (ambient_dim != 2) throw ConfigError("cantor_infinity requires ambient_dim 2");
        return make_cantor_infinity(fam.at("a").get<double>(), fam.at("b").get<double>());
    }
    if (tag == "scaled")
        return make_scaled(family_from_json(fam.at("inner"), ambient_dim),
                           fam.at("lambda").get<double>());
    if (tag == "translated")
        return make_translated(family_from_json(fam.at("inner"), ambient_dim),
                               fam.at("offset").get<std::vector<double>>());
    if (tag == "disjoint_union") {
        std::vector<DrumPtr> members;
        for (const auto& m : fam.at("members")) members.push_back(family_from_json(m, ambient_dim));
        return make_disjoint_union(std::move(members));
    }
    throw ConfigError("drum JSON: unknown family tag '" + tag + "'");
}

}  // namespace

DrumPtr drum_from_json(const nlohmann::json& j) {
    if (!j.contains("ambient_dim") || !j.contains("family"))
        throw ConfigError("drum JSON: need ambient_dim and family");
    const int n = j.at("ambient_dim").get<int>();
    if (n != 1 && n != 2) throw ConfigError("drum JSON: ambient_dim must be 1 or 2");
    DrumPtr d = family_from_json(j.at("family"), n);
    if (j.contains("transforms")) {
        for (const auto& t : j.at("transforms")) {
            const std::string tag = t.at("tag").get<std::string>();
            if (tag == "scale")
                d = make_scaled(d, t.at("lambda").get<double>());
            else if (tag == "translate")
                d = make_translated(d, t.at("offset").get<std::vector<double>>());
            else
                throw ConfigError("drum JSON: unknown transform '" + tag + "'");
        }
    }
    return d;
}

}  // namespace fzeta
