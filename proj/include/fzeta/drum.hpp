#pragma once

#include <memory>
#include <variant>
#include <vector>

#include <json.hpp>

#include "fzeta/common.hpp"

namespace fzeta {

struct DrumSpec;
using DrumPtr = std::shared_ptr<const DrumSpec>;

/// Union of intervals (j^alpha, j^alpha + j^-beta) on the line.
struct IntervalFamily {
    double alpha;
    double beta;
};

/// Region under the graph x -> x^-alpha for x > 1 in the plane.
struct PowerTail {
    double alpha;
};

/// Stacked two-parameter set: 2^{m-1} vertical translates of
/// {x > a^-m, 0 < y < x^-b} per stage m, packed into a strip.
struct CantorInfinity {
    double a;
    double b;
};

struct ScaledCopy {
    double lambda;
    DrumPtr inner;
};

struct TranslatedCopy {
    std::vector<double> offset;
    DrumPtr inner;
};

struct DisjointUnion {
    std::vector<DrumPtr> members;
};

using Family =
    std::variant<IntervalFamily, PowerTail, CantorInfinity, ScaledCopy, TranslatedCopy,
                 DisjointUnion>;

/// Immutable description of an unbounded set of finite volume; the single
/// source of truth for every evaluator in the library.
struct DrumSpec {
    int ambient_dim = 1;
    Family family;
    double volume = 0;        // total Lebesgue volume (closed form)
    double inner_radius = 0;  // inf |x|_sup over the set
    double strip_height = 0;  // sup of the transverse coordinate (0 in 1-D)
};

DrumPtr make_interval_family(double alpha, double beta);
DrumPtr make_power_tail(double alpha);
DrumPtr make_cantor_infinity(double a, double b);
DrumPtr make_scaled(DrumPtr inner, double lambda);
/// Vertical translation; offset = (0, c) with c >= 0.
DrumPtr make_translated(DrumPtr inner, std::vector<double> offset);
DrumPtr make_disjoint_union(std::vector<DrumPtr> members);

/// Strip height S = a^b / (1 - 2 a^b) of the stacked family.
double cantor_strip_height(double a, double b);

/// Stage cutoff needed so the omitted volume beyond it stays below tol.
int cantor_level_cutoff(double a, double b, double tol = 1e-12);
double cantor_level_tail_volume(double a, double b, int beyond_level);

nlohmann::json drum_to_json(const DrumSpec& d);
DrumPtr drum_from_json(const nlohmann::json& j);

}  // namespace fzeta
