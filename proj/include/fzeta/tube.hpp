#pragma once

#include "fzeta/drum.hpp"

namespace fzeta {

enum class Norm { Euclidean, Sup };
enum class TubeMethod { ExactSeries, Quadrature };

/// Evaluator of t -> |B_t(0)^c ∩ Ω| (Euclidean) or |K_t(0)^c ∩ Ω| (sup norm).
///
/// For stacked 2-D drums the sup-norm value is the x-only tail sum, which is
/// the true sup tube whenever t >= strip_height or t <= inner_radius; every
/// stacked drum built here keeps its oscillating regime inside that range.
struct TubeFunction {
    DrumPtr drum;
    Norm norm = Norm::Sup;
    TubeMethod method = TubeMethod::ExactSeries;
    int level_cutoff = 0;     // stage truncation for stacked families
    double tail_bound = 0.0;  // guaranteed remainder of the truncation

    double operator()(double t) const;
};

TubeFunction make_tube(DrumPtr drum, Norm norm = Norm::Sup,
                       TubeMethod method = TubeMethod::ExactSeries);

double tube_volume(const TubeFunction& tube, double t);

/// Both sides of |B_t(0)^c ∩ λΩ| = λ^N |B_{t/λ}(0)^c ∩ Ω|.
std::pair<double, double> scale_tube_identity(DrumPtr drum, double lambda, double t,
                                              Norm norm = Norm::Sup);

/// Exact series tube in the sup norm (x-only tail sum for stacked drums).
double sup_tube(const DrumSpec& d, double t);

/// Euclidean tube: sup tube plus the boundary sliver
/// {|x|_sup <= t < |x|_2}, integrated in closed column form.
double euclid_tube(const DrumSpec& d, double t);

/// euclid_tube(t) - sup_tube(t)  (nonnegative; O(1/t) for strip drums).
double tube_norm_gap(const DrumSpec& d, double t);

/// Closed piecewise tube formula for the stacked family (sup norm),
/// with the stage tail summed in closed geometric form.
double cantor_tube_closed(double a, double b, double t);

/// Total transverse length of {y in column(x) : y > y0}; y0 may be negative.
double column_length_above(const DrumSpec& d, double x, double y0);
double column_length(const DrumSpec& d, double x);

/// t-values where the sup tube has kinks (stage boundaries), within [lo, hi].
std::vector<double> tube_breakpoints(const DrumSpec& d, double lo, double hi);

/// Integral of |x|_sup^{-w} over the x-only tail {x_1 > max(T, inner)}, in
/// closed family form (w real, large enough for convergence).
double sup_radial_moment(const DrumSpec& d, double T, double w);

/// |B_eps(0) ∩ Φ(Ω)| for the geometric inversion Φ(x) = x/|x|^2, computed as
/// the Jacobian-weighted integral of |x|^{-2N} over Ω outside radius 1/eps.
/// Euclidean norm supported for 1-D drums and single-graph regions.
double inverted_near_ball_volume(DrumPtr drum, double eps, Norm norm = Norm::Sup);

}  // namespace fzeta
