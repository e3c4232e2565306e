#pragma once

#include <functional>

#include "fzeta/tube.hpp"

namespace fzeta {

struct ContentInterval {
    double lower;
    double upper;
};

struct DimensionInfo {
    double dimension;
    ContentInterval content;  // degenerate interval for measurable families
    bool measurable;
};

/// Closed-form Minkowski dimension at infinity and content (interval for the
/// oscillating stacked family).
DimensionInfo exact_dimension(const DrumSpec& d);

struct DimensionEstimate {
    double d_hat;
    double half_width;  // 2 x slope standard error
    double slope;       // fitted log tube vs log t slope = N + D
    double slope_stderr;
    int n_points;
};

/// Least-squares slope of log tube volume against log t on a geometric grid.
/// Requires t_max/t_min >= 1e3 and n_points >= 16.
DimensionEstimate estimate_dimension(const TubeFunction& tube, double t_min, double t_max,
                                     int n_points);

/// inf and sup of tube(t)/t^{N+D} over a dense geometric grid in the window.
ContentInterval content_bounds(const TubeFunction& tube, double D, double t_min, double t_max,
                               int points_per_period = 4096);

struct PeriodicProfile {
    double period;  // log(1/a)
    std::function<double(double)> sampler;
    std::vector<double> breakpoints;  // kink locations within [0, period)
    double min_value;
    double max_value;
    double argmin;  // within [0, period)
};

/// Periodic factor G of the stacked-family tube asymptotics: closed-form
/// maximum at 0, numeric argmin (the printed closed form for the minimizer
/// is cross-checked in the tests where it is interpretable).
PeriodicProfile periodic_profile(const DrumSpec& cantor);
PeriodicProfile periodic_profile(double a, double b);

struct MinkowskiReport {
    double dimension;
    double dimension_estimate;
    double half_width;
    double lower_content;
    double upper_content;
    bool measurable;
};

/// Convenience assembly used by the CLI: closed-form dimension, regression
/// estimate and sampled content bounds over a default window.
MinkowskiReport minkowski_report(DrumPtr drum, Norm norm = Norm::Sup);

}  // namespace fzeta
