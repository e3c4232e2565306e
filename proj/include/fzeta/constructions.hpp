#pragma once

#include "fzeta/minkowski.hpp"

namespace fzeta {

enum class PeriodClass { Algebraic, Transcendental };

struct QuasiperiodicReport {
    int order = 0;                // number of stacked components
    bool infinite_family = false; // truncation of the countable recipe
    double target_dimension = 0;
    std::vector<std::pair<double, double>> parameters;  // (a_i, b_i)
    std::vector<double> quasiperiods;                   // T_i = log(1/a_i)
    std::vector<double> oscillatory_periods;            // p(a_i) = 2 pi / T_i
    PeriodClass classification = PeriodClass::Algebraic;
    bool independence_pass = false;
    int probe_max_coef = 0;
    double probe_tol = 0;
    bool sup_norm_profile_only = false;  // D outside (-3, -2)
};

struct BuiltDrum {
    DrumPtr drum;
    QuasiperiodicReport report;
};

/// Union of 2^{-i}-scaled stacked components with a_{i+1} = a_1^{sqrt(p_i)}
/// over the primes p_i; quasiperiod ratios are the square roots of primes
/// (rationally independent, algebraically dependent).
/// as_infinite_truncation marks the drum as the n-th truncation of the
/// countable recipe (same construction, reported with the infinity marker).
BuiltDrum build_algebraic_qp(int n, double D, double a1, bool allow_sup_profile_only = false,
                             bool as_infinite_truncation = false);

/// Components with a_i = 1/p_{i+1}; the quasiperiods log 3, log 5, ... are
/// algebraically independent (classification metadata, not re-proved).
BuiltDrum build_transcendental_qp(int n, double D, bool allow_sup_profile_only = false,
                                  bool as_infinite_truncation = false);

struct HyperfractalReport {
    double target_dimension = 0;
    int n_levels = 0;
    std::vector<std::pair<double, double>> parameters;
    std::vector<double> oscillatory_periods;  // p(a_k), decreasing to 0
    double ordinate_cap = 0;                  // |Im s| <= cap
    std::vector<double> pole_ordinates;       // merged principal-line ordinates
    double min_gap = 0;                       // smallest adjacent spacing
};

struct BuiltHyperfractal {
    DrumPtr drum;
    HyperfractalReport report;
};

/// Truncation of the countable stacked union whose principal pole lattices
/// densify on the critical line (default a_k = 1/(k+2)).
BuiltHyperfractal build_hyperfractal(double D, int n_levels, std::vector<double> a_seq = {},
                                     double ordinate_cap = 20.0);

/// Exact sup-norm tube of a built union drum via per-component scaling.
double composite_tube(const DrumSpec& union_drum, double t);

/// Normalized-tube bracket [m, M]: m from the first component alone,
/// M from the sum of component maxima.
ContentInterval composite_normalized_bounds(const QuasiperiodicReport& report);

struct IndependenceProbe {
    bool pass = false;
    std::vector<long long> witness;  // empty when pass
    int max_coef = 0;
    double tol = 0;
};

/// Exhaustive search for small integer relations among the periods:
/// fails when |sum lambda_i T_i| <= tol * sum |lambda_i T_i| for some
/// nonzero coefficient vector with |lambda_i| <= max_coef.
IndependenceProbe independence_probe(const std::vector<double>& periods, int max_coef,
                                     double tol = 1e-9);

}  // namespace fzeta
