#pragma once

#include <vector>

#include "fzeta/tube.hpp"

namespace fzeta {

enum class ZetaKind { Distance, Tube };
enum class ZetaMethod { ClosedForm, Quadrature };

/// Evaluator of the distance / tube zeta function at infinity.  Quadrature
/// evaluation is accepted only for Re s > abscissa + margin; closed forms
/// evaluate anywhere off their poles.
struct ZetaHandle {
    DrumPtr drum;
    ZetaKind kind = ZetaKind::Distance;
    Norm norm = Norm::Sup;
    double T = 0;
    ZetaMethod method = ZetaMethod::Quadrature;
    double abscissa = 0;
    double margin = 0.05;
};

ZetaHandle make_zeta(DrumPtr drum, ZetaKind kind = ZetaKind::Distance, Norm norm = Norm::Sup,
                     double T = 0, ZetaMethod method = ZetaMethod::Quadrature);

/// Abscissa of convergence (the Minkowski dimension of the drum).
double drum_abscissa(const DrumSpec& d);

/// True when a sup-norm meromorphic closed form is available.
bool has_closed_form(const DrumSpec& d);

/// Meromorphic closed form (sup norm).  T defaults to the drum inner
/// radius; larger T evaluates the explicitly truncated stage sums.
/// Throws when s is within 1e-12 of a pole.
cplx zeta_closed_form(const DrumSpec& d, cplx s, double T = 0,
                      ZetaKind kind = ZetaKind::Distance);

struct EvalResult {
    cplx value;
    double err;
};

EvalResult zeta_quadrature(const ZetaHandle& h, cplx s, double tol = 1e-8);

/// Dispatch on the handle's method.
EvalResult zeta_eval(const ZetaHandle& h, cplx s, double tol = 1e-8);

struct ResidualReport {
    cplx lhs;
    cplx rhs;
    double abs_residual;
    double rel_residual;  // relative to |lhs| (or |rhs| when lhs vanishes)
};

/// | zeta(s;T) - [T^{-s-N} |_T Omega| - (s+N) * tube zeta(s;T)] |,
/// with the tube side always computed by quadrature.
ResidualReport functional_equation_residual(DrumPtr drum, cplx s, double T = 0,
                                            Norm norm = Norm::Sup, double tol = 1e-8);

/// | zeta_{lambda Omega}(s; lambda T) - lambda^{-s} zeta_Omega(s; T) |.
ResidualReport scaling_identity_residual(DrumPtr drum, double lambda, cplx s, double T = 0,
                                         Norm norm = Norm::Sup, double tol = 1e-8);

/// | zeta(s;T) - inverted-drum zeta(s;1/T) |, the right side computed by the
/// Jacobian-weighted integral over the original set.
ResidualReport inversion_identity_residual(DrumPtr drum, cplx s, double T = 0,
                                           Norm norm = Norm::Sup, double tol = 1e-8);

struct GrowthReport {
    bool divergence_mode;           // true: partial integrals at s below D
    std::vector<double> abscissae;  // cutoffs X_k, or gaps s-D
    std::vector<double> values;
    double last_to_first;
    bool increasing;
};

/// For s_real < D: partial integrals over [T, X_k] (expected unbounded
/// growth).  For s_real > D: evaluations at D + (s_real-D) 2^{-k}.
GrowthReport abscissa_probe(const ZetaHandle& h, double s_real,
                            const std::vector<double>& ladder);

/// zeta_Euclid(s) - zeta_sup(s) through the tube-difference integral;
/// holomorphic on Re s > -N-1 for strip drums.
cplx norm_difference_distance_zeta(DrumPtr drum, cplx s, double T = 0, double tol = 1e-9);

/// Accelerated series for the 1-D interval family (valid for Re s > D, and
/// continues meromorphically on the real axis through the geometric form).
cplx interval_distance_zeta(double alpha, double beta, cplx s, double T = 1.0);

}  // namespace fzeta
