#pragma once

#include "fzeta/minkowski.hpp"
#include "fzeta/zeta.hpp"

namespace fzeta {

struct Window {
    double re_min, re_max, im_min, im_max;
};

enum class Provenance { LatticePredicted, ArgumentPrinciple, ContourResidue };

struct ComplexDimension {
    cplx location;
    int order = 1;
    cplx residue;
    Provenance provenance = Provenance::LatticePredicted;
};

/// Smallest spacing between the principal pole at D and any neighboring
/// pole, minimized over every stacked component (capped at 1).
double principal_pole_gap(const DrumSpec& d);

/// Predicted complex dimensions of the stacked family inside the window:
/// { -(b+1) } plus the principal line D + i p(a) Z, with closed-form
/// residues of the distance zeta function.
std::vector<ComplexDimension> pole_lattice(const DrumSpec& cantor, const Window& w);

/// Argument-principle pole search by recursive rectangle subdivision; the
/// winding integrand f'/f takes f' from a Cauchy circle.  Zeros (positive
/// winding) are discarded.  f must be meromorphic on the closed window with
/// no pole or zero on its boundary.
std::vector<ComplexDimension> locate_poles(const std::function<cplx(cplx)>& f, const Window& w);

/// (1/2 pi i) contour integral on a circle (M-point trapezoid, M doubled
/// until two passes agree within tol).
cplx residue_contour(const std::function<cplx(cplx)>& f, cplx center, double radius,
                     double tol = 1e-9);

/// Richardson-extrapolated limit of h f(D+h) along h = delta 2^{-k}; for
/// simple poles reachable only through real-axis evaluation.
double residue_from_right(const std::function<double(double)>& f, double D, double delta = 0.5,
                          double tol = 1e-8);

struct ResidueContentReport {
    double dimension;
    double tube_residue;      // res at D of the tube zeta
    double distance_residue;  // res at D of the distance zeta
    double lower_content;
    double upper_content;
    bool measurable;
    bool sandwich_ok;  // lower <= res <= upper (strict when nonmeasurable)
    bool ratio_ok;     // distance residue = -(N+D) * tube residue
};

ResidueContentReport residue_content_check(DrumPtr drum);

struct FourierResidueLink {
    int k;
    cplx fourier_value;    // (1/T) \hat G_0(k/T)
    cplx contour_residue;  // res of the tube zeta at s_k
    double mismatch;
};

struct FourierResidueReport {
    std::vector<FourierResidueLink> links;  // k = -k_max .. k_max
    double mean_value;                      // k = 0 entry
    double max_mismatch;
    bool bound_ok;             // |res| <= (1/T) int_0^T G for every k
    bool envelope_decreasing;  // max over 8<=|k|<=16 below max over 1<=|k|<=4
};

FourierResidueReport fourier_residue_link(DrumPtr cantor, int k_max = 16);

struct ContentBoundReport {
    double upper_content;
    double tube_residue;
    double lambda_gap;   // spacing of the principal pole line
    double bound;        // stated coefficient form, C = 3
    double bound_tauber; // C res x/(1-e^{-x}) form from the Tauberian step
    bool ok;             // upper_content <= bound
};

ContentBoundReport content_upper_bound_check(DrumPtr cantor);

struct InvertedContentReport {
    double predicted;  // -(N+D)/(N-D) x content at infinity
    double estimate;   // from the eps-grid of inverted near-ball volumes
    double slope;      // log volume vs log eps, expected N - D
    double slope_expected;
    double rel_error;
    bool ok;  // estimate within 10 % and slope within 0.1
};

InvertedContentReport inverted_content_relation(DrumPtr drum);

}  // namespace fzeta
