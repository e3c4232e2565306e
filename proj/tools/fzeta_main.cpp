#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "fzeta/constructions.hpp"
#include "fzeta/io.hpp"
#include "fzeta/numerics.hpp"
#include "fzeta/poles.hpp"

using namespace fzeta;

namespace {

struct GridSpec {
    double lo = 0, hi = 0;
    int n = 0;
};

GridSpec parse_grid(const std::string& text) {
    GridSpec g;
    char colon1, colon2;
    std::istringstream in(text);
    if (!(in >> g.lo >> colon1 >> g.hi >> colon2 >> g.n) || colon1 != ':' || colon2 != ':' ||
        g.n < 1)
        throw ConfigError("bad grid spec '" + text + "' (expected lo:hi:n)");
    return g;
}

// "re0:re1:n,im0:im1:m"
std::pair<GridSpec, GridSpec> parse_sgrid(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw ConfigError("bad s-grid (expected re-spec,im-spec)");
    return {parse_grid(text.substr(0, comma)), parse_grid(text.substr(comma + 1))};
}

DrumPtr load_drum(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open drum file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("drum JSON parse error: ") + e.what());
    }
    return drum_from_json(j);
}

Norm parse_norm(const std::string& s) {
    if (s == "sup") return Norm::Sup;
    if (s == "euclid") return Norm::Euclidean;
    throw ConfigError("--norm must be 'euclid' or 'sup'");
}

void emit(const CsvTable& table, const std::string& out_path, const std::string& format) {
    std::string payload;
    if (format == "csv")
        payload = table.str();
    else if (format == "json")
        payload = table_to_json(table).dump(2) + "\n";
    else
        throw ConfigError("--format must be 'csv' or 'json'");
    if (out_path.empty())
        std::cout << payload;
    else
        write_text_file(out_path, payload);
}

void emit_json(const nlohmann::json& j, const std::string& out_path) {
    const std::string payload = j.dump(2) + "\n";
    if (out_path.empty())
        std::cout << payload;
    else
        write_text_file(out_path, payload);
}

double check_tol(double tol) {
    if (tol < 1e-12 || tol > 1e-3)
        throw ConfigError("--tol must lie in [1e-12, 1e-3]");
    return tol;
}

nlohmann::json qp_report_json(const QuasiperiodicReport& r) {
    nlohmann::json j;
    j["order"] = r.order;
    j["infinite_family"] = r.infinite_family;
    j["target_dimension"] = r.target_dimension;
    j["parameters"] = nlohmann::json::array();
    for (auto [a, b] : r.parameters) j["parameters"].push_back({{"a", a}, {"b", b}});
    j["quasiperiods"] = r.quasiperiods;
    j["oscillatory_periods"] = r.oscillatory_periods;
    j["classification"] =
        r.classification == PeriodClass::Algebraic ? "algebraic" : "transcendental";
    j["independence_probe"] = {{"pass", r.independence_pass},
                               {"max_coef", r.probe_max_coef},
                               {"tol", r.probe_tol}};
    j["sup_norm_profile_only"] = r.sup_norm_profile_only;
    return j;
}

nlohmann::json hyper_report_json(const HyperfractalReport& r) {
    nlohmann::json j;
    j["target_dimension"] = r.target_dimension;
    j["n_levels"] = r.n_levels;
    j["parameters"] = nlohmann::json::array();
    for (auto [a, b] : r.parameters) j["parameters"].push_back({{"a", a}, {"b", b}});
    j["oscillatory_periods"] = r.oscillatory_periods;
    j["ordinate_cap"] = r.ordinate_cap;
    j["pole_ordinates"] = r.pole_ordinates;
    j["min_gap"] = r.min_gap;
    return j;
}

int run_tube(const std::string& drum_path, const std::string& tgrid, Norm norm,
             const std::string& method, const std::string& out, const std::string& format) {
    DrumPtr drum = load_drum(drum_path);
    const GridSpec g = parse_grid(tgrid);
    if (!(g.lo > 0 && g.hi >= g.lo)) throw ConfigError("t-grid must be positive and increasing");
    const TubeFunction tube = make_tube(
        drum, norm, method == "quad" ? TubeMethod::Quadrature : TubeMethod::ExactSeries);
    const double D = drum_abscissa(*drum);
    const int N = drum->ambient_dim;
    CsvTable t;
    t.header = {"t", "volume", "err", "normalized"};
    std::vector<std::vector<std::string>> rows(g.n);
    parallel_for(rows.size(), [&](std::size_t i) {
        const double x = g.n == 1 ? g.lo
                                  : g.lo * std::pow(g.hi / g.lo,
                                                    static_cast<double>(i) / (g.n - 1));
        const double v = tube(x);
        rows[i] = {format_full(x), format_full(v), format_full(tube.tail_bound),
                   format_full(v / std::pow(x, N + D))};
    });
    t.rows = std::move(rows);
    emit(t, out, format);
    return 0;
}

int run_profile(const std::string& drum_path, int samples, const std::string& out,
                const std::string& format) {
    DrumPtr drum = load_drum(drum_path);
    const PeriodicProfile prof = periodic_profile(*drum);
    if (samples < 8) throw ConfigError("--samples must be at least 8");
    CsvTable t;
    t.header = {"tau", "G"};
    for (int i = 0; i < samples; ++i) {
        const double tau = prof.period * i / samples;
        t.add_row({format_full(tau), format_full(prof.sampler(tau))});
    }
    if (format == "json") {
        nlohmann::json j = table_to_json(t);
        j["period"] = prof.period;
        j["min_value"] = prof.min_value;
        j["max_value"] = prof.max_value;
        j["argmin"] = prof.argmin;
        j["breakpoints"] = prof.breakpoints;
        emit_json(j, out);
        return 0;
    }
    emit(t, out, format);
    return 0;
}

int run_dim(const std::string& drum_path, Norm norm, const std::string& out,
            const std::string& format) {
    DrumPtr drum = load_drum(drum_path);
    const MinkowskiReport rep = minkowski_report(drum, norm);
    CsvTable t;
    t.header = {"dimension", "dimension_estimate", "half_width",
                "lower_content", "upper_content", "measurable"};
    t.add_row({format_full(rep.dimension), format_full(rep.dimension_estimate),
               format_full(rep.half_width), format_full(rep.lower_content),
               format_full(rep.upper_content), rep.measurable ? "true" : "false"});
    emit(t, out, format);
    return 0;
}

int run_zeta_eval(const std::string& drum_path, const std::string& sgrid,
                  const std::string& kind, Norm norm, double T, double tol,
                  const std::string& out, const std::string& format) {
    DrumPtr drum = load_drum(drum_path);
    const auto [gre, gim] = parse_sgrid(sgrid);
    const ZetaKind zk = kind == "tube" ? ZetaKind::Tube : ZetaKind::Distance;
    const bool closed = norm == Norm::Sup && has_closed_form(*drum);
    const ZetaHandle h =
        make_zeta(drum, zk, norm, T, closed ? ZetaMethod::ClosedForm : ZetaMethod::Quadrature);
    CsvTable t;
    t.header = {"re_s", "im_s", "re_zeta", "im_zeta", "err"};
    const std::size_t total = static_cast<std::size_t>(gre.n) * gim.n;
    std::vector<std::vector<std::string>> rows(total);
    parallel_for(total, [&](std::size_t idx) {
        const int i = static_cast<int>(idx) / gim.n;
        const int j = static_cast<int>(idx) % gim.n;
        const double re = gre.n == 1 ? gre.lo : gre.lo + (gre.hi - gre.lo) * i / (gre.n - 1);
        const double im = gim.n == 1 ? gim.lo : gim.lo + (gim.hi - gim.lo) * j / (gim.n - 1);
        const EvalResult r = zeta_eval(h, {re, im}, tol);
        rows[idx] = {format_full(re), format_full(im), format_full(r.value.real()),
                     format_full(r.value.imag()), format_full(r.err)};
    });
    t.rows = std::move(rows);
    emit(t, out, format);
    return 0;
}

Window parse_window(const std::string& text) {
    // "re0:re1,im0:im1"
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw ConfigError("bad window (expected re0:re1,im0:im1)");
    auto half = [](const std::string& s) {
        std::istringstream in(s);
        double a, b;
        char c;
        if (!(in >> a >> c >> b) || c != ':') throw ConfigError("bad window bound '" + s + "'");
        return std::pair<double, double>{a, b};
    };
    const auto [r0, r1] = half(text.substr(0, comma));
    const auto [i0, i1] = half(text.substr(comma + 1));
    return Window{r0, r1, i0, i1};
}

CsvTable pole_table(const std::vector<ComplexDimension>& poles) {
    CsvTable t;
    t.header = {"re_omega", "im_omega", "order", "re_res", "im_res"};
    for (const auto& p : poles)
        t.add_row({format_full(p.location.real()), format_full(p.location.imag()),
                   std::to_string(p.order), format_full(p.residue.real()),
                   format_full(p.residue.imag())});
    return t;
}

nlohmann::json pole_json(const std::vector<ComplexDimension>& poles) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : poles) {
        const char* prov = p.provenance == Provenance::LatticePredicted ? "lattice_predicted"
                           : p.provenance == Provenance::ArgumentPrinciple ? "argument_principle"
                                                                           : "contour_residue";
        arr.push_back({{"re", p.location.real()},
                       {"im", p.location.imag()},
                       {"order", p.order},
                       {"residue", {{"re", p.residue.real()}, {"im", p.residue.imag()}}},
                       {"provenance", prov}});
    }
    return nlohmann::json{{"schema", kSchemaTag}, {"poles", arr}};
}

int run_poles(const std::string& drum_path, const std::string& window, const std::string& out,
              const std::string& format) {
    DrumPtr drum = load_drum(drum_path);
    if (!has_closed_form(*drum))
        throw ConfigError("pole search needs a closed-form zeta (no numeric continuation)");
    const Window w = parse_window(window);
    auto f = [&](cplx s) { return zeta_closed_form(*drum, s); };
    const auto poles = locate_poles(f, w);
    if (format == "json")
        emit_json(pole_json(poles), out);
    else
        emit(pole_table(poles), out, format);
    return 0;
}

int run_residues(const std::string& drum_path, const std::string& window, const std::string& out,
                 const std::string& format) {
    DrumPtr drum = load_drum(drum_path);
    if (!has_closed_form(*drum))
        throw ConfigError("residue extraction needs a closed-form zeta");
    const Window w = parse_window(window);
    std::vector<ComplexDimension> poles;
    auto f = [&](cplx s) { return zeta_closed_form(*drum, s); };
    try {
        // lattice prediction where available, confirmed by contour residues
        poles = pole_lattice(*drum, w);
    } catch (const ConfigError&) {
        poles = locate_poles(f, w);
    }
    // contour radius: inside the component gap and below half the smallest
    // pairwise distance (merged union lattices can pack poles densely)
    double radius = 0.45 * principal_pole_gap(*drum);
    for (std::size_t i = 0; i < poles.size(); ++i)
        for (std::size_t j = i + 1; j < poles.size(); ++j)
            radius = std::min(radius, 0.4 * std::abs(poles[i].location - poles[j].location));
    if (radius < 1e-6) throw NumericError("residues: predicted poles too dense to separate");
    for (auto& p : poles) {
        p.residue = residue_contour(f, p.location, radius);
        p.provenance = Provenance::ContourResidue;
    }
    if (format == "json")
        emit_json(pole_json(poles), out);
    else
        emit(pole_table(poles), out, format);
    return 0;
}

int run_construct(const std::string& recipe, int order, int hyper_levels, double dimension,
                  double a1, bool allow_sup_profile, bool infinite, double ordinate_cap,
                  const std::string& out) {
    nlohmann::json j;
    j["schema"] = kSchemaTag;
    if (hyper_levels > 0) {
        const BuiltHyperfractal built = build_hyperfractal(dimension, hyper_levels, {}, ordinate_cap);
        j["drum"] = drum_to_json(*built.drum);
        j["report"] = hyper_report_json(built.report);
    } else {
        BuiltDrum built;
        if (recipe == "algebraic")
            built = build_algebraic_qp(order, dimension, a1, allow_sup_profile, infinite);
        else if (recipe == "transcendental")
            built = build_transcendental_qp(order, dimension, allow_sup_profile, infinite);
        else
            throw ConfigError("--recipe must be 'algebraic' or 'transcendental'");
        j["drum"] = drum_to_json(*built.drum);
        j["report"] = qp_report_json(built.report);
    }
    emit_json(j, out);
    return 0;
}

struct VerifyRow {
    std::string name;
    double measured;
    double tolerance;
    bool pass;
};

int run_verify(const std::string& drum_path, double tol, const std::string& out,
               const std::string& format) {
    DrumPtr drum = load_drum(drum_path);
    const double D = drum_abscissa(*drum);
    const int N = drum->ambient_dim;
    const bool closed = has_closed_form(*drum);
    std::vector<VerifyRow> rows;
    auto record = [&rows](const std::string& name, double measured, double tolerance) {
        rows.push_back({name, measured, tolerance, measured <= tolerance});
    };

    // functional equation on a 5x5 grid
    {
        double worst = 0.0;
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) {
                const double re = D + 0.5 + (3.5 * i) / 4.0;
                const double im = -10.0 + (20.0 * j) / 4.0;
                worst = std::max(
                    worst, functional_equation_residual(drum, {re, im}, 0, Norm::Sup, tol / 10)
                               .rel_residual);
            }
        record("functional_equation", worst, tol);
    }
    // closed form vs quadrature
    if (closed) {
        double worst = 0.0;
        const ZetaHandle h = make_zeta(drum, ZetaKind::Distance, Norm::Sup);
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) {
                const cplx s(D + 0.5 + (3.5 * i) / 4.0, -10.0 + (20.0 * j) / 4.0);
                const cplx c = zeta_closed_form(*drum, s);
                const cplx q = zeta_quadrature(h, s, tol / 10).value;
                worst = std::max(worst, std::abs(q - c) / std::abs(c));
            }
        record("closed_vs_quadrature", worst, tol);
    }
    // volume at s = -N
    if (closed) {
        const cplx z = zeta_closed_form(*drum, cplx(-N, 0.0));
        record("volume_at_minus_N", std::abs(z - drum->volume) / drum->volume, 1e-10);
    }
    // conjugate symmetry
    {
        const cplx s(D + 1.2, 6.0);
        double worst;
        if (closed) {
            const cplx a = zeta_closed_form(*drum, s);
            worst = std::abs(zeta_closed_form(*drum, std::conj(s)) - std::conj(a)) / std::abs(a);
        } else {
            const ZetaHandle h = make_zeta(drum, ZetaKind::Distance, Norm::Sup);
            const cplx a = zeta_quadrature(h, s, tol / 10).value;
            worst =
                std::abs(zeta_quadrature(h, std::conj(s), tol / 10).value - std::conj(a)) /
                std::abs(a);
        }
        record("conjugate_symmetry", worst, tol);
    }
    // scaling and inversion identities on seeded draws
    {
        std::mt19937 rng(20240817);
        std::uniform_real_distribution<double> U(0.0, 1.0);
        double worst_s = 0.0, worst_i = 0.0;
        for (int i = 0; i < 20; ++i) {
            const double lambda = 0.25 + 3.75 * U(rng);
            const cplx s(D + 0.5 + 3.0 * U(rng), -8.0 + 16.0 * U(rng));
            const double Tr = drum->inner_radius * (1.0 + U(rng));
            worst_s = std::max(
                worst_s, scaling_identity_residual(drum, lambda, s, Tr, Norm::Sup, tol / 10)
                             .rel_residual);
            worst_i = std::max(
                worst_i,
                inversion_identity_residual(drum, s, Tr, Norm::Sup, tol / 10).rel_residual);
        }
        record("scaling_identity", worst_s, tol);
        record("inversion_identity", worst_i, tol);
    }
    // residue-content connection
    {
        const ResidueContentReport rc = residue_content_check(drum);
        record("residue_content_sandwich", rc.sandwich_ok ? 0.0 : 1.0, 0.5);
        record("residue_ratio_minus_N_plus_D", rc.ratio_ok ? 0.0 : 1.0, 0.5);
    }
    // dimension regression
    {
        const TubeFunction tube = make_tube(drum);
        const double t0 = std::max(2.0 * drum->inner_radius, 1.0);
        const DimensionEstimate est = estimate_dimension(tube, t0, t0 * 1e5, 96);
        record("dimension_regression", std::abs(est.d_hat - D), 0.05);
    }
    // stacked-family extras
    if (std::holds_alternative<CantorInfinity>(drum->family)) {
        const FourierResidueReport fr = fourier_residue_link(drum, 16);
        record("fourier_residue_link", fr.max_mismatch, 1e-8);
        record("fourier_envelope_decay", fr.envelope_decreasing && fr.bound_ok ? 0.0 : 1.0, 0.5);
        const ContentBoundReport cb = content_upper_bound_check(drum);
        record("content_bound_C3", cb.ok ? 0.0 : 1.0, 0.5);
        const PeriodicProfile prof = periodic_profile(*drum);
        const double t0 = std::pow(drum->inner_radius, 12.0);
        const ContentInterval ci =
            content_bounds(make_tube(drum), D, t0, t0 * std::exp(3.0 * prof.period));
        record("content_window_min", std::abs(ci.lower - prof.min_value), 1e-3);
        record("content_window_max", std::abs(ci.upper - prof.max_value), 1e-3);
    }
    // norm comparison decay for strip drums
    if (N == 2) {
        std::vector<double> lx, ly;
        for (int i = 0; i < 25; ++i) {
            const double t = 1e2 * std::pow(10.0, 3.0 * i / 24.0);
            const double g = tube_norm_gap(*drum, t);
            if (g <= 0.0) continue;
            lx.push_back(std::log(t));
            ly.push_back(std::log(g));
        }
        if (lx.size() >= 8) {
            const LineFit fit = fit_line(lx, ly);
            record("norm_gap_slope_below_-0.9", fit.slope, -0.9);
        }
    }

    CsvTable t;
    t.header = {"check", "measured", "tolerance", "status"};
    bool all_pass = true;
    for (const auto& r : rows) {
        t.add_row({r.name, format_full(r.measured), format_full(r.tolerance),
                   r.pass ? "PASS" : "FAIL"});
        all_pass = all_pass && r.pass;
    }
    emit(t, out, format);
    return all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractal zeta functions of unbounded sets: tubes, dimensions, "
                 "complex dimensions and verification"};
    app.require_subcommand(1);

    std::string drum_path, out_path, format = "csv", norm_s = "sup", kind = "distance";
    std::string tgrid = "1:1e6:61", sgrid, window_s, recipe = "algebraic";
    double T = 0.0, tol = 1e-8, verify_tol = 1e-6, dimension = -2.5, a1 = 0.25,
           ordinate_cap = 20.0;
    int order = 2, hyper_levels = 0;
    bool allow_sup_profile = false, infinite_marker = false;
    std::string method = "exact";

    auto add_common = [&](CLI::App* cmd, bool needs_drum) {
        if (needs_drum)
            cmd->add_option("--drum", drum_path, "drum JSON file")->required();
        cmd->add_option("--out", out_path, "output file (default: stdout)");
        cmd->add_option("--format", format, "csv|json");
    };

    CLI::App* tube = app.add_subcommand("tube", "tube volumes over a geometric t-grid");
    add_common(tube, true);
    tube->add_option("--t-grid", tgrid, "t0:t1:n (geometric spacing)");
    tube->add_option("--norm", norm_s, "euclid|sup");
    tube->add_option("--method", method, "exact|quad");

    CLI::App* dim = app.add_subcommand("dim", "Minkowski dimension and content report");
    add_common(dim, true);
    dim->add_option("--norm", norm_s, "euclid|sup");

    int profile_samples = 512;
    CLI::App* pr = app.add_subcommand("profile", "periodic tube profile (tau, G) of a stacked drum");
    add_common(pr, true);
    pr->add_option("--samples", profile_samples, "samples per period");

    CLI::App* ze = app.add_subcommand("zeta-eval", "zeta values on an s-grid");
    add_common(ze, true);
    ze->add_option("--s-grid", sgrid, "re0:re1:n,im0:im1:m")->required();
    ze->add_option("--kind", kind, "distance|tube");
    ze->add_option("--norm", norm_s, "euclid|sup");
    ze->add_option("--T", T, "reference radius (default: drum inner radius)");
    ze->add_option("--tol", tol, "quadrature tolerance");

    CLI::App* po = app.add_subcommand("poles", "argument-principle pole search");
    add_common(po, true);
    po->add_option("--window", window_s, "re0:re1,im0:im1")->required();

    CLI::App* re = app.add_subcommand("residues", "contour residues at predicted poles");
    add_common(re, true);
    re->add_option("--window", window_s, "re0:re1,im0:im1")->required();

    CLI::App* co = app.add_subcommand("construct", "build quasiperiodic or hyperfractal drums");
    add_common(co, false);
    co->add_option("--recipe", recipe, "algebraic|transcendental");
    co->add_option("--order", order, "number of components (>= 2)");
    co->add_option("--hyperfractal", hyper_levels, "build a hyperfractal with this many levels");
    co->add_option("--dimension", dimension, "target dimension D < -2");
    co->add_option("--a1", a1, "first scale parameter (algebraic recipe)");
    co->add_option("--ordinate-cap", ordinate_cap, "|Im s| cap for the pole-ordinate report");
    co->add_flag("--allow-sup-profile", allow_sup_profile,
                 "accept D <= -3 (sup-norm profile only)");
    co->add_flag("--infinite", infinite_marker,
                 "mark the result as a truncation of the countable recipe");

    CLI::App* ve = app.add_subcommand("verify", "run the identity suite on a drum");
    add_common(ve, true);
    ve->add_option("--tol", verify_tol, "target tolerance for the residual checks");

    try {
        app.parse(argc, argv);
        if (ze->parsed()) check_tol(tol);
        if (ve->parsed()) check_tol(verify_tol);
        if (tube->parsed())
            return run_tube(drum_path, tgrid, parse_norm(norm_s), method, out_path, format);
        if (dim->parsed()) return run_dim(drum_path, parse_norm(norm_s), out_path, format);
        if (pr->parsed()) return run_profile(drum_path, profile_samples, out_path, format);
        if (ze->parsed())
            return run_zeta_eval(drum_path, sgrid, kind, parse_norm(norm_s), T, tol, out_path,
                                 format);
        if (po->parsed()) return run_poles(drum_path, window_s, out_path, format);
        if (re->parsed()) return run_residues(drum_path, window_s, out_path, format);
        if (co->parsed())
            return run_construct(recipe, order, hyper_levels, dimension, a1, allow_sup_profile,
                                 infinite_marker, ordinate_cap, out_path);
        if (ve->parsed()) return run_verify(drum_path, verify_tol, out_path, format);
        return 2;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << nlohmann::json{{"schema", kSchemaTag},
                                    {"error", {{"type", "config"}, {"message", e.what()}}}}
                         .dump()
                  << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << nlohmann::json{{"schema", kSchemaTag},
                                    {"error", {{"type", "config"}, {"message", e.what()}}}}
                         .dump()
                  << "\n";
        return 2;
    } catch (const NumericError& e) {
        std::cerr << nlohmann::json{{"schema", kSchemaTag},
                                    {"error", {{"type", "numeric"}, {"message", e.what()}}}}
                         .dump()
                  << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << nlohmann::json{{"schema", kSchemaTag},
                                    {"error", {{"type", "internal"}, {"message", e.what()}}}}
                         .dump()
                  << "\n";
        return 3;
    }
}
