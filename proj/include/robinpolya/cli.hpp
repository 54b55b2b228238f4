#pragma once

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "robinpolya/bounds.hpp"
#include "robinpolya/json_io.hpp"
#include "robinpolya/numverify.hpp"
#include "robinpolya/oned_robin.hpp"
#include "robinpolya/ptrig.hpp"

// Command-line front end.  Subcommands: ptrig, mu1, geometry, bounds,
// verify (rect | fem), slab, torsion (disk | fem).  Output is JSON (or CSV
// where noted) on standard output, full precision, byte-identical across
// identical invocations.  Exit codes: 0 success, 2 input error, 3 numerical
// failure.

namespace robinpolya::cli {

namespace cli_detail {

struct PtrigArgs {
    double p = 2.0;
    std::string fn;
    double t = 0.0;
    double x = 0.0;
    bool has_t = false, has_x = false;
    double abs_tol = 1e-13;
    int max_levels = 12;
    bool check = false;
};

inline std::string run_ptrig(const PtrigArgs& a) {
    PExponent pe(a.p);
    QuadratureConfig cfg{a.abs_tol, a.max_levels};
    JsonWriter w;
    w.begin_object();
    w.key("fn").value(a.fn);
    w.key("p").value(a.p);
    if (a.fn == "pi_p") {
        const double closed = a.check ? pi_p_checked(pe, cfg) : pi_p(pe);
        w.key("value").value(closed);
        if (a.check) w.key("defining_integral").value(pi_p_integral(pe, cfg));
    } else if (a.fn == "arccos_p") {
        if (!a.has_x) throw std::invalid_argument("ptrig: arccos_p needs --x");
        w.key("x").value(a.x);
        w.key("value").value(arccos_p(pe, a.x, cfg));
    } else if (a.fn == "arccosh_p") {
        if (!a.has_x) throw std::invalid_argument("ptrig: arccosh_p needs --x");
        w.key("x").value(a.x);
        w.key("value").value(arccosh_p(pe, a.x, cfg));
    } else if (a.fn == "cos_p") {
        if (!a.has_t) throw std::invalid_argument("ptrig: cos_p needs --t");
        const auto v = cos_p(pe, a.t, cfg);
        w.key("t").value(a.t);
        w.key("value").value(v.value);
        w.key("derivative").value(v.derivative);
    } else if (a.fn == "cosh_p") {
        if (!a.has_t) throw std::invalid_argument("ptrig: cosh_p needs --t");
        const auto v = cosh_p(pe, a.t, cfg);
        w.key("t").value(a.t);
        w.key("value").value(v.value);
        w.key("derivative").value(v.derivative);
    } else {
        throw std::invalid_argument(
            "ptrig: --fn must be one of pi_p, arccos_p, cos_p, arccosh_p, cosh_p");
    }
    w.end_object();
    return w.str();
}

}  // namespace cli_detail

/// Parses argv-style arguments (program name excluded), runs the requested
/// subcommand, and writes the result to `out`.  Diagnostics go to `err`.
inline int run(std::vector<std::string> args, std::ostream& out,
               std::ostream& err) {
    CLI::App app{"Polya-type bounds for the first Robin eigenvalue of the "
                 "anisotropic p-Laplacian, with desk-scale verification"};
    app.require_subcommand(1);

    // ptrig
    cli_detail::PtrigArgs pt;
    auto* ptrig_cmd = app.add_subcommand(
        "ptrig", "Evaluate pi_p and the generalized trigonometric functions");
    ptrig_cmd->add_option("--p", pt.p, "exponent p > 1")->required();
    ptrig_cmd->add_option("--fn", pt.fn,
                          "pi_p | arccos_p | cos_p | arccosh_p | cosh_p")
        ->required();
    auto* t_opt = ptrig_cmd->add_option("--t", pt.t, "argument for cos_p/cosh_p");
    auto* x_opt = ptrig_cmd->add_option("--x", pt.x, "argument for arccos_p/arccosh_p");
    ptrig_cmd->add_option("--abs-tol", pt.abs_tol, "quadrature tolerance");
    ptrig_cmd->add_option("--max-levels", pt.max_levels, "quadrature refinement cap");
    ptrig_cmd->add_flag("--check", pt.check,
                        "cross-check pi_p against its defining integral");

    // mu1
    double m_p = 2.0, m_beta = 0.0, m_s0 = 1.0, m_tol = 1e-12;
    auto* mu1_cmd = app.add_subcommand(
        "mu1", "First eigenvalue of the one-dimensional Robin problem");
    mu1_cmd->add_option("--p", m_p, "exponent p > 1")->required();
    mu1_cmd->add_option("--beta", m_beta, "Robin parameter")->required();
    mu1_cmd->add_option("--s0", m_s0, "interval length")->required();
    mu1_cmd->add_option("--tol", m_tol, "bisection relative tolerance");

    // geometry
    std::string g_input;
    auto* geom_cmd = app.add_subcommand(
        "geometry", "Area, anisotropic perimeter, s0 and inradius of a domain");
    geom_cmd->add_option("--input", g_input, "domain-spec JSON file")->required();

    // bounds
    std::string b_input, b_format = "json", b_label;
    double b_p = 2.0, b_beta = 0.0;
    auto* bounds_cmd = app.add_subcommand(
        "bounds", "All closed-form eigenvalue and torsion bounds for a domain");
    bounds_cmd->add_option("--input", b_input, "domain-spec JSON file")->required();
    bounds_cmd->add_option("--p", b_p, "exponent p > 1")->required();
    bounds_cmd->add_option("--beta", b_beta, "Robin parameter")->required();
    bounds_cmd->add_option("--format", b_format, "json | csv");
    bounds_cmd->add_option("--label", b_label, "domain label for CSV output");

    // verify rect / fem
    auto* verify_cmd = app.add_subcommand(
        "verify", "Exact or finite-element checks of the eigenvalue bound");
    verify_cmd->require_subcommand(1);
    double vr_a = 1.0, vr_l = 1.0, vr_beta = 1.0;
    auto* vrect = verify_cmd->add_subcommand(
        "rect", "exact separable rectangle eigenvalue vs the sharp bound (p = 2)");
    vrect->add_option("--a", vr_a, "rectangle width")->required();
    vrect->add_option("--l", vr_l, "rectangle height")->required();
    vrect->add_option("--beta", vr_beta, "Robin parameter (> 0)")->required();
    std::string vf_input;
    double vf_p = 2.0, vf_beta = 1.0;
    int vf_n = 16, vf_bq = 8, vf_restarts = 1;
    auto* vfem = verify_cmd->add_subcommand(
        "fem", "P1 Rayleigh upper estimate on a polygon");
    vfem->add_option("--input", vf_input, "domain-spec JSON file")->required();
    vfem->add_option("--p", vf_p, "exponent p > 1")->required();
    vfem->add_option("--beta", vf_beta, "Robin parameter")->required();
    vfem->add_option("--n", vf_n, "mesh subdivisions per unit length");
    vfem->add_option("--bq-order", vf_bq, "boundary quadrature points per edge");
    vfem->add_option("--restarts", vf_restarts,
                     "perturbed descent restarts (general p)");

    // slab
    double s_a = 1.0, s_beta = 1.0, s_lmax = 200.0;
    auto* slab_cmd = app.add_subcommand(
        "slab", "Slab-limit experiment: lambda/mu ratio along elongating rectangles");
    slab_cmd->add_option("--a", s_a, "slab thickness")->required();
    slab_cmd->add_option("--beta", s_beta, "Robin parameter (> 0)")->required();
    slab_cmd->add_option("--lmax", s_lmax, "largest slab length");

    // torsion disk / fem
    auto* torsion_cmd = app.add_subcommand(
        "torsion", "Torsional rigidity bounds and estimates");
    torsion_cmd->require_subcommand(1);
    double td_R = 1.0, td_beta = 1.0;
    std::string td_variant = "both";
    auto* tdisk = torsion_cmd->add_subcommand(
        "disk", "exact p = 2 disk torsion vs the closed-form lower bounds");
    tdisk->add_option("--R", td_R, "disk radius")->required();
    tdisk->add_option("--beta", td_beta, "Robin parameter (> 0)")->required();
    tdisk->add_option("--variant", td_variant, "as_stated | as_derived | both");
    std::string tf_input;
    double tf_p = 2.0, tf_beta = 1.0;
    int tf_n = 16, tf_bq = 8, tf_restarts = 1;
    auto* tfem = torsion_cmd->add_subcommand(
        "fem", "P1 torsion lower estimate on a polygon");
    tfem->add_option("--input", tf_input, "domain-spec JSON file")->required();
    tfem->add_option("--p", tf_p, "exponent p > 1")->required();
    tfem->add_option("--beta", tf_beta, "Robin parameter (> 0)")->required();
    tfem->add_option("--n", tf_n, "mesh subdivisions per unit length");
    tfem->add_option("--bq-order", tf_bq, "boundary quadrature points per edge");
    tfem->add_option("--restarts", tf_restarts,
                     "perturbed ascent restarts (general p)");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*ptrig_cmd) {
            pt.has_t = t_opt->count() > 0;
            pt.has_x = x_opt->count() > 0;
            out << cli_detail::run_ptrig(pt) << "\n";
        } else if (*mu1_cmd) {
            RobinParams rp(PExponent(m_p), m_beta, m_s0);
            out << mu1_result_json(rp, mu1(rp, m_tol)) << "\n";
        } else if (*geom_cmd) {
            const auto spec = load_domain_spec(g_input);
            out << geometry_json(polygon_summary(spec.polygon, spec.norm),
                                 spec.norm)
                << "\n";
        } else if (*bounds_cmd) {
            if (b_format != "json" && b_format != "csv")
                throw std::invalid_argument("bounds: --format must be json or csv");
            const auto spec = load_domain_spec(b_input);
            const auto report =
                build_report(PExponent(b_p), b_beta, spec.norm, spec.polygon);
            if (b_format == "csv")
                out << bound_report_csv(report, spec.norm.describe(),
                                        b_label.empty() ? b_input : b_label);
            else
                out << bound_report_json(report, spec.norm.describe()) << "\n";
        } else if (*vrect) {
            if (!(vr_beta > 0.0))
                throw std::invalid_argument("verify rect: --beta must be > 0");
            const double lambda = rect_exact_lambda_p2(vr_a, vr_l, vr_beta);
            const double s0 = vr_a * vr_l / (2.0 * (vr_a + vr_l));
            const double mu = mu1(RobinParams(PExponent(2.0), vr_beta, s0)).mu;
            JsonWriter w;
            w.begin_object();
            w.key("a").value(vr_a);
            w.key("l").value(vr_l);
            w.key("beta").value(vr_beta);
            w.key("lambda_exact").value(lambda);
            w.key("s0").value(s0);
            w.key("mu1").value(mu);
            w.key("margin").value(mu - lambda);
            w.key("ratio").value(lambda / mu);
            w.end_object();
            out << w.str() << "\n";
        } else if (*vfem) {
            const auto spec = load_domain_spec(vf_input);
            const PExponent pe(vf_p);
            const auto est = rayleigh_upper(spec.polygon, pe, vf_beta, spec.norm,
                                            MeshSpec{vf_n, vf_bq}, vf_restarts);
            const auto geom = polygon_summary(spec.polygon, spec.norm);
            JsonWriter w;
            w.begin_object();
            w.key("p").value(vf_p);
            w.key("beta").value(vf_beta);
            w.key("norm").value(spec.norm.describe());
            w.key("estimate");
            write_estimate(w, est);
            w.key("robin_theorem1").value(mu1(RobinParams(pe, vf_beta, geom.s0)).mu);
            w.end_object();
            out << w.str() << "\n";
        } else if (*slab_cmd) {
            if (!(s_lmax >= 1.0))
                throw std::invalid_argument("slab: --lmax must be >= 1");
            std::vector<double> ells;
            for (double l : {1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0, 200.0})
                if (l <= s_lmax) ells.push_back(l);
            out << slab_csv(slab_experiment(s_a, s_beta, ells));
        } else if (*tdisk) {
            if (!(td_R > 0.0) || !(td_beta > 0.0))
                throw std::invalid_argument("torsion disk: --R and --beta must be > 0");
            if (td_variant != "both" && td_variant != "as_stated" &&
                td_variant != "as_derived")
                throw std::invalid_argument(
                    "torsion disk: --variant must be as_stated, as_derived or both");
            const double pi = 3.14159265358979323846;
            GeometrySummary disk;
            disk.area = pi * td_R * td_R;
            disk.perimeter_F = 2.0 * pi * td_R;
            disk.s0 = disk.area / disk.perimeter_F;
            disk.inradius_F = td_R;
            const double exact = disk_torsion_exact_p2(td_R, td_beta);
            PExponent p2(2.0);
            JsonWriter w;
            w.begin_object();
            w.key("R").value(td_R);
            w.key("beta").value(td_beta);
            w.key("tau_exact").value(exact);
            if (td_variant != "as_derived") {
                const double v =
                    torsion_lower(p2, td_beta, disk, TorsionVariant::as_stated);
                w.key("as_stated").value(v);
                w.key("as_stated_is_lower_bound").value(v <= exact + 1e-12);
            }
            if (td_variant != "as_stated") {
                const double v =
                    torsion_lower(p2, td_beta, disk, TorsionVariant::as_derived);
                w.key("as_derived").value(v);
                w.key("as_derived_is_lower_bound").value(v <= exact + 1e-12);
            }
            w.end_object();
            out << w.str() << "\n";
        } else if (*tfem) {
            const auto spec = load_domain_spec(tf_input);
            const PExponent pe(tf_p);
            const auto est =
                torsion_numeric_lower(spec.polygon, pe, tf_beta, spec.norm,
                                      MeshSpec{tf_n, tf_bq}, tf_restarts);
            const auto geom = polygon_summary(spec.polygon, spec.norm);
            JsonWriter w;
            w.begin_object();
            w.key("p").value(tf_p);
            w.key("beta").value(tf_beta);
            w.key("norm").value(spec.norm.describe());
            w.key("estimate");
            write_estimate(w, est);
            w.key("tau_estimate").value(tau_estimate(est, pe));
            w.key("torsion_as_derived")
                .value(torsion_lower(pe, tf_beta, geom, TorsionVariant::as_derived));
            w.end_object();
            out << w.str() << "\n";
        }
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

}  // namespace robinpolya::cli
