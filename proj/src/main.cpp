// entroflow CLI: build model spaces, run weighted heat flows, evaluate the
// entropy-functional series, execute verification suites, probe the sharp
// log-Sobolev constant, and emit CSV/JSON artifacts (optionally SVG plots).
//
// Exit codes: 0 success / all checks pass; 1 check failure; 2 schema error
// (message names the offending key path); 3 numeric or solver failure;
// 4 boundary contamination under --strict; 5 inconclusive under --strict.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "entroflow/closedform.hpp"
#include "entroflow/errors.hpp"
#include "entroflow/functionals.hpp"
#include "entroflow/heatflow.hpp"
#include "entroflow/io.hpp"
#include "entroflow/kernels.hpp"
#include "entroflow/lsiopt.hpp"
#include "entroflow/space.hpp"
#include "entroflow/verify.hpp"

namespace ef = entroflow;
using nlohmann::json;

namespace {

constexpr double kBoundaryCap = 1e-6;  // strict-mode contamination threshold

struct Common {
    std::string config_path;
    std::string out_dir;
    bool strict = false;
    bool plots = false;
    unsigned long long seed = 12345;
};

json load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ef::SchemaError("", "cannot open config file: " + path);
    json j;
    try {
        f >> j;
    } catch (const json::parse_error& e) {
        throw ef::SchemaError("", std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ef::SchemaError("", "config root must be an object");
    return j;
}

const json& require_key(const json& j, const char* key) {
    if (!j.contains(key)) throw ef::SchemaError(key, "missing required key");
    return j.at(key);
}

double num_or(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) throw ef::SchemaError(key, "expected a number");
    return j.at(key).get<double>();
}

std::string out_path(const Common& c, const char* name) {
    return (std::filesystem::path(c.out_dir) / name).string();
}

void ensure_out_dir(const Common& c) {
    std::error_code ec;
    std::filesystem::create_directories(c.out_dir, ec);
    if (ec) throw ef::NumericError("cannot create output directory: " + c.out_dir);
}

struct FlowBundle {
    ef::WeightedSpace1D space;
    ef::FlowResult flow;
    ef::FunctionalSeries series;
    double N = 1.0, K = 0.0, a = 0.0;
    std::string solver_name = "spectral";
};

const char* solver_name(ef::SolverKind k) {
    switch (k) {
        case ef::SolverKind::spectral: return "spectral";
        case ef::SolverKind::crank_nicolson: return "cn";
        default: return "closed_form";
    }
}

// Closed-form models cover the Euclidean line and the cone vertex kernel;
// the series is filled from exact formulas and densities are sampled onto
// the grid only for flow.csv.
FlowBundle run_closed_form(const ef::SpaceSpec& spec,
                           const std::vector<double>& times, double N, double K,
                           double a) {
    ef::ClosedFormModel::Kind kind;
    if (spec.preset == ef::Preset::cone_half_line)
        kind = ef::ClosedFormModel::Kind::cone_vertex;
    else if (spec.preset == ef::Preset::cone_full_line)
        kind = ef::ClosedFormModel::Kind::euclidean;
    else
        throw ef::SchemaError("flow.solver",
                              "closed_form requires a cone_half_line or "
                              "cone_full_line space");
    const ef::ClosedFormModel model = ef::heat_kernel_closed_form(kind, N);

    FlowBundle b;
    b.space = ef::build_model_space(spec);
    b.N = N;
    b.K = K;
    b.a = a;
    b.solver_name = "closed_form";
    b.flow.times = times;
    b.flow.solver = ef::SolverKind::closed_form;
    ef::FunctionalSeries& s = b.series;
    s.N = N;
    s.K = K;
    s.a = a;
    s.t = times;
    for (double t : times) {
        const double H = model.shannon_entropy(t);
        const double I = model.fisher_information(t);
        s.H.push_back(H);
        s.I.push_back(I);
        s.gamma2.push_back(model.gamma2_integral(t));
        s.H_N.push_back(ef::h_n_value(H, N, t));
        s.H_NK.push_back(ef::h_nk_value(H, N, K, t));
        s.entropy_power.push_back(model.entropy_power(t));
        s.W_N.push_back(model.w_entropy(t));
        s.W_NK.push_back(ef::w_nk_value(H, I, N, K, t));
        // The kernel Hessian of log u is the constant -1/2t, so every square
        // in the dissipation decomposition vanishes identically.
        s.T1.push_back(0.0);
        s.T2.push_back(0.0);
        s.T3.push_back(0.0);
        try {
            s.ye_Ya.push_back(ef::ye_entropy_value(H, I, N, K, t, a));
        } catch (const ef::NumericError&) {
            s.ye_Ya.push_back(std::numeric_limits<double>::quiet_NaN());
        }
        s.quad.push_back({});
        b.flow.densities.push_back(model.sample(b.space, t));
        b.flow.diagnostics.push_back({});
    }
    if (times.size() >= 3) {
        const ef::DerivativeEstimates de = ef::estimate_derivatives(s.t, s.H);
        s.dH_fd = de.dH;
        s.d2H_fd = de.d2H;
        for (std::size_t j = 0; j < times.size(); ++j)
            s.wang_WK.push_back(
                ef::wang_entropy_value(s.H[j], s.dH_fd[j], N, K, s.t[j]));
    } else {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        s.dH_fd.assign(times.size(), nan);
        s.d2H_fd.assign(times.size(), nan);
        s.wang_WK.assign(times.size(), nan);
    }
    return b;
}

FlowBundle run_flow_bundle(const json& cfg, const Common& common) {
    const ef::SpaceSpec spec = ef::space_from_json(require_key(cfg, "space"), "space");
    const double N = num_or(cfg, "N", spec.N);
    const double K = num_or(cfg, "K", 0.0);
    const double a = num_or(cfg, "a", 0.0);
    const json& fj = require_key(cfg, "flow");
    const ef::FlowConfig fcfg = ef::flow_config_from_json(fj, "flow");
    std::vector<double> times = ef::times_from_json(require_key(fj, "times"), "flow.times");
    const double origin = num_or(cfg, "time_origin", 0.0);

    if (fcfg.solver == ef::SolverKind::closed_form)
        return run_closed_form(spec, times, N, K, a);

    FlowBundle b;
    b.space = ef::build_model_space(spec);
    b.N = N;
    b.K = K;
    b.a = a;
    b.solver_name = solver_name(fcfg.solver);

    ef::Density rho0;
    if (cfg.contains("initial_density")) {
        rho0 = ef::density_from_json(b.space, cfg.at("initial_density"),
                                     "initial_density", common.seed);
    } else {
        rho0.u.assign(b.space.size(), 1.0);
        ef::normalize_density(b.space, rho0.u);
    }

    std::vector<double> solver_times = times;
    if (origin != 0.0) {
        for (double& t : solver_times) {
            t -= origin;
            if (!(t > 0.0))
                throw ef::SchemaError("time_origin",
                                      "every time must exceed time_origin");
        }
    }
    b.flow = ef::solve_flow(b.space, rho0, solver_times, fcfg);
    b.flow.times = times;  // report absolute times
    for (std::size_t j = 0; j < b.flow.densities.size(); ++j)
        b.flow.densities[j].time_tag = times[j];

    if (common.strict) {
        for (const ef::FlowDiagnostics& d : b.flow.diagnostics)
            if (d.boundary_mass > kBoundaryCap)
                throw ef::BoundaryContamination(
                    "boundary mass exceeds contamination cap");
    }
    b.series = ef::evaluate_series(b.space, b.flow, N, K, a);
    return b;
}

void maybe_plots(const Common& common, const ef::FunctionalSeries& s) {
    if (!common.plots) return;
    ef::write_series_svg(out_path(common, "H.svg"), "H(t)", s.t, s.H);
    ef::write_series_svg(out_path(common, "I.svg"), "I(t)", s.t, s.I);
    ef::write_series_svg(out_path(common, "entropy_power.svg"), "entropy power",
                         s.t, s.entropy_power);
    ef::write_series_svg(out_path(common, "W_N.svg"), "W_N(t)", s.t, s.W_N);
}

int cmd_space(const Common& common) {
    const json cfg = load_config(common.config_path);
    const ef::SpaceSpec spec = ef::space_from_json(require_key(cfg, "space"), "space");
    const ef::WeightedSpace1D space = ef::build_model_space(spec);
    ensure_out_dir(common);
    ef::write_space_csv(out_path(common, "space.csv"), space);

    const double center = num_or(cfg, "center", space.periodic() ? space.a : 0.0);
    std::vector<double> radii;
    if (cfg.contains("radii")) {
        for (const json& v : cfg.at("radii")) {
            if (!v.is_number()) throw ef::SchemaError("radii", "expected numbers");
            radii.push_back(v.get<double>());
        }
    } else {
        double dmax = 0.5 * space.span();
        if (!space.periodic())
            dmax = std::max(space.b - center, center - space.a);
        for (int k = 1; k <= 8; ++k) radii.push_back(dmax * 0.1 * k);
    }
    ef::write_volumes_csv(out_path(common, "volumes.csv"), space, center, radii);

    const ef::RatioEstimate kappa = ef::volume_ratio_kappa(space, center);
    json kj;
    kj["kappa"] = kappa.value;
    kj["converged"] = kappa.converged;
    ef::write_json(out_path(common, "kappa.json"), kj);
    return 0;
}

int cmd_flow(const Common& common) {
    const json cfg = load_config(common.config_path);
    const FlowBundle b = run_flow_bundle(cfg, common);
    ensure_out_dir(common);
    ef::write_flow_csv(out_path(common, "flow.csv"), b.space, b.flow);
    ef::write_functionals_csv(out_path(common, "functionals.csv"), b.series);
    maybe_plots(common, b.series);
    return 0;
}

std::size_t nearest_time_index(const std::vector<double>& times, double t,
                               const char* key) {
    if (times.empty()) throw ef::SchemaError(key, "no times available");
    std::size_t best = 0;
    double bd = std::abs(times[0] - t);
    for (std::size_t j = 1; j < times.size(); ++j) {
        const double d = std::abs(times[j] - t);
        if (d < bd) {
            bd = d;
            best = j;
        }
    }
    return best;
}

int cmd_verify(const Common& common) {
    const json cfg = load_config(common.config_path);
    const FlowBundle b = run_flow_bundle(cfg, common);
    const json& checks = require_key(cfg, "checks");
    if (!checks.is_array()) throw ef::SchemaError("checks", "expected an array");

    std::vector<ef::CheckResult> results;
    std::size_t ci = 0;
    for (const json& cj : checks) {
        const std::string cpath = "checks[" + std::to_string(ci++) + "]";
        if (!cj.is_object()) throw ef::SchemaError(cpath, "expected an object");
        if (!cj.contains("name") || !cj.at("name").is_string())
            throw ef::SchemaError(cpath + ".name", "missing check name");
        const std::string name = cj.at("name").get<std::string>();
        const double tol = num_or(cj, "tol", 1e-6);

        if (name == "edi") {
            results.push_back(ef::check_edi(b.series, tol));
        } else if (name == "w_monotone") {
            ef::WEntropyKind kind = ef::WEntropyKind::w_n;
            const std::string ks =
                cj.contains("kind") ? cj.at("kind").get<std::string>() : "W_N";
            if (ks == "W_N") kind = ef::WEntropyKind::w_n;
            else if (ks == "W_NK") kind = ef::WEntropyKind::w_nk;
            else if (ks == "wang") kind = ef::WEntropyKind::wang;
            else if (ks == "ye") kind = ef::WEntropyKind::ye;
            else throw ef::SchemaError(cpath + ".kind", "unknown W-entropy kind");
            results.push_back(ef::check_w_monotone(b.series, kind, tol));
        } else if (name == "entropy_power_concavity") {
            results.push_back(ef::check_entropy_power_concavity(b.series, tol));
        } else if (name == "niw_identity") {
            if (b.solver_name == "closed_form")
                throw ef::SchemaError(cpath + ".name",
                                      "niw_identity needs a grid flow");
            results.push_back(ef::check_niw_identity(
                b.space, b.flow, b.series, num_or(cj, "tol_rel", 1e-3),
                num_or(cj, "tol_abs", 1e-4)));
        } else if (name == "li_yau") {
            results.push_back(ef::check_li_yau(b.space, b.flow, b.N, b.K,
                                               num_or(cj, "alpha", 1.0), tol));
        } else if (name == "fisher_bound") {
            results.push_back(ef::check_fisher_bound(b.series, tol));
        } else if (name == "hwi_type" || name == "eks_distortion") {
            const double t0 = num_or(cj, "t0", b.flow.times.front());
            const double t1 = num_or(cj, "t1", b.flow.times.back());
            const std::size_t j0 =
                nearest_time_index(b.flow.times, t0, (cpath + ".t0").c_str());
            const std::size_t j1 =
                nearest_time_index(b.flow.times, t1, (cpath + ".t1").c_str());
            if (name == "hwi_type")
                results.push_back(ef::check_hwi_type(b.space,
                                                     b.flow.densities[j0].u,
                                                     b.flow.densities[j1].u, tol));
            else
                results.push_back(ef::check_eks_distortion(
                    b.space, b.flow.densities[j0].u, b.flow.densities[j1].u, b.N,
                    b.K, tol));
        } else if (name == "stam_lsi") {
            const double t = num_or(cj, "t", b.flow.times.back());
            const std::size_t j =
                nearest_time_index(b.flow.times, t, (cpath + ".t").c_str());
            double kappa;
            if (cj.contains("kappa")) {
                kappa = num_or(cj, "kappa", 1.0);
            } else {
                const double center = num_or(cj, "center", 0.0);
                kappa = ef::volume_ratio_kappa(b.space, center).value;
            }
            results.push_back(ef::check_stam_lsi(b.space, b.flow.densities[j].u,
                                                 b.N, kappa, tol));
        } else {
            throw ef::SchemaError(cpath + ".name", "unknown check '" + name + "'");
        }
    }

    ensure_out_dir(common);
    json rj;
    rj["suite"] = cfg.contains("suite") ? cfg.at("suite").get<std::string>() : "";
    rj["results"] = json::array();
    bool any_fail = false, any_inconclusive = false;
    for (const ef::CheckResult& r : results) {
        rj["results"].push_back(ef::check_to_json(r));
        if (r.status == ef::CheckStatus::fail) any_fail = true;
        if (r.status == ef::CheckStatus::inconclusive) any_inconclusive = true;
    }
    rj["environment"] = {{"grid_size", b.space.size()}, {"solver", b.solver_name}};
    ef::write_json(out_path(common, "report.json"), rj);
    ef::write_functionals_csv(out_path(common, "functionals.csv"), b.series);

    if (any_fail) return 1;
    if (any_inconclusive && common.strict) return 5;
    return 0;
}

int cmd_lsi(const Common& common) {
    const json cfg = load_config(common.config_path);
    const ef::SpaceSpec spec = ef::space_from_json(require_key(cfg, "space"), "space");
    const ef::WeightedSpace1D space = ef::build_model_space(spec);
    ef::OptProblem prob;
    prob.N = num_or(cfg, "N", 1.0);
    prob.K = num_or(cfg, "K", 0.0);
    prob.t = num_or(cfg, "t", 0.25);
    prob.step = num_or(cfg, "step", 0.0);
    prob.max_iter = static_cast<int>(num_or(cfg, "max_iter", 500));
    prob.grad_tol = num_or(cfg, "grad_tol", 1e-5);

    const ef::OptResult res = ef::minimize_w_entropy(space, prob);
    ensure_out_dir(common);
    json rj;
    rj["mu"] = res.mu_value;
    rj["el_residual"] = res.el_residual;
    rj["iters"] = res.iterations;
    ef::write_json(out_path(common, "result.json"), rj);
    ef::write_minimizer_csv(out_path(common, "minimizer.csv"), space, res.minimizer);
    if (!res.converged && common.strict)
        throw ef::NumericError("optimizer did not reach the gradient tolerance");
    return 0;
}

int cmd_rigidity(const Common& common) {
    const json cfg = load_config(common.config_path);
    const FlowBundle b = run_flow_bundle(cfg, common);
    ef::RigidityOptions opts;
    opts.center = num_or(cfg, "center", 0.0);
    if (cfg.contains("radius_pairs")) {
        opts.radius_pairs.clear();
        for (const json& pr : cfg.at("radius_pairs")) {
            if (!pr.is_array() || pr.size() != 2)
                throw ef::SchemaError("radius_pairs", "expected [r, R] pairs");
            opts.radius_pairs.push_back(
                {pr[0].get<double>(), pr[1].get<double>()});
        }
    }
    opts.tol_h = num_or(cfg, "tol_h", opts.tol_h);
    opts.tol_w = num_or(cfg, "tol_w", opts.tol_w);
    opts.tol_lap = num_or(cfg, "tol_lap", opts.tol_lap);
    opts.tol_bg = num_or(cfg, "tol_bg", opts.tol_bg);

    const ef::RigidityReport rep = ef::rigidity_scan(b.space, b.series, b.N, opts);
    ensure_out_dir(common);
    json rj;
    rj["status"] = rep.rigid ? "RIGID" : "NON-RIGID";
    rj["dominant"] = rep.dominant;
    rj["parts"] = json::array();
    for (const ef::CheckResult& p : rep.parts)
        rj["parts"].push_back(ef::check_to_json(p));
    ef::write_json(out_path(common, "rigidity.json"), rj);
    ef::write_functionals_csv(out_path(common, "functionals.csv"), b.series);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entroflow: entropy functionals along weighted 1-D heat flow"};
    app.require_subcommand(1);

    Common common;
    // ENTROFLOW_THREADS caps worker parallelism; every kernel in this build
    // is sequential, so any positive value is accepted and acts as 1.
    if (const char* tv = std::getenv("ENTROFLOW_THREADS")) {
        const long n = std::strtol(tv, nullptr, 10);
        if (n < 1) {
            std::fprintf(stderr, "schema error at 'ENTROFLOW_THREADS': must be >= 1\n");
            return 2;
        }
    }

    std::vector<CLI::App*> subs;
    for (const char* name : {"space", "flow", "verify", "lsi", "rigidity"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", common.config_path, "JSON config path")
            ->required();
        sub->add_option("--out", common.out_dir, "output directory")->required();
        sub->add_flag("--strict", common.strict, "strict mode");
        sub->add_flag("--plots", common.plots, "emit SVG plots");
        sub->add_option("--seed", common.seed, "seed for randomized densities");
        subs.push_back(sub);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (subs[0]->parsed()) return cmd_space(common);
        if (subs[1]->parsed()) return cmd_flow(common);
        if (subs[2]->parsed()) return cmd_verify(common);
        if (subs[3]->parsed()) return cmd_lsi(common);
        if (subs[4]->parsed()) return cmd_rigidity(common);
        std::fprintf(stderr, "no command selected\n");
        return 2;
    } catch (const ef::SchemaError& e) {
        std::fprintf(stderr, "schema error at '%s': %s\n", e.key_path().c_str(),
                     e.what());
        return 2;
    } catch (const ef::BoundaryContamination& e) {
        std::fprintf(stderr, "boundary contamination: %s\n", e.what());
        return 4;
    } catch (const ef::NumericError& e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
