// qgt — parameter sweeps, scaling fits, exponent tables, geometric phases and
// gaps for lattice spin-chain ground states. See README.md for examples.

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <sstream>

#include "qgtlab/berry.hpp"
#include "qgtlab/commands.hpp"
#include "qgtlab/config.hpp"
#include "qgtlab/csv.hpp"
#include "qgtlab/errors.hpp"
#include "qgtlab/version.hpp"

namespace {

struct ModelOptions {
    std::string config_path;
    std::string model = "xxz";
    int sites = 8;
    std::string boundary = "periodic";
    double coupling = 1.0;
    std::vector<double> params;  // point values (berry/gap); sweep uses grids

    bool model_given = false, sites_given = false, boundary_given = false,
         coupling_given = false, params_given = false;
};

void add_model_flags(CLI::App* cmd, ModelOptions& options) {
    cmd->add_option("--config", options.config_path,
                    "key-value config file (kind, L, boundary, J, params)");
    cmd->add_option("--model", options.model, "xxz | xxz-field | tfim | rotated-xy | qubit")
        ->each([&](const std::string&) { options.model_given = true; });
    cmd->add_option("--L", options.sites, "chain length")
        ->each([&](const std::string&) { options.sites_given = true; });
    cmd->add_option("--boundary", options.boundary, "periodic | open")
        ->each([&](const std::string&) { options.boundary_given = true; });
    cmd->add_option("--J", options.coupling, "coupling J")
        ->each([&](const std::string&) { options.coupling_given = true; });
    cmd->add_option("--params", options.params, "parameter point (comma separated)")
        ->delimiter(',')
        ->each([&](const std::string&) { options.params_given = true; });
}

// Flags override config-file values; config supplies what flags leave unset.
void merge_config(ModelOptions& options) {
    if (options.config_path.empty()) return;
    const auto config = qgt::parse_key_value_file(options.config_path);
    const auto get = [&](const char* key) -> std::optional<std::string> {
        const auto it = config.find(key);
        if (it == config.end()) return std::nullopt;
        return it->second;
    };
    if (!options.model_given)
        if (auto v = get("kind")) options.model = *v;
    if (!options.sites_given)
        if (auto v = get("L")) options.sites = static_cast<int>(qgt::parse_double(*v));
    if (!options.boundary_given)
        if (auto v = get("boundary")) options.boundary = *v;
    if (!options.coupling_given)
        if (auto v = get("J")) options.coupling = qgt::parse_double(*v);
    if (!options.params_given)
        if (auto v = get("params")) options.params = qgt::parse_double_list(*v);
}

int model_param_count(const std::string& name) {
    if (name == "xxz" || name == "tfim") return 1;
    return 2;
}

qgt::ModelSpec build_model(const ModelOptions& options, const std::vector<double>& params) {
    using qgt::Boundary;
    using qgt::ModelSpec;
    const Boundary boundary = qgt::boundary_from_string(options.boundary);
    if (options.model == "xxz")
        return ModelSpec::xxz(options.sites, boundary, options.coupling, params.at(0));
    if (options.model == "xxz-field")
        return ModelSpec::xxz_with_field(options.sites, boundary, options.coupling,
                                         params.at(0), params.at(1));
    if (options.model == "tfim")
        return ModelSpec::tfim(options.sites, boundary, options.coupling, params.at(0));
    if (options.model == "rotated-xy")
        return ModelSpec::rotated_xy(options.sites, boundary, options.coupling, params.at(0),
                                     params.at(1));
    if (options.model == "qubit")
        return ModelSpec::qubit_in_field(params.at(0), params.at(1));
    throw qgt::InvalidModel("unknown model '" + options.model + "'");
}

std::vector<double> point_params(const ModelOptions& options) {
    if (static_cast<int>(options.params.size()) != model_param_count(options.model))
        throw qgt::InvalidModel("model '" + options.model + "' needs " +
                                std::to_string(model_param_count(options.model)) +
                                " parameter(s); use --params or a config file");
    return options.params;
}

void add_policy_flags(CLI::App* cmd, qgt::SolvePolicy& policy) {
    cmd->add_option("--cap", policy.dimension_cap, "basis-dimension cap");
    cmd->add_option("--dense-cap", policy.dense_cap, "complete-spectrum dimension cap");
    cmd->add_option("--dense-preference", policy.dense_preference,
                    "use the dense solver at or below this dimension");
    cmd->add_option("--tol", policy.lanczos.tol, "lanczos residual tolerance");
    cmd->add_option("--max-iter", policy.lanczos.max_iter, "lanczos iteration cap");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum geometric tensor laboratory"};
    app.set_version_flag("--version", qgt::kVersion);
    app.require_subcommand(1);

    // --- sweep ---
    auto* sweep_cmd = app.add_subcommand("sweep", "compute Q over an (L, lambda) grid");
    ModelOptions sweep_model;
    add_model_flags(sweep_cmd, sweep_model);
    std::string sizes_text, lambda_text, lambda2_text = "0", method_text = "fd";
    qgt::SweepPlan plan;
    sweep_cmd->add_option("--sizes", sizes_text, "L list, e.g. 8:20:2 or 8,12")->required();
    sweep_cmd->add_option("--lambda", lambda_text, "grid for the first parameter")->required();
    sweep_cmd->add_option("--lambda2", lambda2_text, "grid for the second parameter");
    sweep_cmd->add_option("--method", method_text, "fd | spectral | corr");
    sweep_cmd->add_option("--dlambda", plan.dlambda, "fd-overlap step");
    sweep_cmd->add_option("--out", plan.out_path, "output CSV path")->required();
    sweep_cmd->add_option("--workers", plan.workers, "parallel point solves");
    sweep_cmd->add_option("--seed", plan.seed, "base RNG seed");
    add_policy_flags(sweep_cmd, plan.policy);

    // --- fit ---
    auto* fit_cmd = app.add_subcommand("fit", "finite-size fits of a sweep dataset");
    qgt::FitArgs fit_args;
    std::string fit_model_text = "gapless";
    double delta_v2 = 0.0, xi = 0.0;
    bool has_delta_v2 = false, has_xi = false;
    fit_cmd->add_option("--in", fit_args.input_path, "input CSV")->required();
    fit_cmd->add_option("--out", fit_args.output_path, "fit CSV")->required();
    fit_cmd->add_option("--plot", fit_args.plot_path, "plot script path");
    fit_cmd->add_option("--fit-model", fit_model_text,
                        "gapless | gapless-irrelevant | logarithmic | massive | slope");
    fit_cmd->add_option("--delta-v2", delta_v2, "irrelevant operator dimension (4K)")
        ->each([&](const std::string&) { has_delta_v2 = true; });
    fit_cmd->add_option("--xi", xi, "correlation length for the massive model")
        ->each([&](const std::string&) { has_xi = true; });
    fit_cmd->add_option("--min-L", fit_args.min_size, "drop points with L below this");
    fit_cmd->add_option("--column", fit_args.value_column, "value column (default q_00 / q)");

    // --- exponents ---
    auto* exp_cmd = app.add_subcommand("exponents", "scaling-exponent calculator");
    qgt::ScalingInput generic;
    bool has_generic = false;
    double xxz_lambda = 0.0;
    bool has_xxz_lambda = false, quasi_free = false;
    exp_cmd->add_option("--d", generic.dimension, "spatial dimension")
        ->each([&](const std::string&) { has_generic = true; });
    exp_cmd->add_option("--zeta", generic.dynamical, "dynamical exponent")
        ->each([&](const std::string&) { has_generic = true; });
    exp_cmd->add_option("--delta-mu", generic.delta_mu, "scaling dimension of V_mu")
        ->each([&](const std::string&) { has_generic = true; });
    exp_cmd->add_option("--delta-nu", generic.delta_nu, "scaling dimension of V_nu")
        ->each([&](const std::string&) { has_generic = true; });
    exp_cmd->add_option("--delta-lambda", generic.delta_lambda,
                        "scaling dimension of the driving parameter")
        ->each([&](const std::string&) { has_generic = true; });
    exp_cmd->add_option("--xxz-lambda", xxz_lambda, "XXZ anisotropy")
        ->each([&](const std::string&) { has_xxz_lambda = true; });
    exp_cmd->add_flag("--quasi-free", quasi_free, "quasi-free fermion preset");

    // --- berry ---
    auto* berry_cmd = app.add_subcommand("berry", "curvature field or loop phase");
    ModelOptions berry_model;
    add_model_flags(berry_cmd, berry_model);
    qgt::SolvePolicy berry_policy;
    add_policy_flags(berry_cmd, berry_policy);
    std::string p1_text, p2_text, berry_out, loop_text;
    double circle_at = 0.0;
    int circle_fixed = 0, circle_points = 4096;
    bool has_circle = false;
    berry_cmd->add_option("--p1", p1_text, "mesh axis for the first parameter");
    berry_cmd->add_option("--p2", p2_text, "mesh axis for the second parameter");
    berry_cmd->add_option("--out", berry_out, "curvature CSV path");
    berry_cmd->add_option("--loop", loop_text, "closed polyline 'a,b;c,d;...;a,b'");
    berry_cmd->add_option("--circle-at", circle_at, "fixed value of the held parameter")
        ->each([&](const std::string&) { has_circle = true; });
    berry_cmd->add_option("--circle-fixed", circle_fixed, "index of the held parameter (0|1)");
    berry_cmd->add_option("--circle-points", circle_points, "points on the circle");

    // --- gap ---
    auto* gap_cmd = app.add_subcommand("gap", "lowest excitation energy");
    ModelOptions gap_model;
    add_model_flags(gap_cmd, gap_model);
    qgt::SolvePolicy gap_policy;
    add_policy_flags(gap_cmd, gap_policy);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*sweep_cmd) {
            merge_config(sweep_model);
            plan.sizes = qgt::parse_int_list(sizes_text);
            plan.method = qgt::qgt_method_from_string(method_text);
            const int m = model_param_count(sweep_model.model);
            plan.param_grid = {qgt::parse_double_list(lambda_text)};
            if (m == 2) plan.param_grid.push_back(qgt::parse_double_list(lambda2_text));
            std::vector<double> probe(m, 0.0);
            for (int mu = 0; mu < m; ++mu) probe[mu] = plan.param_grid[mu].front();
            ModelOptions base = sweep_model;
            base.sites = plan.sizes.front();
            plan.base = build_model(base, probe);
            const auto outcome = qgt::run_sweep(plan);
            std::cerr << "sweep: " << outcome.manifest.points.size() << " points, "
                      << outcome.manifest.failures << " failed; csv '" << plan.out_path
                      << "'\n";
            return outcome.exit_code;
        }
        if (*fit_cmd) {
            fit_args.model = qgt::fit_model_from_string(fit_model_text);
            if (has_delta_v2) fit_args.fixed.delta_v2 = delta_v2;
            if (has_xi) fit_args.fixed.xi = xi;
            const auto report = qgt::run_fit(fit_args, std::cerr);
            return report.failures > 0 ? 2 : 0;
        }
        if (*exp_cmd) {
            qgt::ExponentArgs args;
            if (has_xxz_lambda)
                args.xxz_lambda = xxz_lambda;
            else if (quasi_free)
                args.quasi_free_preset = true;
            else if (has_generic)
                args.generic = generic;
            else
                throw qgt::BadData(
                    "exponents: use --xxz-lambda, --quasi-free, or the generic flags");
            qgt::run_exponents(args, std::cout);
            return 0;
        }
        if (*berry_cmd) {
            merge_config(berry_model);
            const auto params = point_params(berry_model);
            const qgt::ModelSpec model = build_model(berry_model, params);
            if (!loop_text.empty() || has_circle) {
                qgt::BerryLoopArgs args{model, {}, berry_policy};
                if (has_circle) {
                    args.loop = qgt::circle_loop(circle_fixed, circle_at, circle_points);
                } else {
                    std::stringstream stream(loop_text);
                    std::string point;
                    while (std::getline(stream, point, ';')) {
                        const auto values = qgt::parse_double_list(point);
                        if (values.size() != 2)
                            throw qgt::BadData("loop points need two coordinates");
                        args.loop.push_back({values[0], values[1]});
                    }
                }
                qgt::run_berry_loop(args, std::cout);
                return 0;
            }
            if (p1_text.empty() || p2_text.empty() || berry_out.empty())
                throw qgt::BadData("berry mesh mode needs --p1, --p2 and --out");
            qgt::BerryMeshArgs args{model, qgt::parse_double_list(p1_text),
                                    qgt::parse_double_list(p2_text), berry_out, berry_policy};
            return qgt::run_berry_mesh(args, std::cerr);
        }
        if (*gap_cmd) {
            merge_config(gap_model);
            const qgt::ModelSpec model = build_model(gap_model, point_params(gap_model));
            qgt::run_gap({model, gap_policy}, std::cout);
            return 0;
        }
    } catch (const qgt::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
