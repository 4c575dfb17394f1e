#include "qgtlab/sweep.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "qgtlab/csv.hpp"
#include "qgtlab/errors.hpp"
#include "qgtlab/version.hpp"

namespace qgt {

namespace {

std::vector<std::vector<double>> cartesian_grid(const std::vector<std::vector<double>>& lists) {
    std::vector<std::vector<double>> points{{}};
    for (const auto& list : lists) {
        std::vector<std::vector<double>> extended;
        extended.reserve(points.size() * list.size());
        for (const auto& prefix : points)
            for (double value : list) {
                auto point = prefix;
                point.push_back(value);
                extended.push_back(std::move(point));
            }
        points = std::move(extended);
    }
    return points;
}

}  // namespace

void SweepPlan::validate() const {
    base.validate();
    if (sizes.empty()) throw InvalidPlan("size list is empty");
    if (param_grid.size() != static_cast<std::size_t>(base.num_params()))
        throw InvalidPlan("need one value list per model parameter");
    for (const auto& list : param_grid)
        if (list.empty()) throw InvalidPlan("parameter grid has an empty axis");
    if (dlambda <= 0.0) throw InvalidPlan("dlambda must be positive");
    if (workers < 1) throw InvalidPlan("workers must be >= 1");
    for (int size : sizes) {
        if (base.kind == ModelKind::QubitInField && size != 1)
            throw InvalidPlan("qubit sweeps require L = 1");
        if (base.conserves_total_sz() && size % 2 != 0)
            throw InvalidPlan("xxz sweeps use the Sz = 0 sector; odd L rejected");
        ModelSpec probe = base;
        probe.sites = size;
        probe.validate();
        ground_sector(probe, policy.dimension_cap);  // enforces the capacity cap
    }
}

std::size_t SweepPlan::point_count() const {
    std::size_t grid = 1;
    for (const auto& list : param_grid) grid *= list.size();
    return sizes.size() * grid;
}

std::vector<std::string> sweep_csv_header(const std::vector<std::string>& param_names) {
    std::vector<std::string> header{"schema", "model", "L", "method"};
    for (const auto& name : param_names) header.push_back(name);
    header.push_back("gap");
    header.push_back("fidelity_min");
    const auto m = param_names.size();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            header.push_back("ReQ_" + std::to_string(i) + std::to_string(j));
            header.push_back("ImQ_" + std::to_string(i) + std::to_string(j));
        }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            header.push_back("q_" + std::to_string(i) + std::to_string(j));
    return header;
}

SweepOutcome run_sweep(const SweepPlan& plan) {
    plan.validate();
    const auto grid = cartesian_grid(plan.param_grid);

    struct Point {
        int sites;
        std::vector<double> params;
    };
    std::vector<Point> points;
    points.reserve(plan.point_count());
    for (int size : plan.sizes)
        for (const auto& params : grid) points.push_back({size, params});

    std::vector<PointOutcome> outcomes(points.size());
    std::atomic<std::size_t> next{0};

    const auto solve_point = [&](std::size_t index) {
        const Point& point = points[index];
        PointOutcome& outcome = outcomes[index];
        outcome.sites = point.sites;
        outcome.params = point.params;
        const auto start = std::chrono::steady_clock::now();
        try {
            ModelSpec spec = plan.base;
            spec.sites = point.sites;
            spec.params = point.params;
            spec.validate();
            SolvePolicy policy = plan.policy;
            policy.lanczos.seed = plan.seed + index;  // per-point, worker-count independent
            switch (plan.method) {
                case QgtMethod::FdOverlap: {
                    const std::vector<double> deltas(spec.params.size(), plan.dlambda);
                    outcome.result = qgt_fd_overlap(spec, deltas, policy);
                    break;
                }
                case QgtMethod::SpectralSum:
                    outcome.result = qgt_spectral_sum(spec, policy);
                    break;
                case QgtMethod::CorrIntegral:
                    outcome.result = qgt_corr_integral(spec, Quadrature::Adaptive, policy);
                    break;
            }
            outcome.gap = outcome.result.diagnostics.gap;
            outcome.ok = true;
        } catch (const std::exception& e) {
            outcome.ok = false;
            outcome.error = e.what();
        }
        outcome.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    if (plan.workers <= 1) {
        for (std::size_t i = 0; i < points.size(); ++i) solve_point(i);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < plan.workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < points.size();
                     i = next.fetch_add(1))
                    solve_point(i);
            });
        for (auto& thread : pool) thread.join();
    }

    // CSV rows in plan order (already sorted by L, then params lexicographically).
    const auto header = sweep_csv_header(plan.base.param_names);
    std::vector<std::vector<std::string>> rows;
    int failures = 0;
    for (const auto& outcome : outcomes) {
        if (!outcome.ok) {
            ++failures;
            continue;
        }
        std::vector<std::string> row{kSweepSchema, to_string(plan.base.kind),
                                     std::to_string(outcome.sites), to_string(plan.method)};
        for (double p : outcome.params) row.push_back(format_double(p));
        row.push_back(format_double(outcome.result.diagnostics.gap));
        row.push_back(format_double(outcome.result.diagnostics.fidelity_min));
        const auto& q = outcome.result.tensor;
        for (Eigen::Index i = 0; i < q.rows(); ++i)
            for (Eigen::Index j = 0; j < q.cols(); ++j) {
                row.push_back(format_double(q(i, j).real()));
                row.push_back(format_double(q(i, j).imag()));
            }
        for (Eigen::Index i = 0; i < q.rows(); ++i)
            for (Eigen::Index j = 0; j < q.cols(); ++j)
                row.push_back(format_double(q(i, j).real() / outcome.sites));
        rows.push_back(std::move(row));
    }
    write_csv_file(plan.out_path, header, rows);

    SweepOutcome result;
    result.manifest.tool_version = kVersion;
    result.manifest.schema = kSweepSchema;
    result.manifest.config = {
        {"model", to_string(plan.base.kind)},
        {"boundary", to_string(plan.base.boundary)},
        {"J", format_double(plan.base.coupling)},
        {"method", to_string(plan.method)},
        {"dlambda", format_double(plan.dlambda)},
        {"workers", std::to_string(plan.workers)},
        {"seed", std::to_string(plan.seed)},
        {"dense_cap", std::to_string(plan.policy.dense_cap)},
        {"dense_preference", std::to_string(plan.policy.dense_preference)},
        {"dimension_cap", std::to_string(plan.policy.dimension_cap)},
        {"lanczos_tol", format_double(plan.policy.lanczos.tol)},
        {"lanczos_max_iter", std::to_string(plan.policy.lanczos.max_iter)},
        {"out", plan.out_path},
    };
    {
        std::string sizes_text;
        for (std::size_t i = 0; i < plan.sizes.size(); ++i)
            sizes_text += (i ? "," : "") + std::to_string(plan.sizes[i]);
        result.manifest.config["L"] = sizes_text;
        for (std::size_t p = 0; p < plan.param_grid.size(); ++p) {
            std::string grid_text;
            for (std::size_t i = 0; i < plan.param_grid[p].size(); ++i)
                grid_text += (i ? "," : "") + format_double(plan.param_grid[p][i]);
            result.manifest.config["grid." + plan.base.param_names[p]] = grid_text;
        }
    }
    result.manifest.points = std::move(outcomes);
    result.manifest.csv_path = plan.out_path;
    result.manifest.csv_checksum = fnv1a64(read_file_bytes(plan.out_path));
    result.manifest.failures = failures;
    result.manifest.write(plan.out_path + ".manifest.json");
    result.exit_code = failures > 0 ? 2 : 0;
    return result;
}

std::string RunManifest::to_json() const {
    nlohmann::json j;
    j["tool_version"] = tool_version;
    j["schema"] = schema;
    j["config"] = config;
    j["csv"] = {{"path", csv_path}, {"fnv1a64", csv_checksum}};
    j["failures"] = failures;
    j["points"] = nlohmann::json::array();
    for (const auto& p : points) {
        nlohmann::json point;
        point["L"] = p.sites;
        point["params"] = p.params;
        point["status"] = p.ok ? "done" : "failed";
        point["seconds"] = p.seconds;
        if (p.ok)
            point["gap"] = p.gap;
        else
            point["error"] = p.error;
        j["points"].push_back(std::move(point));
    }
    return j.dump(2) + "\n";
}

void RunManifest::write(const std::string& path) const {
    std::ofstream output(path, std::ios::binary);
    if (!output) throw Error("cannot write '" + path + "'");
    output << to_json();
}

}  // namespace qgt
