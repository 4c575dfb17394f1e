#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qgtlab/model.hpp"
#include "qgtlab/qgt.hpp"

namespace qgt {

// One (L, params) sweep over the model family. Points are enumerated sorted by
// (L, params); the grid is the cartesian product of the per-parameter value lists.
struct SweepPlan {
    ModelSpec base;                              // params act as placeholders
    std::vector<int> sizes;                      // L values
    std::vector<std::vector<double>> param_grid; // one list per parameter
    QgtMethod method = QgtMethod::FdOverlap;
    double dlambda = 1e-3;                       // fd-overlap step, every parameter
    std::string out_path;
    int workers = 1;
    std::uint64_t seed = 42;
    SolvePolicy policy;

    void validate() const;  // throws InvalidPlan
    std::size_t point_count() const;
};

struct PointOutcome {
    int sites = 0;
    std::vector<double> params;
    bool ok = false;
    std::string error;
    double seconds = 0.0;
    double gap = 0.0;
    QGTResult result;  // valid when ok
};

struct RunManifest {
    std::string tool_version;
    std::string schema;
    std::map<std::string, std::string> config;  // fully resolved plan
    std::vector<PointOutcome> points;
    std::string csv_path;
    std::uint64_t csv_checksum = 0;  // FNV-1a 64 over the emitted bytes
    int failures = 0;

    std::string to_json() const;
    void write(const std::string& path) const;
};

struct SweepOutcome {
    RunManifest manifest;
    int exit_code = 0;  // 0 ok, 2 partial failures
};

// Runs every planned point (failures are recorded, never fatal), writes the CSV
// dataset and the JSON manifest next to it (<out>.manifest.json).
SweepOutcome run_sweep(const SweepPlan& plan);

// CSV header for a sweep over a model with the given parameter names.
std::vector<std::string> sweep_csv_header(const std::vector<std::string>& param_names);

}  // namespace qgt
