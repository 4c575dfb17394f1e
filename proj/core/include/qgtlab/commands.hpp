#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qgtlab/scaling.hpp"
#include "qgtlab/sweep.hpp"

namespace qgt {

// Implementations behind the CLI subcommands, callable from tests.

struct FitArgs {
    std::string input_path;
    std::string output_path;
    std::string plot_path;  // empty: derived from output_path
    FitModel model = FitModel::Gapless;
    FitFixed fixed;
    double min_size = 0.0;
    std::string value_column;  // empty: "q" for bare tables, "q_00" for sweeps
};

struct FitGroupResult {
    std::string group;  // parameter values of the group, or "" for bare tables
    bool ok = false;
    std::string error;
    ScalingFit fit;      // valid when ok and model != Slope
    SlopeFit slope;      // valid when ok and model == Slope
};

struct FitReport {
    std::vector<FitGroupResult> groups;
    std::string output_path;
    std::string plot_path;
    int failures = 0;
};

// Reads (L, value) groups from a sweep CSV or a bare (L, q) table, fits each
// group, writes one fit row per group plus a gnuplot script.
FitReport run_fit(const FitArgs& args, std::ostream& log);

struct ExponentArgs {
    std::optional<ScalingInput> generic;
    std::optional<double> xxz_lambda;
    bool quasi_free_preset = false;
};

// Prints Delta_Q, the off-critical exponent, the finite-size classification and,
// for XXZ inputs, the (marginal, irrelevant) operator dimensions.
void run_exponents(const ExponentArgs& args, std::ostream& out);

struct BerryMeshArgs {
    ModelSpec model;
    std::vector<double> axis0;
    std::vector<double> axis1;
    std::string out_path;
    SolvePolicy policy;
};

// Writes the plaquette curvature field as CSV rows (p0, p1, F).
int run_berry_mesh(const BerryMeshArgs& args, std::ostream& log);

struct BerryLoopArgs {
    ModelSpec model;
    std::vector<std::array<double, 2>> loop;  // closed polyline
    SolvePolicy policy;
};

struct BerryLoopReport {
    double phase = 0.0;
    double refined_phase = 0.0;     // with doubled points
    double refinement_change = 0.0; // |wrapped difference|
};

BerryLoopReport run_berry_loop(const BerryLoopArgs& args, std::ostream& out);

struct GapArgs {
    ModelSpec model;
    SolvePolicy policy;
};

void run_gap(const GapArgs& args, std::ostream& out);

}  // namespace qgt
