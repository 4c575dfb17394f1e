#include "qgtlab/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "qgtlab/berry.hpp"
#include "qgtlab/csv.hpp"
#include "qgtlab/errors.hpp"

namespace qgt {

namespace {

std::string format_short(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%g", value);
    return buffer;
}

struct FitGroupData {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

std::vector<FitGroupData> load_fit_groups(const std::string& path,
                                          const std::string& value_column) {
    const CsvTable table = CsvTable::read_file(path);
    std::vector<FitGroupData> groups;

    if (table.has_column("schema")) {
        table.require_schema(kSweepSchema);
        const std::size_t l_col = table.column("L");
        const std::size_t method_col = table.column("method");
        const std::size_t gap_col = table.column("gap");
        const std::string column = value_column.empty() ? "q_00" : value_column;
        const std::size_t v_col = table.column(column);
        std::map<std::string, FitGroupData> by_params;
        for (const auto& row : table.rows) {
            std::string label;
            for (std::size_t c = method_col + 1; c < gap_col; ++c) {
                if (!label.empty()) label += ';';
                label += row[c];
            }
            auto& group = by_params[label];
            group.label = label;
            group.points.emplace_back(parse_double(row[l_col]), parse_double(row[v_col]));
        }
        groups.reserve(by_params.size());
        for (auto& [label, group] : by_params) groups.push_back(std::move(group));
        return groups;
    }

    // Bare (L, q) table.
    const std::size_t l_col = table.column("L");
    const std::string column = value_column.empty() ? "q" : value_column;
    const std::size_t v_col = table.column(column);
    FitGroupData group;
    for (const auto& row : table.rows)
        group.points.emplace_back(parse_double(row[l_col]), parse_double(row[v_col]));
    groups.push_back(std::move(group));
    return groups;
}

std::string fitted_curve_expression(const ScalingFit& fit) {
    std::ostringstream expr;
    expr << format_double(fit.coefficients(0));
    switch (fit.model) {
        case FitModel::Gapless:
            expr << " + " << format_double(fit.coefficients(1)) << "/x";
            break;
        case FitModel::GaplessIrrelevant:
            expr << " + " << format_double(fit.coefficients(1)) << "/x + "
                 << format_double(fit.coefficients(2)) << "*x**("
                 << format_double(3.0 - 2.0 * *fit.fixed.delta_v2) << ")";
            break;
        case FitModel::Logarithmic:
            expr << " + " << format_double(fit.coefficients(1)) << "/x + "
                 << format_double(fit.coefficients(2)) << "/(x*log(x))";
            break;
        case FitModel::Massive:
            expr << " + " << format_double(fit.coefficients(1)) << "*exp(-x/"
                 << format_double(*fit.fixed.xi) << ")/sqrt(x)";
            break;
        case FitModel::Slope:
            break;
    }
    return expr.str();
}

}  // namespace

FitReport run_fit(const FitArgs& args, std::ostream& log) {
    const auto groups = load_fit_groups(args.input_path, args.value_column);

    FitReport report;
    report.output_path = args.output_path;
    report.plot_path = args.plot_path.empty() ? args.output_path + ".gnuplot" : args.plot_path;

    const std::vector<std::string> header{"schema", "fit_model", "group",  "A1",
                                          "A2",     "A3",        "stderr_slope", "delta_v2",
                                          "xi",     "min_L",     "n_points",     "rss",
                                          "r2",     "condition"};
    std::vector<std::vector<std::string>> rows;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    for (const auto& group : groups) {
        FitGroupResult result;
        result.group = group.label;
        double a1 = nan, a2 = nan, a3 = nan, stderr_slope = nan, rss = nan, r2 = nan,
               condition = nan;
        std::size_t n_points = group.points.size();
        try {
            if (args.model == FitModel::Slope) {
                result.slope = extract_slope(group.points);
                a1 = result.slope.slope;
                a2 = result.slope.intercept;
                stderr_slope = result.slope.stderr_slope;
                rss = result.slope.rss;
                r2 = result.slope.r_squared;
            } else {
                result.fit = fit_fss(group.points, args.model, args.fixed, args.min_size);
                a1 = result.fit.coefficients(0);
                a2 = result.fit.coefficients(1);
                if (result.fit.coefficients.size() > 2) a3 = result.fit.coefficients(2);
                rss = result.fit.rss;
                r2 = result.fit.r_squared;
                condition = result.fit.condition_number;
                n_points = result.fit.sizes.size();
            }
            result.ok = true;
        } catch (const std::exception& e) {
            result.ok = false;
            result.error = e.what();
            ++report.failures;
            log << "fit failed for group '" << group.label << "': " << e.what() << "\n";
        }
        rows.push_back({kFitSchema, to_string(args.model), group.label, format_double(a1),
                        format_double(a2), format_double(a3), format_double(stderr_slope),
                        format_double(args.fixed.delta_v2.value_or(nan)),
                        format_double(args.fixed.xi.value_or(nan)),
                        format_double(args.min_size), std::to_string(n_points),
                        format_double(rss), format_double(r2), format_double(condition)});
        report.groups.push_back(std::move(result));
    }

    write_csv_file(args.output_path, header, rows);

    // Plot script: data points plus the fitted curves, g/L against L.
    std::ostringstream script;
    script << "# fit of '" << args.input_path << "'\n"
           << "# coefficients in '" << args.output_path << "'\n"
           << "set datafile separator ','\n"
           << "set key autotitle columnhead\n"
           << "set xlabel 'L'\n"
           << "set ylabel 'q = g/L'\n";
    std::string plot_items;
    {
        const CsvTable table = CsvTable::read_file(args.input_path);
        const std::size_t l_col = table.column("L") + 1;
        std::string column = args.value_column;
        if (column.empty()) column = table.has_column("schema") ? "q_00" : "q";
        const std::size_t v_col = table.column(column) + 1;
        plot_items = "'" + args.input_path + "' using " + std::to_string(l_col) + ":" +
                     std::to_string(v_col) + " with points";
    }
    int curve = 0;
    for (const auto& group : report.groups) {
        if (!group.ok || args.model == FitModel::Slope) continue;
        const std::string name = "f" + std::to_string(curve++);
        script << name << "(x) = " << fitted_curve_expression(group.fit) << "\n";
        plot_items += ", " + name + "(x) with lines title '" +
                      (group.group.empty() ? std::string("fit") : group.group) + "'";
    }
    script << "plot " << plot_items << "\n";
    {
        std::ofstream out(report.plot_path, std::ios::binary);
        if (!out) throw Error("cannot write '" + report.plot_path + "'");
        out << script.str();
    }
    log << "fit rows written to '" << args.output_path << "', plot script '"
        << report.plot_path << "'\n";
    return report;
}

void run_exponents(const ExponentArgs& args, std::ostream& out) {
    ScalingInput input;
    if (args.generic) {
        input = *args.generic;
    } else if (args.xxz_lambda) {
        // The anisotropy perturbation's leading (marginal) component.
        input = ScalingInput{1.0, 1.0, 2.0, 2.0, input.delta_lambda};
    } else if (args.quasi_free_preset) {
        // Most relevant admissible operator for quasi-free fermions.
        input = ScalingInput{1.0, 1.0, 1.0, 1.0, 1.0};
    } else {
        throw BadData("exponents: supply a generic input, an xxz lambda, or the preset");
    }

    const double dq = delta_Q(input);
    out << "Delta_Q = " << format_short(dq) << "\n";
    if (input.delta_lambda != 0.0) {
        const auto off = predicted_offcritical(input);
        out << "off-critical exponent Delta_Q/Delta_lambda = " << format_short(off.exponent)
            << " (" << (off.divergent ? "divergent" : off.exponent == 0.0 ? "marginal"
                                                                          : "non-divergent")
            << ")\n";
    } else {
        out << "off-critical exponent Delta_Q/Delta_lambda = undefined\n";
    }
    const auto fss = predicted_critical_fss(input);
    out << "critical finite-size scaling: q ~ L^" << format_short(fss.q_exponent) << " ("
        << to_string(fss.classification) << ")\n";
    out << "super-extensive condition d + 2 zeta - 2 Delta_V > 0: "
        << (fss.superextensive_condition ? "yes" : "no") << "\n";

    if (args.xxz_lambda) {
        const double lambda = *args.xxz_lambda;
        const double k = K_of_lambda(lambda);
        const double dv2 = 4.0 * k;
        const char* nature = dv2 > 2.0 ? "irrelevant" : dv2 < 2.0 ? "relevant" : "marginal";
        out << "XXZ at lambda = " << format_short(lambda)
            << ": Delta_V = 2 (marginal), Delta_V2 = 4K = " << format_short(dv2) << " ("
            << nature << ", K = " << format_short(k) << ")\n";
        out << "suggested finite-size form: q = A1 + A2/L\n";
    }
    if (args.quasi_free_preset)
        out << "quasi-free: Q ~ L^2 at the transition, g ~ L/|lambda - lambda_c| nearby\n";
}

int run_berry_mesh(const BerryMeshArgs& args, std::ostream& log) {
    const Eigen::VectorXd axis0 =
        Eigen::Map<const Eigen::VectorXd>(args.axis0.data(), args.axis0.size());
    const Eigen::VectorXd axis1 =
        Eigen::Map<const Eigen::VectorXd>(args.axis1.data(), args.axis1.size());
    const CurvatureField field =
        berry_curvature_plaquette(args.model, axis0, axis1, args.policy);

    const std::vector<std::string> header{"schema", args.model.param_names[0],
                                          args.model.param_names[1], "F"};
    std::vector<std::vector<std::string>> rows;
    for (Eigen::Index i = 0; i < field.values.rows(); ++i)
        for (Eigen::Index j = 0; j < field.values.cols(); ++j)
            rows.push_back({kBerrySchema, format_double(field.axis0_centers(i)),
                            format_double(field.axis1_centers(j)),
                            format_double(field.values(i, j))});
    write_csv_file(args.out_path, header, rows);
    log << "curvature field (" << field.values.rows() << "x" << field.values.cols()
        << " plaquettes) written to '" << args.out_path << "'\n";
    return 0;
}

BerryLoopReport run_berry_loop(const BerryLoopArgs& args, std::ostream& out) {
    BerryLoopReport report;
    report.phase = berry_phase_loop(args.model, args.loop, args.policy);

    // Refinement diagnostic: insert segment midpoints and recompute.
    std::vector<std::array<double, 2>> refined;
    refined.reserve(2 * args.loop.size());
    for (std::size_t j = 0; j + 1 < args.loop.size(); ++j) {
        refined.push_back(args.loop[j]);
        refined.push_back({0.5 * (args.loop[j][0] + args.loop[j + 1][0]),
                           0.5 * (args.loop[j][1] + args.loop[j + 1][1])});
    }
    refined.push_back(args.loop.back());
    report.refined_phase = berry_phase_loop(args.model, refined, args.policy);
    report.refinement_change =
        std::abs(std::remainder(report.refined_phase - report.phase, 2.0 * M_PI));

    out << "loop phase = " << format_double(report.phase) << "\n";
    out << "refined (2x points) = " << format_double(report.refined_phase)
        << ", change = " << format_double(report.refinement_change) << "\n";
    return report;
}

void run_gap(const GapArgs& args, std::ostream& out) {
    out << "gap = " << format_double(gap(args.model, args.policy)) << "\n";
}

}  // namespace qgt
