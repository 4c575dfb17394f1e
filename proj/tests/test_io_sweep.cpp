#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>

#include "qgtlab/berry.hpp"
#include "qgtlab/commands.hpp"
#include "qgtlab/config.hpp"
#include "qgtlab/csv.hpp"
#include "qgtlab/errors.hpp"
#include "qgtlab/sweep.hpp"
#include "test_support.hpp"

using namespace qgt;
using testsupport::temp_file;

TEST_SUITE("io") {

TEST_CASE("doubles round-trip at 17 digits") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double x = u(rng) * std::pow(10.0, trial % 17 - 8);
        CHECK(parse_double(format_double(x)) == x);
    }
    CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("csv read and write") {
    const std::string path = temp_file("roundtrip.csv");
    write_csv_file(path, {"a", "b"}, {{"1", "2"}, {"3", "4"}});
    const auto bytes = read_file_bytes(path);
    CHECK(bytes == "a,b\n1,2\n3,4\n");

    const auto table = CsvTable::read_file(path);
    CHECK(table.column("b") == 1);
    CHECK(table.rows.size() == 2);
    CHECK_THROWS_AS(table.column("c"), SchemaError);
    CHECK_FALSE(table.has_column("c"));

    CHECK_THROWS_AS(write_csv_file(path, {"a"}, {{"1", "2"}}), SchemaError);
}

TEST_CASE("schema tags are enforced") {
    const std::string path = temp_file("schema.csv");
    write_csv_file(path, {"schema", "x"}, {{"qgt.sweep.v1", "1"}, {"qgt.sweep.v2", "2"}});
    const auto table = CsvTable::read_file(path);
    CHECK_THROWS_AS(table.require_schema(kSweepSchema), SchemaError);
}

TEST_CASE("key-value config") {
    const auto config = parse_key_value_text(
        "# model block\nkind = xxz\nL= 12\n  J =1.5\nparams = 0.5, 0.25\n\n");
    CHECK(config.at("kind") == "xxz");
    CHECK(config.at("L") == "12");
    CHECK(config.at("J") == "1.5");
    CHECK(parse_double_list(config.at("params")) == std::vector<double>{0.5, 0.25});
    CHECK_THROWS_AS(parse_key_value_text("just words\n"), SchemaError);
}

TEST_CASE("list and range syntax") {
    CHECK(parse_int_list("8:20:2") == std::vector<int>{8, 10, 12, 14, 16, 18, 20});
    CHECK(parse_int_list("8,12") == std::vector<int>{8, 12});
    CHECK(parse_int_list("4") == std::vector<int>{4});
    const auto grid = parse_double_list("0:1:0.25");
    REQUIRE(grid.size() == 5);
    CHECK(grid[3] == doctest::Approx(0.75).epsilon(1e-15));
    CHECK_THROWS_AS(parse_double_list(""), SchemaError);
    CHECK_THROWS_AS(parse_double_list("1:0:1"), SchemaError);
    CHECK_THROWS_AS(parse_double_list("0:1:-1"), SchemaError);
}

namespace {

SweepPlan small_plan(const std::string& out_name) {
    SweepPlan plan;
    plan.base = ModelSpec::xxz(4, Boundary::Periodic, 1.0, 0.5);
    plan.sizes = {4, 6};
    plan.param_grid = {{0.3, 0.5}};
    plan.method = QgtMethod::SpectralSum;
    plan.out_path = temp_file(out_name);
    return plan;
}

}  // namespace

TEST_CASE("sweep writes sorted rows and a consistent manifest") {
    const auto plan = small_plan("sweep_basic.csv");
    const auto outcome = run_sweep(plan);
    CHECK(outcome.exit_code == 0);
    CHECK(outcome.manifest.failures == 0);
    REQUIRE(outcome.manifest.points.size() == 4);

    const auto table = CsvTable::read_file(plan.out_path);
    table.require_schema(kSweepSchema);
    REQUIRE(table.rows.size() == 4);
    const auto l_col = table.column("L");
    const auto lambda_col = table.column("lambda");
    double previous_l = 0, previous_lambda = -1;
    for (const auto& row : table.rows) {
        const double l = parse_double(row[l_col]);
        const double lambda = parse_double(row[lambda_col]);
        if (l == previous_l) CHECK(lambda > previous_lambda);
        CHECK(l >= previous_l);
        previous_l = l;
        previous_lambda = lambda;
    }

    // q column is the intensive metric.
    const auto q_col = table.column("q_00");
    const auto re_col = table.column("ReQ_00");
    for (const auto& row : table.rows)
        CHECK(parse_double(row[q_col]) ==
              doctest::Approx(parse_double(row[re_col]) / parse_double(row[l_col]))
                  .epsilon(1e-15));

    // Manifest checksum covers the emitted bytes.
    CHECK(outcome.manifest.csv_checksum == fnv1a64(read_file_bytes(plan.out_path)));
    const auto manifest_bytes = read_file_bytes(plan.out_path + ".manifest.json");
    CHECK(manifest_bytes.find("\"failures\": 0") != std::string::npos);
}

TEST_CASE("per-point failures never abort the sweep") {
    SweepPlan plan;
    plan.base = ModelSpec::tfim(4, Boundary::Periodic, 1.0, 1.0);
    plan.sizes = {4, 6};
    plan.param_grid = {{0.0, 1.0}};  // h = 0 has a degenerate ground state
    plan.method = QgtMethod::SpectralSum;
    plan.out_path = temp_file("sweep_failures.csv");
    const auto outcome = run_sweep(plan);
    CHECK(outcome.exit_code == 2);
    CHECK(outcome.manifest.failures == 2);
    int done = 0, failed = 0;
    for (const auto& point : outcome.manifest.points)
        point.ok ? ++done : ++failed;
    CHECK(done == 2);
    CHECK(failed == 2);
    CHECK(CsvTable::read_file(plan.out_path).rows.size() == 2);
}

TEST_CASE("determinism and worker independence") {
    auto plan = small_plan("sweep_det_a.csv");
    plan.method = QgtMethod::FdOverlap;  // exercises the seeded lanczos path too
    run_sweep(plan);
    const auto bytes_a = read_file_bytes(plan.out_path);

    plan.out_path = temp_file("sweep_det_b.csv");
    run_sweep(plan);
    CHECK(read_file_bytes(plan.out_path) == bytes_a);

    plan.out_path = temp_file("sweep_det_c.csv");
    plan.workers = 2;
    run_sweep(plan);
    CHECK(read_file_bytes(plan.out_path) == bytes_a);
}

TEST_CASE("plan validation") {
    auto plan = small_plan("unused.csv");
    plan.sizes = {4, 5};
    CHECK_THROWS_AS(plan.validate(), InvalidPlan);  // odd xxz size
    plan = small_plan("unused.csv");
    plan.sizes.clear();
    CHECK_THROWS_AS(plan.validate(), InvalidPlan);
    plan = small_plan("unused.csv");
    plan.dlambda = 0.0;
    CHECK_THROWS_AS(plan.validate(), InvalidPlan);
    plan = small_plan("unused.csv");
    plan.param_grid = {{}};
    CHECK_THROWS_AS(plan.validate(), InvalidPlan);
    plan = small_plan("unused.csv");
    plan.workers = 0;
    CHECK_THROWS_AS(plan.validate(), InvalidPlan);
    plan = small_plan("unused.csv");
    plan.sizes = {4, 40};  // sector would blow past the cap
    CHECK_THROWS_AS(plan.validate(), CapacityExceeded);
}

TEST_CASE("fit command on a sweep dataset and on a bare table") {
    // Synthetic bare table.
    const std::string bare = temp_file("bare.csv");
    {
        std::vector<std::vector<std::string>> rows;
        for (int size = 8; size <= 20; size += 2)
            rows.push_back({format_double(size), format_double(2.0 + 3.0 / size)});
        write_csv_file(bare, {"L", "q"}, rows);
    }
    FitArgs args;
    args.input_path = bare;
    args.output_path = temp_file("bare_fit.csv");
    std::ostringstream log;
    const auto report = run_fit(args, log);
    REQUIRE(report.groups.size() == 1);
    REQUIRE(report.groups[0].ok);
    CHECK(std::abs(report.groups[0].fit.coefficients(0) - 2.0) <= 1e-12);
    CHECK(std::abs(report.groups[0].fit.coefficients(1) - 3.0) <= 1e-12);

    const auto fit_table = CsvTable::read_file(args.output_path);
    fit_table.require_schema(kFitSchema);
    CHECK(parse_double(fit_table.rows[0][fit_table.column("A1")]) ==
          doctest::Approx(2.0).epsilon(1e-12));

    const auto script = read_file_bytes(report.plot_path);
    CHECK(script.find(bare) != std::string::npos);
    CHECK(script.find(args.output_path) != std::string::npos);
    CHECK(script.find("plot") != std::string::npos);

    // Groups from a real sweep dataset.
    const auto plan = small_plan("fit_source.csv");
    run_sweep(plan);
    FitArgs sweep_args;
    sweep_args.input_path = plan.out_path;
    sweep_args.output_path = temp_file("sweep_fit.csv");
    sweep_args.model = FitModel::Gapless;
    const auto sweep_report = run_fit(sweep_args, log);
    CHECK(sweep_report.groups.size() == 2);  // one per lambda
}

TEST_CASE("slope mode of the fit command") {
    const std::string path = temp_file("slope.csv");
    std::vector<std::vector<std::string>> rows;
    for (int size = 8; size <= 18; size += 2)
        rows.push_back({format_double(size), format_double(0.25 * size * size)});
    write_csv_file(path, {"L", "q"}, rows);

    FitArgs args;
    args.input_path = path;
    args.output_path = temp_file("slope_fit.csv");
    args.model = FitModel::Slope;
    std::ostringstream log;
    const auto report = run_fit(args, log);
    REQUIRE(report.groups.size() == 1);
    CHECK(report.groups[0].slope.slope == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("exponent report prints the headline numbers") {
    std::ostringstream out;
    run_exponents(ExponentArgs{{}, 0.5, false}, out);
    const std::string xxz = out.str();
    CHECK(xxz.find("Delta_Q = 1\n") != std::string::npos);
    CHECK(xxz.find("4K = 3") != std::string::npos);
    CHECK(xxz.find("sub-extensive") != std::string::npos);
    CHECK(xxz.find("q = A1 + A2/L") != std::string::npos);

    out.str("");
    run_exponents(ExponentArgs{{}, 1.0, false}, out);
    CHECK(out.str().find("4K = 2") != std::string::npos);
    CHECK(out.str().find("marginal") != std::string::npos);

    out.str("");
    run_exponents(ExponentArgs{{}, {}, true}, out);
    CHECK(out.str().find("Delta_Q = -1") != std::string::npos);
    CHECK(out.str().find("super-extensive") != std::string::npos);
}

TEST_CASE("gap and berry commands") {
    std::ostringstream out;
    run_gap({ModelSpec::xxz(2, Boundary::Open, 1.0, 1.0), {}}, out);
    CHECK(out.str() == "gap = 1\n");

    BerryMeshArgs mesh;
    mesh.model = ModelSpec::qubit_in_field(1.0, 0.0);
    mesh.axis0 = {0.4, 0.6, 0.8};
    mesh.axis1 = {0.0, 0.3, 0.6};
    mesh.out_path = temp_file("field.csv");
    std::ostringstream log;
    CHECK(run_berry_mesh(mesh, log) == 0);
    const auto table = CsvTable::read_file(mesh.out_path);
    table.require_schema(kBerrySchema);
    CHECK(table.rows.size() == 4);
    CHECK(table.column("theta") == 1);
    CHECK(table.column("F") == 3);

    BerryLoopArgs loop;
    loop.model = ModelSpec::qubit_in_field(1.0, 0.0);
    loop.loop = circle_loop(0, 1.0, 256);
    std::ostringstream loop_out;
    const auto report = run_berry_loop(loop, loop_out);
    CHECK(std::abs(std::remainder(report.phase - (-M_PI * (1.0 - std::cos(1.0))),
                                  2 * M_PI)) <= 1e-3);
    CHECK(report.refinement_change <= 1e-3);
    CHECK(loop_out.str().find("loop phase = ") != std::string::npos);
}

}  // TEST_SUITE
