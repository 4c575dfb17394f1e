#include <benchmark/benchmark.h>

#include <random>

#include "qgtlab/hamiltonian.hpp"
#include "qgtlab/qgt.hpp"
#include "qgtlab/spectra.hpp"

namespace {

qgt::SparseOperator xxz_operator(int sites) {
    const auto spec = qgt::ModelSpec::xxz(sites, qgt::Boundary::Periodic, 1.0, 0.5);
    return qgt::build_hamiltonian(spec, qgt::ground_sector(spec));
}

void BM_SectorBasis(benchmark::State& state) {
    const int sites = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto sector = qgt::SymmetrySector::total_sz(sites, 0);
        benchmark::DoNotOptimize(sector.dimension());
    }
}
BENCHMARK(BM_SectorBasis)->Arg(16)->Arg(20);

void BM_BuildHamiltonian(benchmark::State& state) {
    const int sites = static_cast<int>(state.range(0));
    const auto spec = qgt::ModelSpec::xxz(sites, qgt::Boundary::Periodic, 1.0, 0.5);
    const auto sector = qgt::ground_sector(spec);
    for (auto _ : state) {
        auto op = qgt::build_hamiltonian(spec, sector);
        benchmark::DoNotOptimize(op.nnz());
    }
}
BENCHMARK(BM_BuildHamiltonian)->Arg(12)->Arg(16);

void BM_SparseApply(benchmark::State& state) {
    const auto op = xxz_operator(static_cast<int>(state.range(0)));
    std::mt19937_64 rng(1);
    std::normal_distribution<double> gauss;
    Eigen::VectorXcd x(op.dimension());
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = {gauss(rng), gauss(rng)};
    Eigen::VectorXcd y(op.dimension());
    for (auto _ : state) {
        op.apply(x.data(), y.data());
        benchmark::DoNotOptimize(y.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(op.nnz()));
}
BENCHMARK(BM_SparseApply)->Arg(14)->Arg(16)->Arg(18);

void BM_SparseApplyReal(benchmark::State& state) {
    const auto op = xxz_operator(static_cast<int>(state.range(0)));
    std::mt19937_64 rng(1);
    std::normal_distribution<double> gauss;
    Eigen::VectorXd x(op.dimension()), y(op.dimension());
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = gauss(rng);
    for (auto _ : state) {
        op.apply_real(x.data(), y.data());
        benchmark::DoNotOptimize(y.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(op.nnz()));
}
BENCHMARK(BM_SparseApplyReal)->Arg(14)->Arg(16)->Arg(18);

void BM_LanczosGroundState(benchmark::State& state) {
    const auto op = xxz_operator(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto data = qgt::lanczos_lowest_k(op, 1);
        benchmark::DoNotOptimize(data.eigenvalues(0));
    }
}
BENCHMARK(BM_LanczosGroundState)->Arg(12)->Arg(14)->Unit(benchmark::kMillisecond);

void BM_DenseSpectrum(benchmark::State& state) {
    const auto op = xxz_operator(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto data = qgt::dense_spectrum(op);
        benchmark::DoNotOptimize(data.eigenvalues(0));
    }
}
BENCHMARK(BM_DenseSpectrum)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_QgtSpectralSum(benchmark::State& state) {
    const auto spec =
        qgt::ModelSpec::xxz(static_cast<int>(state.range(0)), qgt::Boundary::Periodic, 1.0, 0.5);
    for (auto _ : state) {
        auto result = qgt::qgt_spectral_sum(spec);
        benchmark::DoNotOptimize(result.tensor(0, 0));
    }
}
BENCHMARK(BM_QgtSpectralSum)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
