#include <doctest.h>

#include <cstring>
#include <random>

#include "oracles.hpp"
#include "qgtlab/errors.hpp"
#include "qgtlab/hamiltonian.hpp"

using namespace qgt;

namespace {

Eigen::VectorXcd random_vector(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    Eigen::VectorXcd v(n);
    for (std::size_t i = 0; i < n; ++i) v(i) = Complex(gauss(rng), gauss(rng));
    return v;
}

}  // namespace

TEST_SUITE("sparse") {

TEST_CASE("identity apply") {
    std::vector<Triplet> t;
    for (std::uint32_t i = 0; i < 16; ++i) t.push_back({i, i, {1.0, 0.0}});
    const auto id = SparseOperator::from_triplets(16, t, true);
    const auto v = random_vector(16, 3);
    CHECK((id.apply(v) - v).norm() == 0.0);
}

TEST_CASE("dimension mismatch") {
    std::vector<Triplet> t{{0, 0, {1.0, 0.0}}};
    const auto op = SparseOperator::from_triplets(4, t, true);
    CHECK_THROWS_AS(op.apply(random_vector(5, 1)), DimensionMismatch);
    CHECK_THROWS_AS(SparseOperator::from_triplets(2, {{0, 3, {1.0, 0.0}}}, false),
                    DimensionMismatch);
}

TEST_CASE("duplicates are summed, zeros dropped") {
    std::vector<Triplet> t{{0, 1, {0.5, 0.0}}, {0, 1, {0.25, 0.0}}, {1, 0, {0.75, 0.0}},
                           {1, 1, {1.0, 0.0}}, {1, 1, {-1.0, 0.0}}};
    const auto op = SparseOperator::from_triplets(2, t, true);
    CHECK(op.nnz() == 2);
    CHECK(op.dense()(0, 1) == Complex{0.75, 0.0});
}

TEST_CASE("csr layout invariants") {
    const auto spec = ModelSpec::xxz(8, Boundary::Periodic, 1.0, 0.5);
    const auto op = build_hamiltonian(spec, ground_sector(spec));
    const auto& offsets = op.row_offsets();
    REQUIRE(offsets.size() == op.dimension() + 1);
    CHECK(offsets.front() == 0);
    CHECK(offsets.back() == static_cast<std::int64_t>(op.nnz()));
    for (std::size_t r = 0; r < op.dimension(); ++r) {
        CHECK(offsets[r] <= offsets[r + 1]);
        for (std::int64_t k = offsets[r]; k < offsets[r + 1]; ++k) {
            CHECK(op.col_indices()[k] < op.dimension());
            if (k > offsets[r]) CHECK(op.col_indices()[k - 1] < op.col_indices()[k]);
        }
    }
}

TEST_CASE("apply matches the dense oracle") {
    const auto spec = ModelSpec::xxz(10, Boundary::Periodic, 1.0, 0.5);
    const auto sector = ground_sector(spec);
    const auto op = build_hamiltonian(spec, sector);
    const Eigen::MatrixXcd dense =
        oracle::restrict_to_sector(oracle::kron_hamiltonian(spec), sector);
    auto v = random_vector(op.dimension(), 11);
    v.normalize();
    CHECK((op.apply(v) - dense * v).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("apply is bitwise deterministic") {
    const auto spec = ModelSpec::xxz(8, Boundary::Periodic, 1.0, 0.3);
    const auto op = build_hamiltonian(spec, ground_sector(spec));
    const auto v = random_vector(op.dimension(), 5);
    const auto a = op.apply(v);
    const auto b = op.apply(v);
    CHECK(std::memcmp(a.data(), b.data(), sizeof(Complex) * a.size()) == 0);
}

TEST_CASE("real fast path matches the complex one") {
    const auto spec = ModelSpec::xxz(8, Boundary::Periodic, 1.0, 0.7);
    const auto op = build_hamiltonian(spec, ground_sector(spec));
    REQUIRE(op.is_real());
    std::mt19937_64 rng(9);
    std::normal_distribution<double> gauss;
    Eigen::VectorXd x(op.dimension()), y(op.dimension());
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = gauss(rng);
    op.apply_real(x.data(), y.data());
    const Eigen::VectorXcd yc = op.apply(x.cast<Complex>());
    CHECK((yc.real() - y).cwiseAbs().maxCoeff() == 0.0);
    CHECK(yc.imag().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("singlet is an eigenvector at two sites") {
    const auto spec = ModelSpec::xxz(2, Boundary::Open, 1.0, 1.0);
    const auto op = build_hamiltonian(spec, ground_sector(spec));
    Eigen::VectorXcd singlet(2);
    singlet << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
    CHECK((op.apply(singlet) - (-0.75) * singlet).cwiseAbs().maxCoeff() <= 1e-15);
}

}  // TEST_SUITE
