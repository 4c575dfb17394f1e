#include <doctest.h>

#include <cstring>
#include <random>

#include "qgtlab/errors.hpp"
#include "qgtlab/hamiltonian.hpp"
#include "qgtlab/spectra.hpp"

using namespace qgt;

namespace {

SparseOperator xxz_sector_hamiltonian(int sites, double lambda,
                                      Boundary boundary = Boundary::Periodic) {
    const auto spec = ModelSpec::xxz(sites, boundary, 1.0, lambda);
    return build_hamiltonian(spec, ground_sector(spec));
}

}  // namespace

TEST_SUITE("spectra") {

TEST_CASE("dense two-site values") {
    const auto data = dense_spectrum(xxz_sector_hamiltonian(2, 1.0, Boundary::Open));
    REQUIRE(data.complete);
    CHECK(data.eigenvalues(0) == doctest::Approx(-0.75).epsilon(1e-14));
    CHECK(data.eigenvalues(1) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(data.residuals.maxCoeff() <= 1e-13);
}

TEST_CASE("qubit eigenvalues are plus/minus one half") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> angle(0.0, M_PI);
    for (int trial = 0; trial < 25; ++trial) {
        const auto spec = ModelSpec::qubit_in_field(angle(rng), 2.0 * angle(rng));
        const auto data =
            dense_spectrum(build_hamiltonian(spec, SymmetrySector::full(1)));
        CHECK(data.eigenvalues(0) == doctest::Approx(-0.5).epsilon(1e-13));
        CHECK(data.eigenvalues(1) == doctest::Approx(0.5).epsilon(1e-13));
    }
}

TEST_CASE("dense cap") {
    const auto op = xxz_sector_hamiltonian(8, 0.5);
    CHECK_THROWS_AS(dense_spectrum(op, 10), CapacityExceeded);
}

TEST_CASE("lanczos ground state of the two-site chain") {
    const auto op = xxz_sector_hamiltonian(2, 1.0, Boundary::Open);
    const auto data = lanczos_lowest_k(op, 1);
    CHECK(data.eigenvalues(0) == doctest::Approx(-0.75).epsilon(1e-12));
    // Eigenvector proportional to the singlet.
    const auto v = data.eigenvectors.col(0);
    CHECK(std::abs(std::abs(v(0)) - 1.0 / std::sqrt(2.0)) <= 1e-10);
    CHECK(std::abs(v(0) + v(1)) <= 1e-10);
}

TEST_CASE("lanczos agrees with the dense solver") {
    SUBCASE("ground state, L = 10") {
        const auto op = xxz_sector_hamiltonian(10, 0.5);
        const auto dense = dense_spectrum(op);
        const auto iterative = lanczos_lowest_k(op, 1);
        CHECK(std::abs(iterative.eigenvalues(0) - dense.eigenvalues(0)) <= 1e-10);
        CHECK(iterative.eigenvalues(0) >= dense.eigenvalues(0) - 1e-10);  // variational
    }
    SUBCASE("two lowest pairs, L = 12") {
        const auto op = xxz_sector_hamiltonian(12, 0.5);
        REQUIRE(op.dimension() == 924);
        const auto dense = dense_spectrum(op);
        const auto iterative = lanczos_lowest_k(op, 2);
        CHECK(std::abs(iterative.eigenvalues(0) - dense.eigenvalues(0)) <= 1e-10);
        CHECK(std::abs(iterative.eigenvalues(1) - dense.eigenvalues(1)) <= 1e-10);
    }
}

TEST_CASE("lanczos at the largest default size") {
    // Sz = 0 sector of 20 sites: dimension 184756.
    const auto op = xxz_sector_hamiltonian(20, 0.5);
    REQUIRE(op.dimension() == 184756);
    const auto data = lanczos_lowest_k(op, 1);
    CHECK(data.iterations <= 500);
    CHECK(data.residuals(0) <= 1e-10 * std::max(1.0, std::abs(data.eigenvalues(0))));
}

TEST_CASE("residual and orthonormality contracts") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> lambda(-0.8, 2.0);
    for (int trial = 0; trial < 5; ++trial) {
        const auto op = xxz_sector_hamiltonian(10, lambda(rng));
        const auto data = lanczos_lowest_k(op, 3);
        for (int i = 0; i < 3; ++i) {
            CHECK(data.residuals(i) <= 1e-10 * std::max(1.0, std::abs(data.eigenvalues(i))));
            for (int j = 0; j <= i; ++j) {
                const Complex overlap = data.eigenvectors.col(i).dot(data.eigenvectors.col(j));
                CHECK(std::abs(overlap - (i == j ? 1.0 : 0.0)) <= 1e-10);
            }
        }
        CHECK(data.eigenvalues(0) <= data.eigenvalues(1));
        CHECK(data.eigenvalues(1) <= data.eigenvalues(2));
    }
}

TEST_CASE("seed determinism") {
    const auto op = xxz_sector_hamiltonian(12, 0.5);
    LanczosOptions options;
    options.seed = 1234;
    const auto a = lanczos_lowest_k(op, 2, options);
    const auto b = lanczos_lowest_k(op, 2, options);
    CHECK(std::memcmp(a.eigenvalues.data(), b.eigenvalues.data(),
                      sizeof(double) * a.eigenvalues.size()) == 0);
    CHECK(std::memcmp(a.eigenvectors.data(), b.eigenvectors.data(),
                      sizeof(Complex) * a.eigenvectors.size()) == 0);

    options.seed = 77;
    const auto c = lanczos_lowest_k(op, 2, options);
    CHECK(std::abs(c.eigenvalues(0) - a.eigenvalues(0)) <= 1e-9);
}

TEST_CASE("non-convergence reports the best residual") {
    const auto op = xxz_sector_hamiltonian(12, 0.5);
    LanczosOptions options;
    options.max_iter = 3;
    CHECK_THROWS_AS(lanczos_lowest_k(op, 1, options), NotConverged);
    try {
        lanczos_lowest_k(op, 1, options);
    } catch (const NotConverged& e) {
        CHECK(e.best_residual > 0.0);
        CHECK(e.best_residual < 10.0);
    }
}

TEST_CASE("degenerate ground states are flagged") {
    std::vector<Triplet> t{{0, 0, {0.0, 0.0}}, {1, 1, {5e-12, 0.0}}, {2, 2, {1.0, 0.0}},
                           {3, 3, {2.0, 0.0}}};
    const auto op = SparseOperator::from_triplets(4, t, true);
    CHECK(dense_spectrum(op).degenerate_ground_state);
    CHECK(lanczos_lowest_k(op, 2).degenerate_ground_state);

    const auto clean = xxz_sector_hamiltonian(8, 0.5);
    CHECK_FALSE(dense_spectrum(clean).degenerate_ground_state);
}

TEST_CASE("lanczos input validation") {
    const auto op = xxz_sector_hamiltonian(4, 0.5);
    CHECK_THROWS_AS(lanczos_lowest_k(op, 0), BadData);
    CHECK_THROWS_AS(lanczos_lowest_k(op, 6), BadData);  // k >= dim
    std::vector<Triplet> t{{0, 1, {1.0, 0.0}}};
    CHECK_THROWS_AS(lanczos_lowest_k(SparseOperator::from_triplets(2, t, false), 1), BadData);
}

TEST_CASE("two-site gap") {
    const auto spec = ModelSpec::xxz(2, Boundary::Open, 1.0, 1.0);
    CHECK(gap(spec) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("massive phase gap stays open") {
    std::vector<double> gaps;
    for (int sites : {8, 10, 12, 14})
        gaps.push_back(gap(ModelSpec::xxz(sites, Boundary::Periodic, 1.0, 2.0)));
    for (double g : gaps) CHECK(g > 0.1);
    for (std::size_t i = 1; i < gaps.size(); ++i) CHECK(gaps[i] <= gaps[i - 1] + 1e-12);
}

TEST_CASE("gapless regime gap shrinks with size") {
    std::vector<double> gaps;
    for (int sites : {8, 10, 12, 14})
        gaps.push_back(gap(ModelSpec::xxz(sites, Boundary::Periodic, 1.0, 0.5)));
    for (std::size_t i = 1; i < gaps.size(); ++i) CHECK(gaps[i] < gaps[i - 1]);
}

}  // TEST_SUITE
