#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "qgtlab/basis.hpp"
#include "qgtlab/model.hpp"
#include "qgtlab/sparse.hpp"

namespace qgt {

inline constexpr std::size_t kDefaultDenseCap = 4096;

struct SpectralData {
    Eigen::VectorXd eigenvalues;    // ascending
    Eigen::MatrixXcd eigenvectors;  // unit-norm columns matching eigenvalues
    Eigen::VectorXd residuals;      // ||H v - E v|| per pair
    bool complete = false;          // full sector spectrum present
    bool degenerate_ground_state = false;
    int iterations = 0;

    // Excitation energy E_n - E_0.
    double gap(int n = 1) const { return eigenvalues(n) - eigenvalues(0); }
};

struct LanczosOptions {
    int max_iter = 1000;
    double tol = 1e-10;
    std::uint64_t seed = 42;
    double degeneracy_tol = 1e-8;
};

// All eigenpairs via a dense hermitian solve. Throws CapacityExceeded above the cap.
SpectralData dense_spectrum(const SparseOperator& op, std::size_t dense_cap = kDefaultDenseCap);

// k lowest eigenpairs by Lanczos iteration with full reorthogonalization of the
// Krylov basis. Deterministic for a fixed seed. Throws NotConverged when max_iter
// is exhausted; flags (not throws) a near-degenerate ground state when k >= 2.
SpectralData lanczos_lowest_k(const SparseOperator& op, int k, const LanczosOptions& options = {});

// Solver selection shared by the higher-level routes: dense below dense_preference
// (or when k reaches the dimension), Lanczos otherwise.
struct SolvePolicy {
    std::size_t dense_cap = kDefaultDenseCap;
    std::size_t dense_preference = 1024;
    std::size_t dimension_cap = kDefaultDimensionCap;
    LanczosOptions lanczos;
};

SpectralData lowest_eigenpairs(const SparseOperator& op, int k, const SolvePolicy& policy = {});

// Lowest excitation energy over all searched sectors. The XXZ family searches
// Sz = 0 and Sz = +-1; other models use their full space.
double gap(const ModelSpec& spec, const SolvePolicy& policy = {});

}  // namespace qgt
