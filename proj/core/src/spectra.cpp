#define LAPACK_COMPLEX_CUSTOM
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>

#include "qgtlab/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <lapacke.h>

#include "qgtlab/errors.hpp"
#include "qgtlab/hamiltonian.hpp"

namespace qgt {

namespace {

constexpr double kDefaultDegeneracyTol = 1e-8;

Eigen::MatrixXd dense_real_matrix(const SparseOperator& op) {
    const std::size_t n = op.dimension();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    const auto& offsets = op.row_offsets();
    const auto& cols = op.col_indices();
    const auto& vals = op.values();
    for (std::size_t row = 0; row < n; ++row)
        for (std::int64_t k = offsets[row]; k < offsets[row + 1]; ++k)
            m(row, cols[k]) += vals[k].real();
    return m;
}

Eigen::VectorXd residual_norms(const SparseOperator& op, const Eigen::VectorXd& evals,
                               const Eigen::MatrixXcd& evecs) {
    const auto n = evals.size();
    Eigen::VectorXd res(n);
    for (Eigen::Index i = 0; i < n; ++i)
        res(i) = (op.apply(evecs.col(i)) - evals(i) * evecs.col(i)).norm();
    return res;
}

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> random_unit_vector(std::size_t n,
                                                            std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        if constexpr (std::is_same_v<Scalar, double>) {
            v(i) = gauss(rng);
        } else {
            const double re = gauss(rng);
            const double im = gauss(rng);
            v(i) = Scalar(re, im);
        }
    }
    v.normalize();
    return v;
}

template <typename Scalar>
void matvec(const SparseOperator& op, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x,
            Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& y) {
    if constexpr (std::is_same_v<Scalar, double>) {
        op.apply_real(x.data(), y.data());
    } else {
        op.apply(x.data(), y.data());
    }
}

template <typename Scalar>
SpectralData lanczos_impl(const SparseOperator& op, int k, const LanczosOptions& opt) {
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    const std::size_t n = op.dimension();
    const int max_krylov = static_cast<int>(std::min<std::size_t>(opt.max_iter, n));

    std::mt19937_64 rng(opt.seed);
    std::vector<Vector> basis;
    basis.push_back(random_unit_vector<Scalar>(n, rng));
    std::vector<double> alpha, beta;
    Vector w(n);
    double best_residual = std::numeric_limits<double>::infinity();

    for (int iter = 0; iter < max_krylov; ++iter) {
        matvec(op, basis[iter], w);
        if (iter > 0) w -= Scalar(beta[iter - 1]) * basis[iter - 1];
        const double a = std::real(Complex(basis[iter].dot(w)));
        alpha.push_back(a);
        w -= Scalar(a) * basis[iter];
        // Full reorthogonalization, two sweeps.
        for (int pass = 0; pass < 2; ++pass)
            for (const Vector& u : basis) w -= u.dot(w) * u;
        const double b = w.norm();

        const int j = iter + 1;
        double scale = std::abs(a);
        for (double x : alpha) scale = std::max(scale, std::abs(x));
        const bool breakdown = b <= 1e-13 * std::max(1.0, scale);
        const bool last = (j == max_krylov) || (j == static_cast<int>(n));
        const bool do_check = j >= k && (breakdown || last || (j - k) % 5 == 0);

        if (do_check) {
            Eigen::Map<const Eigen::VectorXd> diag(alpha.data(), j);
            Eigen::VectorXd sub(std::max(j - 1, 0));
            for (int i = 0; i + 1 < j; ++i) sub(i) = beta[i];
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
            tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);

            bool all_small = true;
            double worst = 0.0;
            for (int i = 0; i < k; ++i) {
                const double est = (j == static_cast<int>(n))
                                       ? 0.0
                                       : std::abs(b * tri.eigenvectors()(j - 1, i));
                worst = std::max(worst, est);
                if (est > opt.tol * std::max(1.0, std::abs(tri.eigenvalues()(i))))
                    all_small = false;
            }
            best_residual = std::min(best_residual, worst);

            if (all_small || (breakdown && j >= k)) {
                SpectralData data;
                data.eigenvalues = tri.eigenvalues().head(k);
                data.eigenvectors.resize(n, k);
                for (int i = 0; i < k; ++i) {
                    Vector x = Vector::Zero(n);
                    for (int m = 0; m < j; ++m) x += tri.eigenvectors()(m, i) * basis[m];
                    x /= x.norm();
                    if constexpr (std::is_same_v<Scalar, double>) {
                        data.eigenvectors.col(i) = x.template cast<Complex>();
                    } else {
                        data.eigenvectors.col(i) = x;
                    }
                }
                data.residuals = residual_norms(op, data.eigenvalues, data.eigenvectors);
                bool ok = true;
                for (int i = 0; i < k; ++i)
                    if (data.residuals(i) >
                        opt.tol * std::max(1.0, std::abs(data.eigenvalues(i))))
                        ok = false;
                if (ok || breakdown || last) {
                    if (!ok)
                        throw NotConverged("lanczos did not reach the residual tolerance",
                                           data.residuals.maxCoeff());
                    data.complete = false;
                    data.iterations = j;
                    if (k >= 2)
                        data.degenerate_ground_state = data.gap(1) < opt.degeneracy_tol;
                    return data;
                }
            }
        }

        if (breakdown) {
            // Invariant subspace: restart the recurrence in a fresh direction.
            Vector r = random_unit_vector<Scalar>(n, rng);
            for (int pass = 0; pass < 2; ++pass)
                for (const Vector& u : basis) r -= u.dot(r) * u;
            const double rn = r.norm();
            if (rn < 1e-14) break;  // space exhausted
            beta.push_back(0.0);
            basis.push_back(r / rn);
        } else {
            beta.push_back(b);
            basis.push_back(w / Scalar(b));
        }
    }
    throw NotConverged("lanczos exhausted max_iter = " + std::to_string(opt.max_iter),
                       best_residual);
}

}  // namespace

SpectralData dense_spectrum(const SparseOperator& op, std::size_t dense_cap) {
    const std::size_t n = op.dimension();
    if (n > dense_cap)
        throw CapacityExceeded("dimension " + std::to_string(n) +
                               " exceeds the dense cap " + std::to_string(dense_cap));

    SpectralData data;
    data.eigenvalues.resize(n);
    if (op.is_real()) {
        Eigen::MatrixXd m = dense_real_matrix(op);
        const lapack_int info =
            LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', static_cast<lapack_int>(n), m.data(),
                           static_cast<lapack_int>(n), data.eigenvalues.data());
        if (info != 0) throw Error("dsyevd failed with info = " + std::to_string(info));
        data.eigenvectors = m.cast<Complex>();
    } else {
        Eigen::MatrixXcd m = op.dense();
        const lapack_int info =
            LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', static_cast<lapack_int>(n), m.data(),
                           static_cast<lapack_int>(n), data.eigenvalues.data());
        if (info != 0) throw Error("zheevd failed with info = " + std::to_string(info));
        data.eigenvectors = std::move(m);
    }
    data.residuals = residual_norms(op, data.eigenvalues, data.eigenvectors);
    data.complete = true;
    data.iterations = 0;
    if (n >= 2) data.degenerate_ground_state = data.gap(1) < kDefaultDegeneracyTol;
    return data;
}

SpectralData lanczos_lowest_k(const SparseOperator& op, int k, const LanczosOptions& options) {
    if (!op.hermitian()) throw BadData("lanczos requires a hermitian operator");
    if (k < 1) throw BadData("lanczos requires k >= 1");
    if (static_cast<std::size_t>(k) >= op.dimension())
        throw BadData("lanczos requires k < dimension; use dense_spectrum instead");
    if (op.is_real()) return lanczos_impl<double>(op, k, options);
    return lanczos_impl<Complex>(op, k, options);
}

SpectralData lowest_eigenpairs(const SparseOperator& op, int k, const SolvePolicy& policy) {
    if (op.dimension() <= policy.dense_preference ||
        static_cast<std::size_t>(k) >= op.dimension())
        return dense_spectrum(op, std::max(policy.dense_cap, op.dimension()));
    return lanczos_lowest_k(op, k, policy.lanczos);
}

double gap(const ModelSpec& spec, const SolvePolicy& policy) {
    spec.validate();
    if (spec.conserves_total_sz()) {
        const SymmetrySector sz0 = ground_sector(spec, policy.dimension_cap);
        const SpectralData ground = lowest_eigenpairs(build_hamiltonian(spec, sz0), 2, policy);
        double lowest_excited = ground.eigenvalues(1);
        for (int twice_sz : {+2, -2}) {
            const SymmetrySector sector = sector_basis(spec, twice_sz, policy.dimension_cap);
            const SpectralData d = lowest_eigenpairs(build_hamiltonian(spec, sector), 1, policy);
            lowest_excited = std::min(lowest_excited, d.eigenvalues(0));
        }
        return lowest_excited - ground.eigenvalues(0);
    }
    const SymmetrySector sector = ground_sector(spec, policy.dimension_cap);
    const SpectralData d = lowest_eigenpairs(build_hamiltonian(spec, sector), 2, policy);
    return d.gap(1);
}

}  // namespace qgt
