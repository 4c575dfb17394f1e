#include "qgtlab/qgt.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Dense>

#include "qgtlab/errors.hpp"

namespace qgt {

namespace {

constexpr double kDegeneracyTol = 1e-8;

struct GroundPoint {
    SpectralData data;
    Eigen::VectorXcd state() const { return data.eigenvectors.col(0); }
};

GroundPoint solve_ground(const ModelSpec& spec, const SymmetrySector& sector,
                         const SolvePolicy& policy, int k = 2) {
    GroundPoint point{lowest_eigenpairs(build_hamiltonian(spec, sector), k, policy)};
    if (point.data.degenerate_ground_state)
        throw DegenerateGroundState("near-degenerate ground state at " + to_string(spec.kind) +
                                    " parameter point");
    return point;
}

Eigen::MatrixXcd hermitize(const Eigen::MatrixXcd& q) { return 0.5 * (q + q.adjoint()); }

// <n|dH_mu|0> for all excited n (rows) and parameters mu (columns).
Eigen::MatrixXcd excited_matrix_elements(const SpectralData& spectrum,
                                         const std::vector<SparseOperator>& perturbations) {
    const Eigen::Index dim = spectrum.eigenvectors.rows();
    const Eigen::Index m = static_cast<Eigen::Index>(perturbations.size());
    Eigen::MatrixXcd w(dim, m);
    for (Eigen::Index mu = 0; mu < m; ++mu)
        w.col(mu) = perturbations[mu].apply(spectrum.eigenvectors.col(0));
    return spectrum.eigenvectors.rightCols(dim - 1).adjoint() * w;
}

}  // namespace

std::string to_string(QgtMethod method) {
    switch (method) {
        case QgtMethod::FdOverlap: return "fd";
        case QgtMethod::SpectralSum: return "spectral";
        case QgtMethod::CorrIntegral: return "corr";
    }
    return "?";
}

QgtMethod qgt_method_from_string(const std::string& name) {
    if (name == "fd" || name == "fd-overlap") return QgtMethod::FdOverlap;
    if (name == "spectral" || name == "spectral-sum") return QgtMethod::SpectralSum;
    if (name == "corr" || name == "corr-integral") return QgtMethod::CorrIntegral;
    throw InvalidPlan("unknown qgt method '" + name + "'");
}

double QGTResult::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(tensor, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

FidelityRecord fidelity(const ModelSpec& spec, const std::vector<double>& params_a,
                        const std::vector<double>& params_b, const SolvePolicy& policy) {
    const SymmetrySector sector = ground_sector(spec, policy.dimension_cap);
    const GroundPoint a = solve_ground(spec.at(params_a), sector, policy);
    const GroundPoint b = solve_ground(spec.at(params_b), sector, policy);
    FidelityRecord record;
    record.params_a = params_a;
    record.params_b = params_b;
    record.sites = spec.sites;
    record.value = std::min(std::abs(Complex(a.state().dot(b.state()))), 1.0);
    return record;
}

Eigen::MatrixXcd assemble_fd_overlap(const Eigen::VectorXcd& center,
                                     const std::vector<Eigen::VectorXcd>& plus,
                                     const std::vector<Eigen::VectorXcd>& minus,
                                     const std::vector<double>& deltas) {
    const Eigen::Index m = static_cast<Eigen::Index>(deltas.size());
    if (static_cast<Eigen::Index>(plus.size()) != m ||
        static_cast<Eigen::Index>(minus.size()) != m)
        throw DimensionMismatch("stencil state count does not match parameter count");

    const auto gauge_fixed = [&center](const Eigen::VectorXcd& psi) {
        const Complex overlap = center.dot(psi);
        const double mag = std::abs(overlap);
        if (mag < 1e-300) throw Error("stencil state is orthogonal to the center state");
        return Eigen::VectorXcd((std::conj(overlap) / mag) * psi);
    };

    std::vector<Eigen::VectorXcd> derivative(m);
    for (Eigen::Index mu = 0; mu < m; ++mu) {
        if (deltas[mu] <= 0) throw BadData("finite-difference steps must be positive");
        derivative[mu] = (gauge_fixed(plus[mu]) - gauge_fixed(minus[mu])) / (2.0 * deltas[mu]);
    }

    Eigen::MatrixXcd q(m, m);
    for (Eigen::Index mu = 0; mu < m; ++mu) {
        const Complex proj_mu = derivative[mu].dot(center);  // <d_mu | psi0>
        for (Eigen::Index nu = 0; nu < m; ++nu) {
            const Complex proj_nu = center.dot(derivative[nu]);  // <psi0 | d_nu>
            q(mu, nu) = derivative[mu].dot(derivative[nu]) - proj_mu * proj_nu;
        }
    }
    return hermitize(q);
}

QGTResult qgt_fd_overlap(const ModelSpec& spec, const std::vector<double>& deltas,
                         const SolvePolicy& policy) {
    spec.validate();
    const int m = spec.num_params();
    if (static_cast<int>(deltas.size()) != m)
        throw BadData("need one finite-difference step per parameter");

    const SymmetrySector sector = ground_sector(spec, policy.dimension_cap);
    const GroundPoint center = solve_ground(spec, sector, policy);
    const Eigen::VectorXcd psi0 = center.state();

    std::vector<Eigen::VectorXcd> plus(m), minus(m);
    double fidelity_min = 1.0;
    for (int mu = 0; mu < m; ++mu) {
        for (int sign : {+1, -1}) {
            std::vector<double> shifted = spec.params;
            shifted[mu] += sign * deltas[mu];
            const GroundPoint stencil = solve_ground(spec.at(shifted), sector, policy);
            (sign > 0 ? plus[mu] : minus[mu]) = stencil.state();
            fidelity_min =
                std::min(fidelity_min, std::abs(Complex(psi0.dot(stencil.state()))));
        }
    }

    QGTResult result;
    result.params = Eigen::Map<const Eigen::VectorXd>(spec.params.data(), m);
    result.sites = spec.sites;
    result.tensor = assemble_fd_overlap(psi0, plus, minus, deltas);
    result.method = QgtMethod::FdOverlap;
    result.diagnostics.gap = center.data.gap(1);
    result.diagnostics.fidelity_min = fidelity_min;
    return result;
}

Eigen::MatrixXcd assemble_spectral_sum(const SpectralData& spectrum,
                                       const std::vector<SparseOperator>& perturbations) {
    if (!spectrum.complete) throw BadData("spectral sum needs the complete spectrum");
    const Eigen::Index dim = spectrum.eigenvalues.size();
    const Eigen::MatrixXcd y = excited_matrix_elements(spectrum, perturbations);
    Eigen::VectorXd weights(dim - 1);
    for (Eigen::Index n = 1; n < dim; ++n) {
        const double gap_n = spectrum.eigenvalues(n) - spectrum.eigenvalues(0);
        weights(n - 1) = 1.0 / (gap_n * gap_n);
    }
    return hermitize(y.adjoint() * weights.asDiagonal() * y);
}

namespace {

QGTResult spectral_result(const ModelSpec& spec, const SolvePolicy& policy, QgtMethod tag) {
    spec.validate();
    const SymmetrySector sector = ground_sector(spec, policy.dimension_cap);
    const SparseOperator h = build_hamiltonian(spec, sector);
    const SpectralData spectrum = dense_spectrum(h, policy.dense_cap);
    if (spectrum.degenerate_ground_state)
        throw DegenerateGroundState("near-degenerate ground state in the spectral sum");

    std::vector<SparseOperator> perturbations;
    for (int mu = 0; mu < spec.num_params(); ++mu)
        perturbations.push_back(build_perturbation(spec, sector, mu));

    QGTResult result;
    result.params = Eigen::Map<const Eigen::VectorXd>(spec.params.data(), spec.num_params());
    result.sites = spec.sites;
    result.tensor = assemble_spectral_sum(spectrum, perturbations);
    result.method = tag;
    result.diagnostics.gap = spectrum.gap(1);
    return result;
}

}  // namespace

QGTResult qgt_spectral_sum(const ModelSpec& spec, const SolvePolicy& policy) {
    return spectral_result(spec, policy, QgtMethod::SpectralSum);
}

QGTResult qgt_spectral_sum_truncated(const ModelSpec& spec, int excited_states,
                                     const SolvePolicy& policy) {
    spec.validate();
    if (excited_states < 1) throw BadData("need at least one excited state");
    const SymmetrySector sector = ground_sector(spec, policy.dimension_cap);
    const SparseOperator h = build_hamiltonian(spec, sector);
    const int k = excited_states;
    const SpectralData spectrum = lowest_eigenpairs(h, k + 2, policy);
    if (spectrum.degenerate_ground_state)
        throw DegenerateGroundState("near-degenerate ground state in the spectral sum");

    const int m = spec.num_params();
    std::vector<SparseOperator> perturbations;
    for (int mu = 0; mu < m; ++mu) perturbations.push_back(build_perturbation(spec, sector, mu));

    const Eigen::VectorXcd psi0 = spectrum.eigenvectors.col(0);
    Eigen::MatrixXcd w(psi0.size(), m);
    for (int mu = 0; mu < m; ++mu) w.col(mu) = perturbations[mu].apply(psi0);
    const Eigen::MatrixXcd y = spectrum.eigenvectors.middleCols(1, k).adjoint() * w;

    Eigen::VectorXd weights(k);
    for (int n = 1; n <= k; ++n) {
        const double gap_n = spectrum.gap(n);
        weights(n - 1) = 1.0 / (gap_n * gap_n);
    }

    QGTResult result;
    result.params = Eigen::Map<const Eigen::VectorXd>(spec.params.data(), m);
    result.sites = spec.sites;
    result.tensor = hermitize(y.adjoint() * weights.asDiagonal() * y);
    result.method = QgtMethod::SpectralSum;
    result.diagnostics.gap = spectrum.gap(1);
    result.diagnostics.truncation = k;

    // Diagonal tail bound: unexplained variance of dH_mu over the ground state,
    // divided by the first neglected excitation energy squared.
    const double next_gap = spectrum.gap(k + 1);
    result.diagnostics.tail_bound.resize(m);
    for (int mu = 0; mu < m; ++mu) {
        const double total = w.col(mu).squaredNorm() -
                             std::norm(Complex(psi0.dot(w.col(mu))));
        const double explained = y.col(mu).squaredNorm();
        result.diagnostics.tail_bound(mu) =
            std::max(0.0, total - explained) / (next_gap * next_gap);
    }
    return result;
}

namespace {

// Adaptive Simpson with Richardson correction on a complex-valued integrand.
class AdaptiveSimpson {
public:
    AdaptiveSimpson(std::function<Complex(double)> f, long budget)
        : f_(std::move(f)), budget_(budget) {}

    Complex integrate(double a, double b, double tol) {
        const Complex fa = eval(a), fm = eval(0.5 * (a + b)), fb = eval(b);
        const Complex whole = simpson(a, b, fa, fm, fb);
        return refine(a, b, fa, fm, fb, whole, tol, 50);
    }

private:
    Complex eval(double x) {
        if (--budget_ < 0)
            throw QuadratureNotConverged("adaptive quadrature exceeded its evaluation budget");
        return f_(x);
    }

    static Complex simpson(double a, double b, Complex fa, Complex fm, Complex fb) {
        return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    }

    Complex refine(double a, double b, Complex fa, Complex fm, Complex fb, Complex whole,
                   double tol, int depth) {
        const double m = 0.5 * (a + b);
        const Complex fl = eval(0.5 * (a + m));
        const Complex fr = eval(0.5 * (m + b));
        const Complex left = simpson(a, m, fa, fl, fm);
        const Complex right = simpson(m, b, fm, fr, fb);
        const Complex delta = left + right - whole;
        if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
            return left + right + delta / 15.0;
        return refine(a, m, fa, fl, fm, left, 0.5 * tol, depth - 1) +
               refine(m, b, fm, fr, fb, right, 0.5 * tol, depth - 1);
    }

    std::function<Complex(double)> f_;
    long budget_;
};

}  // namespace

QGTResult qgt_corr_integral(const ModelSpec& spec, Quadrature scheme,
                            const SolvePolicy& policy) {
    spec.validate();
    const SymmetrySector sector = ground_sector(spec, policy.dimension_cap);
    const SparseOperator h = build_hamiltonian(spec, sector);
    const SpectralData spectrum = dense_spectrum(h, policy.dense_cap);
    if (spectrum.degenerate_ground_state)
        throw DegenerateGroundState("near-degenerate ground state in the correlator route");

    const int m = spec.num_params();
    std::vector<SparseOperator> perturbations;
    for (int mu = 0; mu < m; ++mu) perturbations.push_back(build_perturbation(spec, sector, mu));

    const Eigen::Index dim = spectrum.eigenvalues.size();
    const Eigen::MatrixXcd y = excited_matrix_elements(spectrum, perturbations);
    Eigen::VectorXd gaps(dim - 1);
    for (Eigen::Index n = 1; n < dim; ++n) gaps(n - 1) = spectrum.gap(static_cast<int>(n));

    Eigen::MatrixXcd q(m, m);
    if (scheme == Quadrature::ClosedForm) {
        // Per mode, int_0^inf tau exp(-gap tau) dtau = gap^-2 exactly.
        for (int mu = 0; mu < m; ++mu)
            for (int nu = 0; nu < m; ++nu) {
                Complex sum{0.0, 0.0};
                for (Eigen::Index n = 0; n < dim - 1; ++n)
                    sum += std::conj(y(n, mu)) * y(n, nu) / (gaps(n) * gaps(n));
                q(mu, nu) = sum;
            }
    } else {
        const double gap1 = gaps.minCoeff();
        const double tau_max = std::log(1e14) / gap1;
        for (int mu = 0; mu < m; ++mu) {
            for (int nu = mu; nu < m; ++nu) {
                // G_{mu nu}(tau) summed over modes, weighted by tau.
                auto integrand = [&](double tau) {
                    Complex g{0.0, 0.0};
                    for (Eigen::Index n = 0; n < dim - 1; ++n)
                        g += std::exp(-gaps(n) * tau) * std::conj(y(n, mu)) * y(n, nu);
                    return tau * g;
                };
                // Crude magnitude estimate sets the absolute tolerance.
                const double scale =
                    std::max(1e-30, (y.col(mu).cwiseAbs().array() * y.col(nu).cwiseAbs().array() /
                                     gaps.array().square())
                                        .sum());
                AdaptiveSimpson rule(integrand, 2'000'000);
                q(mu, nu) = rule.integrate(0.0, tau_max, 1e-10 * scale);
                if (nu != mu) q(nu, mu) = std::conj(q(mu, nu));
            }
        }
    }

    QGTResult result;
    result.params = Eigen::Map<const Eigen::VectorXd>(spec.params.data(), m);
    result.sites = spec.sites;
    result.tensor = hermitize(q);
    result.method = QgtMethod::CorrIntegral;
    result.diagnostics.gap = spectrum.gap(1);
    return result;
}

BoundCheckResult qgt_bound_check(const ModelSpec& spec, const Eigen::VectorXcd& direction,
                                 const SolvePolicy& policy) {
    spec.validate();
    if (direction.size() != spec.num_params())
        throw DimensionMismatch("direction length must equal the parameter count");
    if (direction.norm() == 0.0) throw BadData("direction must be nonzero");
    const Eigen::VectorXcd phi = direction / direction.norm();

    const SymmetrySector sector = ground_sector(spec, policy.dimension_cap);
    const SparseOperator h = build_hamiltonian(spec, sector);
    const SpectralData spectrum = dense_spectrum(h, policy.dense_cap);
    const double gap1 = spectrum.gap(1);
    if (gap1 <= 1e-12)
        throw GaplessAtFiniteSize("zero excitation gap at finite size");

    std::vector<SparseOperator> perturbations;
    for (int mu = 0; mu < spec.num_params(); ++mu)
        perturbations.push_back(build_perturbation(spec, sector, mu));
    const Eigen::MatrixXcd q = assemble_spectral_sum(spectrum, perturbations);

    const Eigen::VectorXcd psi0 = spectrum.eigenvectors.col(0);
    Eigen::VectorXcd u = Eigen::VectorXcd::Zero(psi0.size());
    Complex mean{0.0, 0.0};
    for (int mu = 0; mu < spec.num_params(); ++mu) {
        const Eigen::VectorXcd w = perturbations[mu].apply(psi0);
        u += std::conj(phi(mu)) * w;
        mean += phi(mu) * Complex(psi0.dot(w));
    }

    BoundCheckResult result;
    result.gap = gap1;
    result.lhs = std::abs(Complex(phi.dot(q * phi)));
    result.rhs = (u.squaredNorm() - std::norm(mean)) / (gap1 * gap1);
    result.holds = result.lhs <= result.rhs * (1.0 + 1e-10);
    return result;
}

}  // namespace qgt
