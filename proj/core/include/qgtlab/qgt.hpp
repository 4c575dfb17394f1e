#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "qgtlab/hamiltonian.hpp"
#include "qgtlab/spectra.hpp"

namespace qgt {

enum class QgtMethod { FdOverlap, SpectralSum, CorrIntegral };

std::string to_string(QgtMethod method);
QgtMethod qgt_method_from_string(const std::string& name);

struct QgtDiagnostics {
    double gap = std::numeric_limits<double>::quiet_NaN();
    double fidelity_min = std::numeric_limits<double>::quiet_NaN();
    int truncation = -1;          // -1: complete spectrum (or not applicable)
    Eigen::VectorXd tail_bound;   // diagonal tail bound, truncated spectral sum only
};

// The geometric tensor at one parameter point: Q hermitian PSD; Re Q is the
// metric, Im Q the Berry curvature; q = Q / sites is the intensive tensor.
struct QGTResult {
    Eigen::VectorXd params;
    int sites = 0;
    Eigen::MatrixXcd tensor;
    QgtMethod method = QgtMethod::SpectralSum;
    QgtDiagnostics diagnostics;

    Eigen::MatrixXd metric() const { return tensor.real(); }
    Eigen::MatrixXd curvature() const { return tensor.imag(); }
    Eigen::MatrixXcd intensive() const { return tensor / static_cast<double>(sites); }
    double min_eigenvalue() const;
};

struct FidelityRecord {
    std::vector<double> params_a;
    std::vector<double> params_b;
    double value = 0.0;  // in [0, 1]
    int sites = 0;
};

// |<Psi_0(a), Psi_0(b)>|, gauge independent. Throws DegenerateGroundState when a
// near-degenerate ground state is detected at either point.
FidelityRecord fidelity(const ModelSpec& spec, const std::vector<double>& params_a,
                        const std::vector<double>& params_b, const SolvePolicy& policy = {});

// Gauge-fixed central differences of the ground state, one step per parameter.
// Truncation error is O(delta^2). A stencil crossing a critical point is not
// detected.
QGTResult qgt_fd_overlap(const ModelSpec& spec, const std::vector<double>& deltas,
                         const SolvePolicy& policy = {});

// Perturbation sum over the complete sector spectrum:
//   Q_{mu nu} = sum_{n != 0} <0|dH_mu|n><n|dH_nu|0> / (E_n - E_0)^2.
QGTResult qgt_spectral_sum(const ModelSpec& spec, const SolvePolicy& policy = {});

// Perturbation sum truncated to the k lowest excited states. The result is a
// lower bound on the PSD tensor; diagnostics carry the diagonal tail bound
// (residual variance) / gap(k+1)^2.
QGTResult qgt_spectral_sum_truncated(const ModelSpec& spec, int excited_states,
                                     const SolvePolicy& policy = {});

enum class Quadrature { ClosedForm, Adaptive };

// Integral of the imaginary-time connected correlator, Q = int_0^inf tau G(tau) dtau.
// ClosedForm integrates each mode exactly (1/gap^2); Adaptive runs an adaptive
// Simpson rule on the summed integrand, truncated where exp(-gap tau) <= 1e-14.
QGTResult qgt_corr_integral(const ModelSpec& spec, Quadrature scheme,
                            const SolvePolicy& policy = {});

struct BoundCheckResult {
    double lhs = 0.0;  // |<phi| Q |phi>|
    double rhs = 0.0;  // Var(dH_phi) / gap^2
    double gap = 0.0;
    bool holds = false;
};

// Gap bound on the tensor in direction phi (normalized internally).
BoundCheckResult qgt_bound_check(const ModelSpec& spec, const Eigen::VectorXcd& direction,
                                 const SolvePolicy& policy = {});

// --- assembly stages, exposed for oracle and gauge-invariance tests ---

// Q from a center state and gauge-fixed +-delta stencil states.
Eigen::MatrixXcd assemble_fd_overlap(const Eigen::VectorXcd& center,
                                     const std::vector<Eigen::VectorXcd>& plus,
                                     const std::vector<Eigen::VectorXcd>& minus,
                                     const std::vector<double>& deltas);

// Q from a complete spectrum and the perturbation operators.
Eigen::MatrixXcd assemble_spectral_sum(const SpectralData& spectrum,
                                       const std::vector<SparseOperator>& perturbations);

}  // namespace qgt
