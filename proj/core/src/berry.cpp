#include "qgtlab/berry.hpp"

#include <cmath>

#include "qgtlab/errors.hpp"

namespace qgt {

namespace {

Eigen::VectorXcd node_state(const ModelSpec& spec, const SymmetrySector& sector,
                            double p0, double p1, const SolvePolicy& policy) {
    std::vector<double> params = spec.params;
    params[0] = p0;
    params[1] = p1;
    const SpectralData data =
        lowest_eigenpairs(build_hamiltonian(spec.at(params), sector), 2, policy);
    if (data.degenerate_ground_state)
        throw DegenerateGroundState("near-degenerate ground state on a mesh node");
    return data.eigenvectors.col(0);
}

}  // namespace

double plaquette_phase(const Eigen::VectorXcd& corner00, const Eigen::VectorXcd& corner01,
                       const Eigen::VectorXcd& corner11, const Eigen::VectorXcd& corner10) {
    const Complex product = Complex(corner00.dot(corner01)) * Complex(corner01.dot(corner11)) *
                            Complex(corner11.dot(corner10)) * Complex(corner10.dot(corner00));
    return std::arg(product);
}

CurvatureField berry_curvature_plaquette(const ModelSpec& spec, const Eigen::VectorXd& axis0,
                                         const Eigen::VectorXd& axis1,
                                         const SolvePolicy& policy) {
    spec.validate();
    if (spec.num_params() < 2) throw BadData("curvature needs at least two parameters");
    if (axis0.size() < 2 || axis1.size() < 2) throw BadData("mesh needs at least 2x2 nodes");

    const SymmetrySector sector = ground_sector(spec, policy.dimension_cap);
    const Eigen::Index n0 = axis0.size(), n1 = axis1.size();
    std::vector<Eigen::VectorXcd> states(static_cast<std::size_t>(n0 * n1));
    for (Eigen::Index i = 0; i < n0; ++i)
        for (Eigen::Index j = 0; j < n1; ++j)
            states[i * n1 + j] = node_state(spec, sector, axis0(i), axis1(j), policy);

    CurvatureField field;
    field.axis0_centers = 0.5 * (axis0.head(n0 - 1) + axis0.tail(n0 - 1));
    field.axis1_centers = 0.5 * (axis1.head(n1 - 1) + axis1.tail(n1 - 1));
    field.values.resize(n0 - 1, n1 - 1);
    for (Eigen::Index i = 0; i + 1 < n0; ++i) {
        for (Eigen::Index j = 0; j + 1 < n1; ++j) {
            const double phase = plaquette_phase(states[i * n1 + j], states[i * n1 + j + 1],
                                                 states[(i + 1) * n1 + j + 1],
                                                 states[(i + 1) * n1 + j]);
            field.max_plaquette_phase = std::max(field.max_plaquette_phase, std::abs(phase));
            if (std::abs(phase) > M_PI / 2)
                throw MeshTooCoarse("plaquette phase exceeds pi/2; refine the mesh");
            const double area = (axis0(i + 1) - axis0(i)) * (axis1(j + 1) - axis1(j));
            field.values(i, j) = -phase / (2.0 * area);
        }
    }
    return field;
}

double loop_phase_from_states(const std::vector<Eigen::VectorXcd>& states) {
    if (states.size() < 3) throw BadData("loop needs at least three distinct points");
    // Accumulate the argument segment by segment; each individual overlap phase is
    // small for a reasonable discretization, so no branch ambiguity accumulates.
    double phase = 0.0;
    for (std::size_t j = 0; j < states.size(); ++j) {
        const Eigen::VectorXcd& a = states[j];
        const Eigen::VectorXcd& b = states[(j + 1) % states.size()];
        phase += std::arg(Complex(a.dot(b)));
    }
    return std::remainder(-phase, 2.0 * M_PI);
}

double berry_phase_loop(const ModelSpec& spec, const std::vector<std::array<double, 2>>& loop,
                        const SolvePolicy& policy) {
    spec.validate();
    if (spec.num_params() < 2) throw BadData("loop phases need at least two parameters");
    if (loop.size() < 4) throw LoopNotClosed("loop needs at least three distinct points");
    const auto& first = loop.front();
    const auto& last = loop.back();
    if (std::abs(first[0] - last[0]) > 1e-12 || std::abs(first[1] - last[1]) > 1e-12)
        throw LoopNotClosed("loop polyline must end on its starting point");

    const SymmetrySector sector = ground_sector(spec, policy.dimension_cap);
    std::vector<Eigen::VectorXcd> states;
    states.reserve(loop.size() - 1);
    for (std::size_t j = 0; j + 1 < loop.size(); ++j)
        states.push_back(node_state(spec, sector, loop[j][0], loop[j][1], policy));
    return loop_phase_from_states(states);
}

std::vector<std::array<double, 2>> circle_loop(int fixed_index, double fixed_value, int points) {
    if (fixed_index != 0 && fixed_index != 1) throw BadData("fixed_index must be 0 or 1");
    if (points < 3) throw BadData("circle needs at least three points");
    std::vector<std::array<double, 2>> loop;
    loop.reserve(points + 1);
    for (int j = 0; j <= points; ++j) {
        const double angle = 2.0 * M_PI * (j % points) / points;
        if (fixed_index == 0)
            loop.push_back({fixed_value, angle});
        else
            loop.push_back({angle, fixed_value});
    }
    return loop;
}

}  // namespace qgt
