#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

#include "qgtlab/qgt.hpp"

namespace qgt {

// Discrete curvature field on a 2-d parameter mesh. values(i, j) estimates
// Im Q_{01} at the center of plaquette (i, j); the estimate is the plaquette
// overlap holonomy divided by twice the plaquette area, which converges to
// Im Q as the mesh refines and is gauge invariant by construction.
struct CurvatureField {
    Eigen::VectorXd axis0_centers;
    Eigen::VectorXd axis1_centers;
    Eigen::MatrixXd values;  // (axis0 cells) x (axis1 cells)
    double max_plaquette_phase = 0.0;
};

// Phase of the overlap product around one plaquette, corners in the order
// (p) -> (p + d1) -> (p + d0 + d1) -> (p + d0), i.e. clockwise when axis 0 is
// drawn as x. Shared by the field and the Stokes tests.
double plaquette_phase(const Eigen::VectorXcd& corner00, const Eigen::VectorXcd& corner01,
                       const Eigen::VectorXcd& corner11, const Eigen::VectorXcd& corner10);

// Curvature field of a two-parameter model over the tensor mesh axis0 x axis1.
// Throws MeshTooCoarse when any plaquette phase magnitude exceeds pi/2 and
// DegenerateGroundState when a mesh node has a near-degenerate ground state.
CurvatureField berry_curvature_plaquette(const ModelSpec& spec, const Eigen::VectorXd& axis0,
                                         const Eigen::VectorXd& axis1,
                                         const SolvePolicy& policy = {});

// Geometric phase -Arg prod_j <psi(p_j)|psi(p_j+1)> around a closed polyline,
// wrapped to (-pi, pi]. The polyline must end on its starting point.
double berry_phase_loop(const ModelSpec& spec, const std::vector<std::array<double, 2>>& loop,
                        const SolvePolicy& policy = {});

// Same phase from externally supplied states (the closing segment uses the
// first state again); exposed for gauge-invariance tests.
double loop_phase_from_states(const std::vector<Eigen::VectorXcd>& states);

// Closed circle in parameter space: component `fixed_index` held at
// `fixed_value`, the other parameter sweeping [0, 2 pi) in `points` steps.
std::vector<std::array<double, 2>> circle_loop(int fixed_index, double fixed_value, int points);

}  // namespace qgt
