#pragma once

#include <string>
#include <vector>

namespace qgt {

enum class ModelKind { XXZ, TFIM, RotatedXY, QubitInField };
enum class Boundary { Periodic, Open };

std::string to_string(ModelKind kind);
std::string to_string(Boundary boundary);
ModelKind model_kind_from_string(const std::string& name);
Boundary boundary_from_string(const std::string& name);

// A parametrized Hamiltonian family H(params) on `sites` spins.
//
// Parameter layout per kind:
//   XXZ         1 param  (lambda)  or 2 params (lambda, h: uniform z-field)
//   TFIM        1 param  (h)
//   RotatedXY   2 params (h, phi)
//   QubitInField 2 params (theta, phi), sites == 1
struct ModelSpec {
    ModelKind kind = ModelKind::XXZ;
    int sites = 2;
    Boundary boundary = Boundary::Periodic;
    double coupling = 1.0;  // J
    std::vector<double> params;
    std::vector<std::string> param_names;

    static ModelSpec xxz(int sites, Boundary boundary, double coupling, double lambda);
    static ModelSpec xxz_with_field(int sites, Boundary boundary, double coupling,
                                    double lambda, double field);
    static ModelSpec tfim(int sites, Boundary boundary, double coupling, double field);
    static ModelSpec rotated_xy(int sites, Boundary boundary, double coupling,
                                double field, double angle);
    static ModelSpec qubit_in_field(double theta, double phi);

    int num_params() const { return static_cast<int>(params.size()); }

    // Same model at a shifted parameter point.
    ModelSpec at(std::vector<double> new_params) const;

    // True for the XXZ family (with or without z-field): total S^z commutes with H.
    bool conserves_total_sz() const { return kind == ModelKind::XXZ; }

    // True when H is real in the computational basis, so the ground state can be
    // chosen real and the Berry curvature vanishes.
    bool real_representable() const;

    // Throws InvalidModel if any structural invariant is violated.
    void validate() const;
};

}  // namespace qgt
