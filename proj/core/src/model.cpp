#include "qgtlab/model.hpp"

#include <cmath>

#include "qgtlab/errors.hpp"

namespace qgt {

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::XXZ: return "xxz";
        case ModelKind::TFIM: return "tfim";
        case ModelKind::RotatedXY: return "rotated-xy";
        case ModelKind::QubitInField: return "qubit";
    }
    return "?";
}

std::string to_string(Boundary boundary) {
    return boundary == Boundary::Periodic ? "periodic" : "open";
}

ModelKind model_kind_from_string(const std::string& name) {
    if (name == "xxz") return ModelKind::XXZ;
    if (name == "tfim") return ModelKind::TFIM;
    if (name == "rotated-xy" || name == "rotated_xy" || name == "rxy") return ModelKind::RotatedXY;
    if (name == "qubit") return ModelKind::QubitInField;
    throw InvalidModel("unknown model kind '" + name + "'");
}

Boundary boundary_from_string(const std::string& name) {
    if (name == "periodic" || name == "pbc") return Boundary::Periodic;
    if (name == "open" || name == "obc") return Boundary::Open;
    throw InvalidModel("unknown boundary '" + name + "'");
}

ModelSpec ModelSpec::xxz(int sites, Boundary boundary, double coupling, double lambda) {
    ModelSpec spec{ModelKind::XXZ, sites, boundary, coupling, {lambda}, {"lambda"}};
    spec.validate();
    return spec;
}

ModelSpec ModelSpec::xxz_with_field(int sites, Boundary boundary, double coupling,
                                    double lambda, double field) {
    ModelSpec spec{ModelKind::XXZ, sites, boundary, coupling, {lambda, field}, {"lambda", "h"}};
    spec.validate();
    return spec;
}

ModelSpec ModelSpec::tfim(int sites, Boundary boundary, double coupling, double field) {
    ModelSpec spec{ModelKind::TFIM, sites, boundary, coupling, {field}, {"h"}};
    spec.validate();
    return spec;
}

ModelSpec ModelSpec::rotated_xy(int sites, Boundary boundary, double coupling,
                                double field, double angle) {
    ModelSpec spec{ModelKind::RotatedXY, sites, boundary, coupling, {field, angle}, {"h", "phi"}};
    spec.validate();
    return spec;
}

ModelSpec ModelSpec::qubit_in_field(double theta, double phi) {
    ModelSpec spec{ModelKind::QubitInField, 1, Boundary::Open, 1.0, {theta, phi}, {"theta", "phi"}};
    spec.validate();
    return spec;
}

ModelSpec ModelSpec::at(std::vector<double> new_params) const {
    if (new_params.size() != params.size())
        throw BadParameterIndex("parameter count mismatch in ModelSpec::at");
    ModelSpec copy = *this;
    copy.params = std::move(new_params);
    return copy;
}

bool ModelSpec::real_representable() const {
    switch (kind) {
        case ModelKind::XXZ:
        case ModelKind::TFIM:
            return true;
        case ModelKind::RotatedXY: {
            // phi = 0 mod pi keeps the bond operators real.
            const double phi = params.at(1);
            return std::abs(std::remainder(phi, M_PI)) < 1e-15;
        }
        case ModelKind::QubitInField:
            return false;
    }
    return false;
}

void ModelSpec::validate() const {
    if (sites < 1) throw InvalidModel("sites must be >= 1");
    if (param_names.size() != params.size())
        throw InvalidModel("param_names must match params in length");
    if (!std::isfinite(coupling)) throw InvalidModel("coupling must be finite");
    for (double p : params)
        if (!std::isfinite(p)) throw InvalidModel("parameters must be finite");

    switch (kind) {
        case ModelKind::QubitInField:
            if (sites != 1) throw InvalidModel("qubit model requires sites == 1");
            if (params.size() != 2) throw InvalidModel("qubit model takes (theta, phi)");
            return;
        case ModelKind::XXZ:
            if (params.size() != 1 && params.size() != 2)
                throw InvalidModel("xxz takes (lambda) or (lambda, h)");
            break;
        case ModelKind::TFIM:
            if (params.size() != 1) throw InvalidModel("tfim takes (h)");
            break;
        case ModelKind::RotatedXY:
            if (params.size() != 2) throw InvalidModel("rotated-xy takes (h, phi)");
            break;
    }
    if (sites < 2) throw InvalidModel("chain models require sites >= 2");
    if (boundary == Boundary::Periodic && sites == 2)
        throw InvalidModel("periodic boundary with sites == 2 double-counts the bond");
}

}  // namespace qgt
