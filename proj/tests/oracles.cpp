#include "oracles.hpp"

#include <stdexcept>

namespace oracle {

namespace {

const Eigen::Matrix2cd& pauli_x() {
    static const Eigen::Matrix2cd m = (Eigen::Matrix2cd() << 0, 1, 1, 0).finished();
    return m;
}
const Eigen::Matrix2cd& pauli_y() {
    static const Eigen::Matrix2cd m =
        (Eigen::Matrix2cd() << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0)
            .finished();
    return m;
}
const Eigen::Matrix2cd& pauli_z() {
    // Basis order (|down>, |up>) matches bit value 0 = down.
    static const Eigen::Matrix2cd m = (Eigen::Matrix2cd() << -1, 0, 0, 1).finished();
    return m;
}

std::vector<std::pair<int, int>> bonds(const qgt::ModelSpec& spec) {
    std::vector<std::pair<int, int>> list;
    for (int i = 0; i + 1 < spec.sites; ++i) list.emplace_back(i, i + 1);
    if (spec.boundary == qgt::Boundary::Periodic) list.emplace_back(spec.sites - 1, 0);
    return list;
}

Eigen::MatrixXcd bond_sum(const qgt::ModelSpec& spec, const Eigen::Matrix2cd& a,
                          const Eigen::Matrix2cd& b) {
    const long dim = 1L << spec.sites;
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& [i, j] : bonds(spec))
        sum += site_operator(spec.sites, i, a) * site_operator(spec.sites, j, b);
    return sum;
}

Eigen::MatrixXcd field_sum(int sites, const Eigen::Matrix2cd& m) {
    const long dim = 1L << sites;
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
    for (int i = 0; i < sites; ++i) sum += site_operator(sites, i, m);
    return sum;
}

}  // namespace

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Eigen::MatrixXcd site_operator(int sites, int site, const Eigen::Matrix2cd& m) {
    const long left = 1L << (sites - 1 - site);
    const long right = 1L << site;
    return kron(Eigen::MatrixXcd::Identity(left, left),
                kron(m, Eigen::MatrixXcd::Identity(right, right)));
}

Eigen::MatrixXcd kron_hamiltonian(const qgt::ModelSpec& spec) {
    using qgt::ModelKind;
    const double j = spec.coupling;
    switch (spec.kind) {
        case ModelKind::XXZ: {
            const double lambda = spec.params.at(0);
            const double h = spec.num_params() == 2 ? spec.params.at(1) : 0.0;
            const Eigen::Matrix2cd sx = 0.5 * pauli_x(), sy = 0.5 * pauli_y(),
                                   sz = 0.5 * pauli_z();
            return j * (bond_sum(spec, sx, sx) + bond_sum(spec, sy, sy) +
                        lambda * bond_sum(spec, sz, sz)) -
                   h * field_sum(spec.sites, sz);
        }
        case ModelKind::TFIM: {
            const double h = spec.params.at(0);
            return -j * bond_sum(spec, pauli_x(), pauli_x()) -
                   h * field_sum(spec.sites, pauli_z());
        }
        case ModelKind::RotatedXY: {
            const double h = spec.params.at(0);
            const double phi = spec.params.at(1);
            const Eigen::Matrix2cd rx = std::cos(phi) * pauli_x() + std::sin(phi) * pauli_y();
            return -j * bond_sum(spec, rx, rx) - h * field_sum(spec.sites, pauli_z());
        }
        case ModelKind::QubitInField: {
            const double theta = spec.params.at(0);
            const double phi = spec.params.at(1);
            return -0.5 * (std::cos(theta) * pauli_z() +
                           std::sin(theta) * (std::cos(phi) * pauli_x() +
                                              std::sin(phi) * pauli_y()));
        }
    }
    throw std::logic_error("unreachable");
}

Eigen::MatrixXcd kron_perturbation(const qgt::ModelSpec& spec, int mu) {
    using qgt::ModelKind;
    const double j = spec.coupling;
    switch (spec.kind) {
        case ModelKind::XXZ: {
            const Eigen::Matrix2cd sz = 0.5 * pauli_z();
            if (mu == 0) return j * bond_sum(spec, sz, sz);
            return -field_sum(spec.sites, sz);
        }
        case ModelKind::TFIM:
            return -field_sum(spec.sites, pauli_z());
        case ModelKind::RotatedXY: {
            if (mu == 0) return -field_sum(spec.sites, pauli_z());
            const double phi = spec.params.at(1);
            const Eigen::Matrix2cd rx = std::cos(phi) * pauli_x() + std::sin(phi) * pauli_y();
            const Eigen::Matrix2cd ry = -std::sin(phi) * pauli_x() + std::cos(phi) * pauli_y();
            return -j * (bond_sum(spec, ry, rx) + bond_sum(spec, rx, ry));
        }
        case ModelKind::QubitInField: {
            const double theta = spec.params.at(0);
            const double phi = spec.params.at(1);
            const Eigen::Matrix2cd planar =
                std::cos(phi) * pauli_x() + std::sin(phi) * pauli_y();
            if (mu == 0)
                return -0.5 * (-std::sin(theta) * pauli_z() + std::cos(theta) * planar);
            const Eigen::Matrix2cd dplanar =
                -std::sin(phi) * pauli_x() + std::cos(phi) * pauli_y();
            return -0.5 * std::sin(theta) * dplanar;
        }
    }
    throw std::logic_error("unreachable");
}

Eigen::MatrixXcd restrict_to_sector(const Eigen::MatrixXcd& full,
                                    const qgt::SymmetrySector& sector) {
    const auto dim = static_cast<Eigen::Index>(sector.dimension());
    Eigen::MatrixXcd out(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index c = 0; c < dim; ++c)
            out(r, c) = full(static_cast<Eigen::Index>(sector.state(r)),
                             static_cast<Eigen::Index>(sector.state(c)));
    return out;
}

}  // namespace oracle
