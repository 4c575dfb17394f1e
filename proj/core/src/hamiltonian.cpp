#include "qgtlab/hamiltonian.hpp"

#include <bit>
#include <cmath>
#include <utility>

#include "qgtlab/errors.hpp"

namespace qgt {

namespace {

int bit_at(std::uint64_t state, int site) { return static_cast<int>((state >> site) & 1u); }

std::vector<std::pair<int, int>> chain_bonds(int sites, Boundary boundary) {
    std::vector<std::pair<int, int>> bonds;
    for (int i = 0; i + 1 < sites; ++i) bonds.emplace_back(i, i + 1);
    if (boundary == Boundary::Periodic) bonds.emplace_back(sites - 1, 0);
    return bonds;
}

void check_sector(const ModelSpec& spec, const SymmetrySector& sector) {
    spec.validate();
    if (sector.sites() != spec.sites)
        throw SectorMismatch("sector was built for a different chain length");
    if (sector.conserved() == Conserved::TotalSz && !spec.conserves_total_sz())
        throw SectorMismatch("total-Sz sectors are only valid for the XXZ family");
}

// Flip amplitude of (cos(phi) sigma^x + sin(phi) sigma^y) acting on bit value b.
Complex rotated_x_amp(double cp, double sp, int b) { return {cp, sp * (1 - 2 * b)}; }
// Same for its phi-derivative (-sin(phi) sigma^x + cos(phi) sigma^y).
Complex rotated_y_amp(double cp, double sp, int b) { return {-sp, cp * (1 - 2 * b)}; }

SparseOperator build_qubit(const ModelSpec& spec, const SymmetrySector& sector, int term) {
    if (sector.dimension() != 2) throw SectorMismatch("qubit model needs the full 2-state basis");
    const double theta = spec.params[0];
    const double phi = spec.params[1];
    // term: -1 = H, 0 = dH/dtheta, 1 = dH/dphi. Basis index 0 is spin down.
    std::vector<Triplet> t;
    const Complex eip{std::cos(phi), std::sin(phi)};
    if (term < 0) {
        t.push_back({0, 0, {std::cos(theta) / 2, 0.0}});
        t.push_back({1, 1, {-std::cos(theta) / 2, 0.0}});
        const Complex off = -0.5 * std::sin(theta) * eip;  // <1|H|0>
        t.push_back({1, 0, off});
        t.push_back({0, 1, std::conj(off)});
    } else if (term == 0) {
        t.push_back({0, 0, {-std::sin(theta) / 2, 0.0}});
        t.push_back({1, 1, {std::sin(theta) / 2, 0.0}});
        const Complex off = -0.5 * std::cos(theta) * eip;
        t.push_back({1, 0, off});
        t.push_back({0, 1, std::conj(off)});
    } else {
        const Complex off = Complex{0.0, -0.5 * std::sin(theta)} * eip;
        t.push_back({1, 0, off});
        t.push_back({0, 1, std::conj(off)});
    }
    return SparseOperator::from_triplets(2, std::move(t), true);
}

}  // namespace

SparseOperator build_hamiltonian(const ModelSpec& spec, const SymmetrySector& sector) {
    check_sector(spec, sector);
    if (spec.kind == ModelKind::QubitInField) return build_qubit(spec, sector, -1);

    const auto bonds = chain_bonds(spec.sites, spec.boundary);
    const double J = spec.coupling;
    const std::size_t dim = sector.dimension();
    std::vector<Triplet> triplets;

    switch (spec.kind) {
        case ModelKind::XXZ: {
            const double lambda = spec.params[0];
            const double field = spec.num_params() == 2 ? spec.params[1] : 0.0;
            triplets.reserve(dim * (bonds.size() + 1));
            for (std::size_t j = 0; j < dim; ++j) {
                const std::uint64_t s = sector.state(j);
                double diag = -field * (static_cast<double>(std::popcount(s)) - spec.sites / 2.0);
                for (const auto& [a, b] : bonds) {
                    const int ba = bit_at(s, a), bb = bit_at(s, b);
                    diag += J * lambda * (ba - 0.5) * (bb - 0.5);
                    if (ba != bb) {
                        const std::uint64_t flipped =
                            s ^ ((std::uint64_t{1} << a) | (std::uint64_t{1} << b));
                        triplets.push_back({static_cast<std::uint32_t>(sector.rank(flipped)),
                                            static_cast<std::uint32_t>(j),
                                            {0.5 * J, 0.0}});
                    }
                }
                triplets.push_back({static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(j),
                                    {diag, 0.0}});
            }
            break;
        }
        case ModelKind::TFIM: {
            const double field = spec.params[0];
            triplets.reserve(dim * (bonds.size() + 1));
            for (std::size_t j = 0; j < dim; ++j) {
                const std::uint64_t s = sector.state(j);
                const double diag = -field * (2.0 * std::popcount(s) - spec.sites);
                triplets.push_back({static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(j),
                                    {diag, 0.0}});
                for (const auto& [a, b] : bonds) {
                    const std::uint64_t flipped =
                        s ^ ((std::uint64_t{1} << a) | (std::uint64_t{1} << b));
                    triplets.push_back({static_cast<std::uint32_t>(sector.rank(flipped)),
                                        static_cast<std::uint32_t>(j),
                                        {-J, 0.0}});
                }
            }
            break;
        }
        case ModelKind::RotatedXY: {
            const double field = spec.params[0];
            const double cp = std::cos(spec.params[1]);
            const double sp = std::sin(spec.params[1]);
            triplets.reserve(dim * (bonds.size() + 1));
            for (std::size_t j = 0; j < dim; ++j) {
                const std::uint64_t s = sector.state(j);
                const double diag = -field * (2.0 * std::popcount(s) - spec.sites);
                triplets.push_back({static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(j),
                                    {diag, 0.0}});
                for (const auto& [a, b] : bonds) {
                    const std::uint64_t flipped =
                        s ^ ((std::uint64_t{1} << a) | (std::uint64_t{1} << b));
                    const Complex amp = -J * rotated_x_amp(cp, sp, bit_at(s, a)) *
                                        rotated_x_amp(cp, sp, bit_at(s, b));
                    triplets.push_back({static_cast<std::uint32_t>(sector.rank(flipped)),
                                        static_cast<std::uint32_t>(j), amp});
                }
            }
            break;
        }
        case ModelKind::QubitInField:
            break;  // handled above
    }
    return SparseOperator::from_triplets(dim, std::move(triplets), true);
}

SparseOperator build_perturbation(const ModelSpec& spec, const SymmetrySector& sector, int mu) {
    check_sector(spec, sector);
    if (mu < 0 || mu >= spec.num_params())
        throw BadParameterIndex("parameter index " + std::to_string(mu) + " out of range");
    if (spec.kind == ModelKind::QubitInField) return build_qubit(spec, sector, mu);

    const auto bonds = chain_bonds(spec.sites, spec.boundary);
    const double J = spec.coupling;
    const std::size_t dim = sector.dimension();
    std::vector<Triplet> triplets;

    switch (spec.kind) {
        case ModelKind::XXZ: {
            triplets.reserve(dim);
            for (std::size_t j = 0; j < dim; ++j) {
                const std::uint64_t s = sector.state(j);
                double diag = 0.0;
                if (mu == 0) {
                    for (const auto& [a, b] : bonds)
                        diag += J * (bit_at(s, a) - 0.5) * (bit_at(s, b) - 0.5);
                } else {
                    diag = -(static_cast<double>(std::popcount(s)) - spec.sites / 2.0);
                }
                triplets.push_back({static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(j),
                                    {diag, 0.0}});
            }
            break;
        }
        case ModelKind::TFIM: {
            triplets.reserve(dim);
            for (std::size_t j = 0; j < dim; ++j) {
                const double diag = -(2.0 * std::popcount(sector.state(j)) - spec.sites);
                triplets.push_back({static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(j),
                                    {diag, 0.0}});
            }
            break;
        }
        case ModelKind::RotatedXY: {
            if (mu == 0) {
                triplets.reserve(dim);
                for (std::size_t j = 0; j < dim; ++j) {
                    const double diag = -(2.0 * std::popcount(sector.state(j)) - spec.sites);
                    triplets.push_back({static_cast<std::uint32_t>(j),
                                        static_cast<std::uint32_t>(j), {diag, 0.0}});
                }
                break;
            }
            // dH/dphi from the rotation generator: each bond operator differentiates
            // term by term, sigma~^x -> sigma~^y.
            const double cp = std::cos(spec.params[1]);
            const double sp = std::sin(spec.params[1]);
            triplets.reserve(dim * bonds.size());
            for (std::size_t j = 0; j < dim; ++j) {
                const std::uint64_t s = sector.state(j);
                for (const auto& [a, b] : bonds) {
                    const std::uint64_t flipped =
                        s ^ ((std::uint64_t{1} << a) | (std::uint64_t{1} << b));
                    const int ba = bit_at(s, a), bb = bit_at(s, b);
                    const Complex amp =
                        -J * (rotated_y_amp(cp, sp, ba) * rotated_x_amp(cp, sp, bb) +
                              rotated_x_amp(cp, sp, ba) * rotated_y_amp(cp, sp, bb));
                    triplets.push_back({static_cast<std::uint32_t>(sector.rank(flipped)),
                                        static_cast<std::uint32_t>(j), amp});
                }
            }
            break;
        }
        case ModelKind::QubitInField:
            break;  // handled above
    }
    return SparseOperator::from_triplets(dim, std::move(triplets), true);
}

}  // namespace qgt
