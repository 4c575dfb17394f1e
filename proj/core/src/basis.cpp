#include "qgtlab/basis.hpp"

#include <array>
#include <bit>
#include <cassert>
#include <cstdlib>

#include "qgtlab/errors.hpp"

namespace qgt {

namespace {

constexpr int kMaxSites = 64;

const std::array<std::array<std::uint64_t, kMaxSites + 1>, kMaxSites + 1>& pascal_table() {
    static const auto table = [] {
        std::array<std::array<std::uint64_t, kMaxSites + 1>, kMaxSites + 1> c{};
        for (int n = 0; n <= kMaxSites; ++n) {
            c[n][0] = 1;
            for (int k = 1; k <= n; ++k)
                c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0);
        }
        return c;
    }();
    return table;
}

}  // namespace

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    assert(n <= kMaxSites);
    return pascal_table()[n][k];
}

SymmetrySector SymmetrySector::total_sz(int sites, int twice_sz, std::size_t dimension_cap) {
    if (sites < 1 || sites > kMaxSites) throw InvalidModel("sites out of range for a sector basis");
    if (std::abs(twice_sz) > sites || ((twice_sz & 1) != (sites & 1)))
        throw EmptySector("no basis state with 2*Sz = " + std::to_string(twice_sz) +
                          " on " + std::to_string(sites) + " sites");
    const int n_up = (sites + twice_sz) / 2;
    const std::uint64_t dim = binomial(sites, n_up);
    if (dim > dimension_cap)
        throw CapacityExceeded("sector dimension " + std::to_string(dim) +
                               " exceeds cap " + std::to_string(dimension_cap));

    SymmetrySector sector;
    sector.conserved_ = Conserved::TotalSz;
    sector.twice_sz_ = twice_sz;
    sector.sites_ = sites;
    sector.states_.reserve(dim);
    if (n_up == 0) {
        sector.states_.push_back(0);
        return sector;
    }
    // Gosper's hack enumerates equal-popcount patterns in increasing order.
    std::uint64_t v = (std::uint64_t{1} << n_up) - 1;
    const std::uint64_t limit = (sites == kMaxSites) ? ~std::uint64_t{0}
                                                     : (std::uint64_t{1} << sites) - 1;
    while (true) {
        sector.states_.push_back(v);
        if (sector.states_.size() == dim) break;
        const std::uint64_t c = v & (~v + 1);
        const std::uint64_t r = v + c;
        v = (((r ^ v) >> 2) / c) | r;
        if (v > limit) break;
    }
    assert(sector.states_.size() == dim);
    return sector;
}

SymmetrySector SymmetrySector::full(int sites, std::size_t dimension_cap) {
    if (sites < 1 || sites > 62) throw InvalidModel("sites out of range for a full basis");
    const std::uint64_t dim = std::uint64_t{1} << sites;
    if (dim > dimension_cap)
        throw CapacityExceeded("full dimension " + std::to_string(dim) +
                               " exceeds cap " + std::to_string(dimension_cap));
    SymmetrySector sector;
    sector.conserved_ = Conserved::None;
    sector.twice_sz_ = 0;
    sector.sites_ = sites;
    sector.states_.resize(dim);
    for (std::uint64_t i = 0; i < dim; ++i) sector.states_[i] = i;
    return sector;
}

std::size_t SymmetrySector::rank(std::uint64_t pattern) const {
    if (conserved_ == Conserved::None) {
        assert(pattern < states_.size());
        return static_cast<std::size_t>(pattern);
    }
    // Combinatorial number system: with set-bit positions p_1 < ... < p_k,
    // rank = sum_i C(p_i, i).
    std::uint64_t r = 0;
    int i = 0;
    std::uint64_t bits = pattern;
    while (bits) {
        const int p = std::countr_zero(bits);
        bits &= bits - 1;
        ++i;
        r += binomial(p, i);
    }
    assert(r < states_.size() && states_[r] == pattern);
    return static_cast<std::size_t>(r);
}

SymmetrySector sector_basis(const ModelSpec& spec, int twice_sz, std::size_t dimension_cap) {
    spec.validate();
    return SymmetrySector::total_sz(spec.sites, twice_sz, dimension_cap);
}

SymmetrySector ground_sector(const ModelSpec& spec, std::size_t dimension_cap) {
    spec.validate();
    if (spec.conserves_total_sz()) {
        if (spec.sites % 2 != 0)
            throw InvalidModel("xxz ground-state searches use the Sz = 0 sector; even sites required");
        return SymmetrySector::total_sz(spec.sites, 0, dimension_cap);
    }
    return SymmetrySector::full(spec.sites, dimension_cap);
}

}  // namespace qgt
