#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qgtlab/model.hpp"

namespace qgt {

inline constexpr std::size_t kDefaultDimensionCap = 5'000'000;

enum class Conserved { TotalSz, None };

// An ordered computational-basis sector. Patterns are stored ascending; bit i of a
// pattern is site i (1 = spin up). rank() inverts state() in O(sites) via
// combinatorial indexing, with no hashing.
class SymmetrySector {
public:
    SymmetrySector() = default;

    static SymmetrySector total_sz(int sites, int twice_sz,
                                   std::size_t dimension_cap = kDefaultDimensionCap);
    static SymmetrySector full(int sites, std::size_t dimension_cap = kDefaultDimensionCap);

    Conserved conserved() const { return conserved_; }
    int twice_sz() const { return twice_sz_; }
    int sites() const { return sites_; }
    std::size_t dimension() const { return states_.size(); }

    std::uint64_t state(std::size_t index) const { return states_[index]; }
    const std::vector<std::uint64_t>& states() const { return states_; }

    // Index of `pattern` in the sector ordering. The pattern must belong to the sector.
    std::size_t rank(std::uint64_t pattern) const;

private:
    Conserved conserved_ = Conserved::None;
    int twice_sz_ = 0;
    int sites_ = 0;
    std::vector<std::uint64_t> states_;
};

// Binomial coefficient from the cached Pascal table (valid for n <= 64).
std::uint64_t binomial(int n, int k);

// Sector with total S^z = twice_sz/2. Throws EmptySector when no pattern matches,
// CapacityExceeded when the dimension exceeds the cap.
SymmetrySector sector_basis(const ModelSpec& spec, int twice_sz,
                            std::size_t dimension_cap = kDefaultDimensionCap);

// Sector the ground-state search runs in: Sz = 0 for the XXZ family (even sites
// required), the full space otherwise.
SymmetrySector ground_sector(const ModelSpec& spec,
                             std::size_t dimension_cap = kDefaultDimensionCap);

}  // namespace qgt
