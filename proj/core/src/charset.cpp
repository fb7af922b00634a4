#include "kgrid/charset.hpp"

#include <algorithm>

namespace kgrid {

namespace {

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 0; i < k; ++i) r = r * static_cast<std::uint64_t>(n - i) / (i + 1);
    return r;
}

}  // namespace

std::vector<std::uint64_t> family_topologies(const Space& space, CellFamily family) {
    const int n = space.dimension();
    const std::uint64_t full = space.full_topology();
    std::vector<std::uint64_t> out;
    out.reserve(binomial(n, family.rank));
    if (family.rank == 0) {
        out.push_back(0);
        return out;
    }
    // walk the rank-bit words in increasing order (Gosper's hack)
    std::uint64_t v = (std::uint64_t{1} << family.rank) - 1;
    while (v <= full) {
        out.push_back(v);
        const std::uint64_t t = v | (v - 1);
        if (t == ~std::uint64_t{0}) break;
        v = (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
    }
    return out;
}

MinCharSet::MinCharSet(const Space& space, CellFamily family, std::size_t alloc_cap)
    : CharSetBase(space, family, alloc_cap) {
    const std::uint64_t topo_min = topologies_.front();
    const std::uint64_t topo_max = topologies_.back();
    min_code_ = topo_min << code_shift_;
    max_code_ = (topo_max << code_shift_) | low_mask_;
    // the span tiles exactly when every topology between the extremes belongs
    // to the family (then each index is a family code, given full coords)
    tiles_ = (topo_max - topo_min + 1) == topologies_.size();
    allocate(max_code_ - min_code_ + 1, alloc_cap);
}

void MinCharSet::fill_valid_mask(std::vector<std::uint64_t>& mask) const {
    for (std::uint64_t topo : topologies_) {
        const std::uint64_t base = (topo << code_shift_) - min_code_;
        fill_coord_block(mask, base);
        if (family_.oriented)
            fill_coord_block(mask, base + (block_size_ >> 1));
    }
}

LutCharSet::LutCharSet(const Space& space, CellFamily family, std::size_t alloc_cap)
    : CharSetBase(space, family, alloc_cap) {
    const std::uint64_t lut_entries = space.full_topology() + 1;
    if (lut_entries * sizeof(std::uint64_t) > alloc_cap)
        throw SpaceTooLarge("topology lookup table would exceed the allocation cap");
    lut_.assign(static_cast<std::size_t>(lut_entries), detail::kNoBlock);
    std::uint64_t base = 0;
    for (std::uint64_t topo : topologies_) {
        lut_[static_cast<std::size_t>(topo)] = base;
        base += block_size_;
    }
    tiles_ = true;  // blocks are packed back to back
    allocate(base, alloc_cap);
}

void LutCharSet::fill_valid_mask(std::vector<std::uint64_t>& mask) const {
    for (std::uint64_t topo : topologies_) {
        const std::uint64_t base = lut_[static_cast<std::size_t>(topo)];
        fill_coord_block(mask, base);
        if (family_.oriented)
            fill_coord_block(mask, base + (block_size_ >> 1));
    }
}

}  // namespace kgrid
