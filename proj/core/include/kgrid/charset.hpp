#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <utility>
#include <vector>

#include "kgrid/cell.hpp"
#include "kgrid/errors.hpp"
#include "kgrid/space.hpp"

namespace kgrid {

/// Which cells a characteristic set stores: all cells of one dimension,
/// either as unsigned codes or as oriented (signed) codes.
struct CellFamily {
    int rank = 0;          ///< cell dimension (number of open axes)
    bool oriented = false; ///< true when members carry a sign bit

    static CellFamily spels(const Space& s) { return {s.dimension(), false}; }
    static CellFamily surfels(const Space& s) { return {s.dimension() - 1, false}; }
    static CellFamily cells(int rank) { return {rank, false}; }
    static CellFamily oriented_spels(const Space& s) { return {s.dimension(), true}; }
    static CellFamily oriented_surfels(const Space& s) { return {s.dimension() - 1, true}; }
    static CellFamily oriented_cells(int rank) { return {rank, true}; }

    friend bool operator==(const CellFamily&, const CellFamily&) = default;
};

/// All admissible topology words of the family in a space, increasing.
std::vector<std::uint64_t> family_topologies(const Space& space, CellFamily family);

/// Containers refuse tables beyond this many bytes unless told otherwise.
inline constexpr std::size_t kDefaultAllocCap = std::size_t{4} << 30;

namespace detail {

inline constexpr std::uint64_t kNoBlock = ~std::uint64_t{0};

/// Data and operations shared by both characteristic-set containers.
/// The derived container supplies the code<->index mapping.
template <class Derived>
class CharSetBase {
public:
    const Space& space() const noexcept { return space_; }
    const CellFamily& family() const noexcept { return family_; }
    /// Number of addressable bits in the table.
    std::uint64_t size_bits() const noexcept { return bit_count_; }
    /// Bytes actually allocated for the table.
    std::size_t size_bytes() const noexcept { return words_.size() * sizeof(std::uint64_t); }
    /// Number of distinct member codes the layout can store.
    std::uint64_t capacity() const noexcept {
        return static_cast<std::uint64_t>(topologies_.size()) * block_size_;
    }
    const std::vector<std::uint64_t>& words() const noexcept { return words_; }

    bool contains(Cell c) const {
        require_unsigned();
        return test(self().index_of(c.code));
    }
    bool contains(SignedCell c) const {
        require_oriented();
        return test(self().index_of(c.code));
    }
    void add(Cell c) {
        require_unsigned();
        set_bit(self().index_of(c.code));
    }
    void add(SignedCell c) {
        require_oriented();
        set_bit(self().index_of(c.code));
    }
    void remove(Cell c) {
        require_unsigned();
        clear_bit(self().index_of(c.code));
    }
    void remove(SignedCell c) {
        require_oriented();
        clear_bit(self().index_of(c.code));
    }
    /// Flip membership; returns the state before the flip.
    bool toggle(Cell c) {
        require_unsigned();
        return flip_bit(self().index_of(c.code));
    }
    bool toggle(SignedCell c) {
        require_oriented();
        return flip_bit(self().index_of(c.code));
    }

    void clear() {
        std::memset(words_.data(), 0, words_.size() * sizeof(std::uint64_t));
        count_ = 0;
        count_ok_ = true;
    }

    bool empty() const noexcept {
        for (std::uint64_t w : words_)
            if (w) return false;
        return true;
    }

    /// Member count; recounted on demand and memoized.
    std::uint64_t cardinality() const {
        if (!count_ok_) {
            std::uint64_t c = 0;
            for (std::uint64_t w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
            count_ = c;
            count_ok_ = true;
        }
        return count_;
    }

    Derived& unite(const Derived& o) {
        require_same(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        count_ok_ = false;
        return self();
    }
    Derived& intersect(const Derived& o) {
        require_same(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        count_ok_ = false;
        return self();
    }
    Derived& subtract(const Derived& o) {
        require_same(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        count_ok_ = false;
        return self();
    }

    /// Family-relative complement: afterwards the set holds exactly the valid
    /// family cells that were not members.
    Derived& complement_in_place() {
        if (tiles_ && full_coords_) {
            for (std::uint64_t& w : words_) w = ~w;
            mask_tail();
        } else {
            std::vector<std::uint64_t> valid(words_.size(), 0);
            self().fill_valid_mask(valid);
            for (std::size_t i = 0; i < words_.size(); ++i)
                words_[i] = ~words_[i] & valid[i];
        }
        count_ok_ = false;
        return self();
    }

    friend bool operator==(const Derived& a, const Derived& b) {
        return a.space_ == b.space_ && a.family_ == b.family_ && a.words_ == b.words_;
    }

    /// Visit member codes in increasing code order.
    template <class F>
    void for_each_code(F&& f) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                const int b = std::countr_zero(w);
                f(self().code_of(static_cast<std::uint64_t>(wi) * 64 + static_cast<unsigned>(b)));
                w &= w - 1;
            }
        }
    }

    std::vector<std::uint64_t> codes() const {
        std::vector<std::uint64_t> out;
        out.reserve(cardinality());
        for_each_code([&](std::uint64_t c) { out.push_back(c); });
        return out;
    }

    /// Replaces the table content with `w` (same word count required),
    /// dropping any bits that fall outside the family's valid-code pattern.
    void assign_words(std::span<const std::uint64_t> w) {
        if (w.size() != words_.size())
            throw SizeMismatch("word count does not match the table layout");
        std::copy(w.begin(), w.end(), words_.begin());
        if (tiles_ && full_coords_) {
            mask_tail();
        } else {
            std::vector<std::uint64_t> valid(words_.size(), 0);
            self().fill_valid_mask(valid);
            for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= valid[i];
        }
        count_ok_ = false;
    }

    /// Sets `count` members with consecutive axis-0 coordinates, starting at
    /// `first_code`.  The run must not cross the axis-0 bound.
    void add_axis0_run(std::uint64_t first_code, std::uint64_t count) {
        if (count == 0) return;
        const std::uint64_t axis0_mask = (std::uint64_t{1} << space_.coord_bits(0)) - 1;
        const std::uint64_t x0 = first_code & axis0_mask;
        if (x0 + count - 1 > space_.coord_max(0))
            throw CoordOutOfRange("run crosses the axis-0 bound");
        set_run(self().index_of(first_code), count);
        count_ok_ = false;
    }

protected:
    CharSetBase(const Space& space, CellFamily family, std::size_t alloc_cap)
        : space_(space), family_(family) {
        if (family.rank < 0 || family.rank > space.dimension())
            throw NotInFamily("family rank outside [0, n]");
        topologies_ = family_topologies(space, family);
        code_shift_ = space.coord_field_width() + (family.oriented ? 1 : 0);
        block_size_ = std::uint64_t{1} << code_shift_;
        low_mask_ = block_size_ - 1;
        full_coords_ = true;
        for (int i = 0; i < space.dimension(); ++i)
            if (space.coord_max(i) + 1 != (std::uint64_t{1} << space.coord_bits(i)))
                full_coords_ = false;
        (void)alloc_cap;
    }

    void allocate(std::uint64_t bits, std::size_t alloc_cap) {
        bit_count_ = bits;
        const std::uint64_t nwords = (bits + 63) / 64;
        if (nwords * sizeof(std::uint64_t) > alloc_cap)
            throw SpaceTooLarge("characteristic table would exceed the allocation cap");
        words_.assign(static_cast<std::size_t>(nwords), 0);
    }

    Derived& self() noexcept { return static_cast<Derived&>(*this); }
    const Derived& self() const noexcept { return static_cast<const Derived&>(*this); }

    void require_unsigned() const {
        if (family_.oriented)
            throw FamilyMismatch("unsigned cell offered to an oriented family");
    }
    void require_oriented() const {
        if (!family_.oriented)
            throw FamilyMismatch("signed cell offered to an unsigned family");
    }
    void require_same(const Derived& o) const {
        if (!(space_ == o.space_) || !(family_ == o.family_))
            throw FamilyMismatch("set operands live in different spaces or families");
    }

    bool test(std::uint64_t idx) const { return (words_[idx >> 6] >> (idx & 63)) & 1u; }
    void set_bit(std::uint64_t idx) {
        words_[idx >> 6] |= std::uint64_t{1} << (idx & 63);
        count_ok_ = false;
    }
    void clear_bit(std::uint64_t idx) {
        words_[idx >> 6] &= ~(std::uint64_t{1} << (idx & 63));
        count_ok_ = false;
    }
    bool flip_bit(std::uint64_t idx) {
        const std::uint64_t bit = std::uint64_t{1} << (idx & 63);
        const bool prev = (words_[idx >> 6] & bit) != 0;
        words_[idx >> 6] ^= bit;
        count_ok_ = false;
        return prev;
    }

    void mask_tail() {
        const int rem = static_cast<int>(bit_count_ & 63);
        if (rem != 0 && !words_.empty())
            words_.back() &= (std::uint64_t{1} << rem) - 1;
    }

    /// Set bits [first, first+count) of `dst`.
    static void set_run(std::vector<std::uint64_t>& dst, std::uint64_t first,
                        std::uint64_t count) {
        std::uint64_t w = first >> 6;
        int b = static_cast<int>(first & 63);
        while (count > 0) {
            const std::uint64_t in_word = std::min<std::uint64_t>(count, 64 - b);
            const std::uint64_t mask =
                in_word == 64 ? ~std::uint64_t{0} : (((std::uint64_t{1} << in_word) - 1) << b);
            dst[static_cast<std::size_t>(w)] |= mask;
            count -= in_word;
            ++w;
            b = 0;
        }
    }

    void set_run(std::uint64_t first, std::uint64_t count) { set_run(words_, first, count); }

    /// Fill, into `mask`, the valid-coordinate pattern of one coordinate
    /// block whose first index is `base`.
    void fill_coord_block(std::vector<std::uint64_t>& mask, std::uint64_t base) const {
        const int n = space_.dimension();
        const std::uint64_t coord_block = std::uint64_t{1} << space_.coord_field_width();
        if (full_coords_) {
            set_run(mask, base, coord_block);
            return;
        }
        // odometer over axes 1..n-1, one contiguous axis-0 run per position
        const std::uint64_t run_len = space_.coord_max(0) + 1;
        std::vector<std::uint64_t> x(static_cast<std::size_t>(n), 0);
        for (;;) {
            std::uint64_t off = 0;
            for (int i = 1; i < n; ++i) off |= x[static_cast<std::size_t>(i)]
                                                << space_.coord_shift(i);
            set_run(mask, base + off, run_len);
            int i = 1;
            for (; i < n; ++i) {
                if (x[static_cast<std::size_t>(i)] < space_.coord_max(i)) {
                    ++x[static_cast<std::size_t>(i)];
                    break;
                }
                x[static_cast<std::size_t>(i)] = 0;
            }
            if (i >= n) break;
        }
    }

    Space space_;
    CellFamily family_;
    std::vector<std::uint64_t> topologies_;
    std::vector<std::uint64_t> words_;
    std::uint64_t bit_count_ = 0;
    std::uint64_t block_size_ = 0;
    std::uint64_t low_mask_ = 0;
    int code_shift_ = 0;
    bool full_coords_ = false;
    bool tiles_ = false;  // every table index is a family code (given full coords)
    mutable std::uint64_t count_ = 0;
    mutable bool count_ok_ = true;
};

}  // namespace detail

/// Characteristic set addressed by code offset from the family's smallest
/// possible code.  One subtraction per access; the table spans every code
/// between the family's smallest and largest, so families whose topology
/// words are not consecutive pay for the gaps.
class MinCharSet : public detail::CharSetBase<MinCharSet> {
    friend class detail::CharSetBase<MinCharSet>;

public:
    MinCharSet(const Space& space, CellFamily family, std::size_t alloc_cap = kDefaultAllocCap);

    std::uint64_t min_code() const noexcept { return min_code_; }
    std::uint64_t max_code() const noexcept { return max_code_; }

    std::uint64_t index_of(std::uint64_t code) const {
        const std::uint64_t topo = code >> code_shift_;
        if (std::popcount(topo) != family_.rank || topo > space_.full_topology())
            throw NotInFamily("cell topology outside the family");
        return code - min_code_;
    }
    std::uint64_t code_of(std::uint64_t index) const noexcept { return min_code_ + index; }

private:
    void fill_valid_mask(std::vector<std::uint64_t>& mask) const;

    std::uint64_t min_code_ = 0;
    std::uint64_t max_code_ = 0;
};

/// Characteristic set addressed through a topology-indexed block table:
/// index = lut[topology] + sign-and-coordinate bits.  Blocks are laid out in
/// increasing topology order, so only admissible topologies cost memory.
class LutCharSet : public detail::CharSetBase<LutCharSet> {
    friend class detail::CharSetBase<LutCharSet>;

public:
    LutCharSet(const Space& space, CellFamily family, std::size_t alloc_cap = kDefaultAllocCap);

    const std::vector<std::uint64_t>& lut() const noexcept { return lut_; }

    std::uint64_t index_of(std::uint64_t code) const {
        const std::uint64_t topo = code >> code_shift_;
        if (topo >= lut_.size() || lut_[topo] == detail::kNoBlock)
            throw NotInFamily("cell topology outside the family");
        return lut_[topo] + (code & low_mask_);
    }
    std::uint64_t code_of(std::uint64_t index) const noexcept {
        const std::uint64_t block = index >> code_shift_;
        return (topologies_[static_cast<std::size_t>(block)] << code_shift_) |
               (index & low_mask_);
    }

private:
    void fill_valid_mask(std::vector<std::uint64_t>& mask) const;

    std::vector<std::uint64_t> lut_;
};

// Whole-set operations returning fresh sets.
template <class S>
S set_union(const S& a, const S& b) {
    S r = a;
    r.unite(b);
    return r;
}
template <class S>
S set_intersection(const S& a, const S& b) {
    S r = a;
    r.intersect(b);
    return r;
}
template <class S>
S set_difference(const S& a, const S& b) {
    S r = a;
    r.subtract(b);
    return r;
}
template <class S>
S set_complement(const S& a) {
    S r = a;
    r.complement_in_place();
    return r;
}

}  // namespace kgrid
