#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "kgrid/cell.hpp"
#include "kgrid/charset.hpp"
#include "kgrid/errors.hpp"
#include "kgrid/space.hpp"

namespace kgrid {

/// Sign factor attached to an axis inside a topology word: negative exactly
/// when an odd number of open axes lie above `axis`.
inline Sign axis_parity(std::uint64_t topology, int axis) noexcept {
    const std::uint64_t above = topology >> (axis + 1);
    return static_cast<Sign>(static_cast<std::uint64_t>(std::popcount(above)) & 1u);
}

/// The two signed faces of c obtained by closing it along `axis` (which must
/// be open in c): with t the axis parity sign, {(sign*t) at x, (-sign*t) at
/// x+1}.  Raises CoordOutOfRange when x+1 leaves the axis.
std::pair<SignedCell, SignedCell> lower_boundary_along(const Space& s, SignedCell c, int axis);

/// The two signed cofaces of c obtained by opening it along `axis` (which
/// must be closed in c): with t the axis parity sign, {(sign*t) at x,
/// (-sign*t) at x-1}.  Transpose of lower_boundary_along.  Raises
/// CoordOutOfRange when x-1 leaves the axis.
std::pair<SignedCell, SignedCell> upper_boundary_along(const Space& s, SignedCell c, int axis);

/// All signed faces of c (union of lower_boundary_along over open axes),
/// increasing code order.
std::vector<SignedCell> lower_boundary(const Space& s, SignedCell c);

/// All signed cofaces of c (union of upper_boundary_along over closed axes),
/// increasing code order.
std::vector<SignedCell> upper_boundary(const Space& s, SignedCell c);

/// Set of signed cells under the cancellation discipline: inserting a cell
/// removes its opposite if present, and re-inserting an orientation already
/// held raises DuplicateOrientation.  Never holds a cell together with its
/// opposite.
class SignedCellSet {
public:
    SignedCellSet(const Space& space, int rank, std::size_t alloc_cap = kDefaultAllocCap)
        : bits_(space, CellFamily::oriented_cells(rank), alloc_cap) {}

    const Space& space() const noexcept { return bits_.space(); }
    int rank() const noexcept { return bits_.family().rank; }
    const LutCharSet& bits() const noexcept { return bits_; }

    bool contains(SignedCell c) const { return bits_.contains(c); }
    std::uint64_t cardinality() const { return bits_.cardinality(); }
    bool empty() const noexcept { return bits_.empty(); }
    std::vector<std::uint64_t> codes() const { return bits_.codes(); }
    template <class F>
    void for_each_code(F&& f) const {
        bits_.for_each_code(std::forward<F>(f));
    }

    /// Cancellation merge of one signed cell.
    void merge(SignedCell c) {
        const SignedCell opp = bits_.space().opposite(c);
        if (bits_.contains(opp)) {
            bits_.remove(opp);
        } else if (bits_.contains(c)) {
            throw DuplicateOrientation("cell merged twice with the same orientation");
        } else {
            bits_.add(c);
        }
    }

    template <class Range>
    void merge_all(const Range& cells) {
        for (const SignedCell& c : cells) merge(c);
    }

    /// Unsigned view: the same cells with signs dropped.
    LutCharSet unsigned_shadow() const;

    friend bool operator==(const SignedCellSet& a, const SignedCellSet& b) {
        return a.bits_ == b.bits_;
    }

private:
    LutCharSet bits_;
};

/// Oriented boundary of a spel set: the cancellation merge of the faces of
/// +p over all spels p of O.  Linear in |O|.  Every spel must keep one spel
/// of margin from both borders on every axis, else ObjectTouchesBorder.
SignedCellSet object_boundary(const Space& s, const LutCharSet& spels);

/// For a boundary surfel b of O, the spel pair (interior, exterior) given by
/// its cofaces along the orthogonal axis: the positively signed coface must
/// lie in O and the negatively signed one outside, else NotABel.
std::pair<Cell, Cell> interior_exterior(const Space& s, SignedCell b, const LutCharSet& spels);

}  // namespace kgrid
