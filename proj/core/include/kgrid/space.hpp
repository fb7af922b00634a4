#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "kgrid/cell.hpp"
#include "kgrid/errors.hpp"

namespace kgrid {

/// Relation of the two cells 1-incident to a given cell along one axis.
enum class IncidenceKind {
    low,  ///< the cell is open along the axis; incident cells are one dimension lower
    up,   ///< the cell is closed along the axis; incident cells are one dimension higher
};

/// An n-dimensional grid of cubical cells with bit-packed codes.
///
/// Every cell is identified by its digital coordinates (one per axis, each in
/// [0, coord_max]) plus an n-bit topology word: bit i set means the cell is
/// open along axis i.  A spel (n-cell) is open along every axis, a pointel
/// (0-cell) along none, a surfel ((n-1)-cell) along all but one.  The
/// Khalimsky coordinate along axis i is 2*x_i + topology_bit_i.
///
/// Codes pack, least significant first: the coordinates (axis 0 lowest, each
/// in a field wide enough for its bound), then for signed codes one sign bit,
/// then the topology word.  The layout must fit a 64-bit word, sign bit
/// included, or the constructor raises SpaceTooLarge.
class Space {
public:
    explicit Space(std::span<const std::uint64_t> coord_max);
    Space(std::initializer_list<std::uint64_t> coord_max);

    int dimension() const noexcept { return n_; }
    std::uint64_t coord_max(int axis) const { return axes_[axis].max; }
    int coord_bits(int axis) const { return axes_[axis].bits; }
    int coord_shift(int axis) const { return axes_[axis].shift; }
    /// Total width of the packed coordinate field (sum of per-axis widths).
    int coord_field_width() const noexcept { return cfw_; }
    /// Topology word of spels: all n bits set.
    std::uint64_t full_topology() const noexcept { return full_; }
    bool operator==(const Space& other) const noexcept;

    // ---- code construction --------------------------------------------

    Cell make_cell(std::uint64_t topology, std::span<const std::uint64_t> coords) const;
    Cell make_cell(std::uint64_t topology, std::initializer_list<std::uint64_t> coords) const;
    Cell make_spel(std::span<const std::uint64_t> coords) const;
    Cell make_spel(std::initializer_list<std::uint64_t> coords) const;
    Cell make_pointel(std::span<const std::uint64_t> coords) const;
    Cell make_pointel(std::initializer_list<std::uint64_t> coords) const;
    /// Surfel closed exactly along `orth_axis`.
    Cell make_surfel(int orth_axis, std::span<const std::uint64_t> coords) const;
    Cell make_surfel(int orth_axis, std::initializer_list<std::uint64_t> coords) const;

    SignedCell make_cell(std::uint64_t topology, Sign s,
                         std::span<const std::uint64_t> coords) const;
    SignedCell make_cell(std::uint64_t topology, Sign s,
                         std::initializer_list<std::uint64_t> coords) const;
    SignedCell make_spel(Sign s, std::span<const std::uint64_t> coords) const;
    SignedCell make_spel(Sign s, std::initializer_list<std::uint64_t> coords) const;
    SignedCell make_surfel(int orth_axis, Sign s,
                           std::span<const std::uint64_t> coords) const;
    SignedCell make_surfel(int orth_axis, Sign s,
                           std::initializer_list<std::uint64_t> coords) const;

    // ---- sign handling -------------------------------------------------

    Sign sign_of(SignedCell c) const noexcept {
        return static_cast<Sign>((c.code >> cfw_) & 1u);
    }
    SignedCell opposite(SignedCell c) const noexcept {
        return SignedCell{c.code ^ sign_bit_};
    }
    /// Drop the sign bit, compacting the code to the unsigned layout.
    Cell unsign(SignedCell c) const noexcept {
        return Cell{((c.code >> (cfw_ + 1)) << cfw_) | (c.code & coord_mask_)};
    }
    /// Insert a sign bit into an unsigned code.
    SignedCell with_sign(Cell c, Sign s) const noexcept {
        return SignedCell{((c.code >> cfw_) << (cfw_ + 1)) |
                          (static_cast<std::uint64_t>(s) << cfw_) | (c.code & coord_mask_)};
    }

    /// Same coordinates, new topology word (and sign).
    Cell with_topology(Cell c, std::uint64_t topology) const noexcept {
        return Cell{(topology << cfw_) | (c.code & coord_mask_)};
    }
    SignedCell with_topology(SignedCell c, std::uint64_t topology, Sign s) const noexcept {
        return SignedCell{(topology << (cfw_ + 1)) |
                          (static_cast<std::uint64_t>(s) << cfw_) | (c.code & coord_mask_)};
    }

    // ---- decoding --------------------------------------------------------

    std::uint64_t topology(Cell c) const noexcept { return c.code >> cfw_; }
    std::uint64_t topology(SignedCell c) const noexcept { return c.code >> (cfw_ + 1); }
    /// Cell dimension: number of axes the cell is open along.
    int dim(Cell c) const noexcept { return std::popcount(topology(c)); }
    int dim(SignedCell c) const noexcept { return std::popcount(topology(c)); }
    bool is_spel(Cell c) const noexcept { return topology(c) == full_; }
    bool is_pointel(Cell c) const noexcept { return topology(c) == 0; }
    bool is_surfel(Cell c) const noexcept {
        return std::popcount(topology(c)) == n_ - 1;
    }
    bool is_surfel(SignedCell c) const noexcept {
        return std::popcount(topology(c)) == n_ - 1;
    }

    std::uint64_t coord(Cell c, int axis) const noexcept {
        return (c.code >> axes_[axis].shift) & axes_[axis].mask;
    }
    std::uint64_t coord(SignedCell c, int axis) const noexcept {
        return (c.code >> axes_[axis].shift) & axes_[axis].mask;
    }
    std::vector<std::uint64_t> coords(Cell c) const;
    std::vector<std::uint64_t> coords(SignedCell c) const;

    Cell with_coord(Cell c, int axis, std::uint64_t value) const;
    SignedCell with_coord(SignedCell c, int axis, std::uint64_t value) const;

    std::uint64_t khalimsky_coord(Cell c, int axis) const noexcept {
        return 2 * coord(c, axis) + ((topology(c) >> axis) & 1u);
    }
    std::uint64_t khalimsky_coord(SignedCell c, int axis) const noexcept {
        return 2 * coord(c, axis) + ((topology(c) >> axis) & 1u);
    }

    /// The single axis a surfel is closed along.  Raises NotASurfel otherwise.
    int orth_dir(Cell c) const;
    int orth_dir(SignedCell c) const;

    // ---- movement -------------------------------------------------------

    /// Shift one digital coordinate by delta; raises CoordOutOfRange when the
    /// result leaves [0, coord_max].
    Cell translated(Cell c, int axis, std::int64_t delta) const;
    SignedCell translated(SignedCell c, int axis, std::int64_t delta) const;

    /// Per-axis displacement q - p.
    CellVector displacement(Cell p, Cell q) const;

    /// Same topology, every coordinate within 1, and the displacement's
    /// 1-norm at most l (p != q).  l=1 gives the 4-/6-neighbourhoods,
    /// l=2 the 8-/18-neighbourhoods.
    bool l_adjacent(Cell p, Cell q, int l) const noexcept;

    // ---- incidence ------------------------------------------------------

    IncidenceKind incident_kind(Cell c, int axis) const noexcept {
        return ((topology(c) >> axis) & 1u) ? IncidenceKind::low : IncidenceKind::up;
    }
    /// Both cells 1-incident to c along `axis`, in increasing-coordinate
    /// order: a low pair {x, x+1} when c is open along the axis, an up pair
    /// {x-1, x} when closed.  Raises CoordOutOfRange at the border.
    std::array<Cell, 2> incident_pair(Cell c, int axis) const;
    /// One element of incident_pair; `which` selects the first (0) or second (1).
    Cell incident_1(Cell c, int axis, int which) const;

    /// c plus every cell of its set-theoretic closure, increasing code order.
    /// 3^dim(c) cells.  Raises CoordOutOfRange if the closure needs a
    /// coordinate beyond the upper bound (open axis at coord_max).
    std::vector<Cell> closure(Cell c) const;
    /// c plus every cell whose closure contains c, increasing code order.
    /// 3^(n-dim(c)) cells.  Raises CoordOutOfRange at the lower border.
    std::vector<Cell> star(Cell c) const;

    // ---- diagnostics ------------------------------------------------------

    /// Renders "(topology-bits; x_{n-1},...,x_0)" for debugging.
    std::string to_string(Cell c) const;
    std::string to_string(SignedCell c) const;

private:
    struct Axis {
        std::uint64_t max = 0;    // inclusive upper coordinate bound
        std::uint64_t mask = 0;   // (1 << bits) - 1
        int bits = 0;             // field width
        int shift = 0;            // field offset in the code
    };

    void init(std::span<const std::uint64_t> coord_max);
    void check_axis(int axis) const;
    std::uint64_t pack_coords(std::span<const std::uint64_t> coords) const;
    void check_topology(std::uint64_t topology) const;

    std::vector<Axis> axes_;
    std::uint64_t full_ = 0;        // spel topology word
    std::uint64_t coord_mask_ = 0;  // low cfw_ bits
    std::uint64_t sign_bit_ = 0;    // 1 << cfw_
    int n_ = 0;
    int cfw_ = 0;
};

}  // namespace kgrid
