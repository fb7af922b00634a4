#include "kgrid/space.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

namespace kgrid {

namespace {

int bit_width_of(std::uint64_t v) {
    return v == 0 ? 0 : std::bit_width(v);
}

}  // namespace

Space::Space(std::span<const std::uint64_t> coord_max) { init(coord_max); }

Space::Space(std::initializer_list<std::uint64_t> coord_max) {
    init(std::span<const std::uint64_t>(coord_max.begin(), coord_max.size()));
}

void Space::init(std::span<const std::uint64_t> coord_max) {
    if (coord_max.empty())
        throw SpaceTooLarge("space needs at least one axis");
    n_ = static_cast<int>(coord_max.size());
    if (n_ >= 63)
        throw SpaceTooLarge("too many axes for a 64-bit cell code");
    axes_.resize(coord_max.size());
    int shift = 0;
    for (int i = 0; i < n_; ++i) {
        const std::uint64_t m = coord_max[i];
        if (m == 0)
            throw SpaceTooLarge("per-axis bound must be at least 1");
        Axis& a = axes_[i];
        a.max = m;
        a.bits = bit_width_of(m);
        a.shift = shift;
        a.mask = (a.bits >= 64) ? ~0ull : ((1ull << a.bits) - 1);
        shift += a.bits;
    }
    cfw_ = shift;
    // one sign bit plus n topology bits must fit above the coordinates
    if (cfw_ + n_ + 1 > 64)
        throw SpaceTooLarge("coordinate bounds exceed the 64-bit code budget");
    full_ = (n_ == 63) ? ~0ull : ((1ull << n_) - 1);
    coord_mask_ = (cfw_ == 0) ? 0 : ((cfw_ >= 64) ? ~0ull : ((1ull << cfw_) - 1));
    sign_bit_ = 1ull << cfw_;
}

bool Space::operator==(const Space& other) const noexcept {
    if (n_ != other.n_) return false;
    for (int i = 0; i < n_; ++i)
        if (axes_[i].max != other.axes_[i].max) return false;
    return true;
}

void Space::check_axis(int axis) const {
    if (axis < 0 || axis >= n_)
        throw CoordOutOfRange("axis index out of range");
}

void Space::check_topology(std::uint64_t topology) const {
    if (topology > full_)
        throw CoordOutOfRange("topology word has bits beyond the space dimension");
}

std::uint64_t Space::pack_coords(std::span<const std::uint64_t> coords) const {
    if (static_cast<int>(coords.size()) != n_)
        throw CoordOutOfRange("coordinate count differs from the space dimension");
    std::uint64_t packed = 0;
    for (int i = 0; i < n_; ++i) {
        if (coords[i] > axes_[i].max)
            throw CoordOutOfRange("coordinate beyond its axis bound");
        packed |= coords[i] << axes_[i].shift;
    }
    return packed;
}

Cell Space::make_cell(std::uint64_t topology, std::span<const std::uint64_t> coords) const {
    check_topology(topology);
    return Cell{(topology << cfw_) | pack_coords(coords)};
}

Cell Space::make_cell(std::uint64_t topology, std::initializer_list<std::uint64_t> coords) const {
    return make_cell(topology, std::span<const std::uint64_t>(coords.begin(), coords.size()));
}

Cell Space::make_spel(std::span<const std::uint64_t> coords) const {
    return make_cell(full_, coords);
}

Cell Space::make_spel(std::initializer_list<std::uint64_t> coords) const {
    return make_cell(full_, coords);
}

Cell Space::make_pointel(std::span<const std::uint64_t> coords) const {
    return make_cell(0, coords);
}

Cell Space::make_pointel(std::initializer_list<std::uint64_t> coords) const {
    return make_cell(0, coords);
}

Cell Space::make_surfel(int orth_axis, std::span<const std::uint64_t> coords) const {
    check_axis(orth_axis);
    return make_cell(full_ ^ (1ull << orth_axis), coords);
}

Cell Space::make_surfel(int orth_axis, std::initializer_list<std::uint64_t> coords) const {
    return make_surfel(orth_axis, std::span<const std::uint64_t>(coords.begin(), coords.size()));
}

SignedCell Space::make_cell(std::uint64_t topology, Sign s,
                            std::span<const std::uint64_t> coords) const {
    check_topology(topology);
    return SignedCell{(topology << (cfw_ + 1)) |
                      (static_cast<std::uint64_t>(s) << cfw_) | pack_coords(coords)};
}

SignedCell Space::make_cell(std::uint64_t topology, Sign s,
                            std::initializer_list<std::uint64_t> coords) const {
    return make_cell(topology, s, std::span<const std::uint64_t>(coords.begin(), coords.size()));
}

SignedCell Space::make_spel(Sign s, std::span<const std::uint64_t> coords) const {
    return make_cell(full_, s, coords);
}

SignedCell Space::make_spel(Sign s, std::initializer_list<std::uint64_t> coords) const {
    return make_cell(full_, s, coords);
}

SignedCell Space::make_surfel(int orth_axis, Sign s,
                              std::span<const std::uint64_t> coords) const {
    check_axis(orth_axis);
    return make_cell(full_ ^ (1ull << orth_axis), s, coords);
}

SignedCell Space::make_surfel(int orth_axis, Sign s,
                              std::initializer_list<std::uint64_t> coords) const {
    return make_surfel(orth_axis, s,
                       std::span<const std::uint64_t>(coords.begin(), coords.size()));
}

std::vector<std::uint64_t> Space::coords(Cell c) const {
    std::vector<std::uint64_t> out(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) out[i] = coord(c, i);
    return out;
}

std::vector<std::uint64_t> Space::coords(SignedCell c) const {
    std::vector<std::uint64_t> out(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) out[i] = coord(c, i);
    return out;
}

Cell Space::with_coord(Cell c, int axis, std::uint64_t value) const {
    check_axis(axis);
    if (value > axes_[axis].max)
        throw CoordOutOfRange("coordinate beyond its axis bound");
    const Axis& a = axes_[axis];
    return Cell{(c.code & ~(a.mask << a.shift)) | (value << a.shift)};
}

SignedCell Space::with_coord(SignedCell c, int axis, std::uint64_t value) const {
    check_axis(axis);
    if (value > axes_[axis].max)
        throw CoordOutOfRange("coordinate beyond its axis bound");
    const Axis& a = axes_[axis];
    return SignedCell{(c.code & ~(a.mask << a.shift)) | (value << a.shift)};
}

int Space::orth_dir(Cell c) const {
    const std::uint64_t closed = ~topology(c) & full_;
    if (std::popcount(closed) != 1)
        throw NotASurfel("cell is closed along " + std::to_string(std::popcount(closed)) +
                         " axes, not exactly one");
    return std::countr_zero(closed);
}

int Space::orth_dir(SignedCell c) const {
    const std::uint64_t closed = ~topology(c) & full_;
    if (std::popcount(closed) != 1)
        throw NotASurfel("cell is closed along " + std::to_string(std::popcount(closed)) +
                         " axes, not exactly one");
    return std::countr_zero(closed);
}

Cell Space::translated(Cell c, int axis, std::int64_t delta) const {
    check_axis(axis);
    const Axis& a = axes_[axis];
    const std::int64_t v = static_cast<std::int64_t>(coord(c, axis)) + delta;
    if (v < 0 || v > static_cast<std::int64_t>(a.max))
        throw CoordOutOfRange("translation leaves the axis range");
    return Cell{(c.code & ~(a.mask << a.shift)) |
                (static_cast<std::uint64_t>(v) << a.shift)};
}

SignedCell Space::translated(SignedCell c, int axis, std::int64_t delta) const {
    check_axis(axis);
    const Axis& a = axes_[axis];
    const std::int64_t v = static_cast<std::int64_t>(coord(c, axis)) + delta;
    if (v < 0 || v > static_cast<std::int64_t>(a.max))
        throw CoordOutOfRange("translation leaves the axis range");
    return SignedCell{(c.code & ~(a.mask << a.shift)) |
                      (static_cast<std::uint64_t>(v) << a.shift)};
}

CellVector Space::displacement(Cell p, Cell q) const {
    CellVector d(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i)
        d[i] = static_cast<std::int64_t>(coord(q, i)) - static_cast<std::int64_t>(coord(p, i));
    return d;
}

bool Space::l_adjacent(Cell p, Cell q, int l) const noexcept {
    if (topology(p) != topology(q) || p == q) return false;
    std::int64_t norm1 = 0;
    for (int i = 0; i < n_; ++i) {
        const std::int64_t d = static_cast<std::int64_t>(coord(q, i)) -
                               static_cast<std::int64_t>(coord(p, i));
        if (d > 1 || d < -1) return false;
        norm1 += d < 0 ? -d : d;
    }
    return norm1 <= l;
}

std::array<Cell, 2> Space::incident_pair(Cell c, int axis) const {
    check_axis(axis);
    const Cell flip{c.code ^ (1ull << (cfw_ + axis))};
    if (incident_kind(c, axis) == IncidenceKind::low)
        return {flip, translated(flip, axis, +1)};
    return {translated(flip, axis, -1), flip};
}

Cell Space::incident_1(Cell c, int axis, int which) const {
    check_axis(axis);
    if (which != 0 && which != 1)
        throw CoordOutOfRange("incidence selector must be 0 or 1");
    const Cell flip{c.code ^ (1ull << (cfw_ + axis))};
    if (incident_kind(c, axis) == IncidenceKind::low)
        return which == 0 ? flip : translated(flip, axis, +1);
    return which == 0 ? translated(flip, axis, -1) : flip;
}

std::vector<Cell> Space::closure(Cell c) const {
    // Product, over the axes c is open along, of {stay open, close at x,
    // close at x+1}; closed axes do not move.
    std::vector<Cell> out;
    out.push_back(c);
    const std::uint64_t topo = topology(c);
    for (int i = 0; i < n_; ++i) {
        if (!((topo >> i) & 1u)) continue;
        const std::size_t count = out.size();
        for (std::size_t k = 0; k < count; ++k) {
            const Cell base{out[k].code ^ (1ull << (cfw_ + i))};
            out.push_back(base);
            out.push_back(translated(base, i, +1));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Cell> Space::star(Cell c) const {
    // Product, over the axes c is closed along, of {stay closed, open at x,
    // open at x-1}; open axes do not move.
    std::vector<Cell> out;
    out.push_back(c);
    const std::uint64_t topo = topology(c);
    for (int i = 0; i < n_; ++i) {
        if ((topo >> i) & 1u) continue;
        const std::size_t count = out.size();
        for (std::size_t k = 0; k < count; ++k) {
            const Cell base{out[k].code ^ (1ull << (cfw_ + i))};
            out.push_back(base);
            out.push_back(translated(base, i, -1));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

void append_cell_text(const Space& s, std::string& out, std::uint64_t topo,
                      const std::vector<std::uint64_t>& xs) {
    out += '(';
    for (int i = s.dimension() - 1; i >= 0; --i)
        out += ((topo >> i) & 1u) ? '1' : '0';
    out += "; ";
    for (int i = s.dimension() - 1; i >= 0; --i) {
        out += std::to_string(xs[static_cast<std::size_t>(i)]);
        if (i > 0) out += ',';
    }
    out += ')';
}

}  // namespace

std::string Space::to_string(Cell c) const {
    std::string out;
    append_cell_text(*this, out, topology(c), coords(c));
    return out;
}

std::string Space::to_string(SignedCell c) const {
    std::string out(sign_of(c) == Sign::positive ? "+" : "-");
    append_cell_text(*this, out, topology(c), coords(c));
    return out;
}

}  // namespace kgrid
