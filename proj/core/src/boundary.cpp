#include "kgrid/boundary.hpp"

#include <algorithm>

namespace kgrid {

std::pair<SignedCell, SignedCell> lower_boundary_along(const Space& s, SignedCell c, int axis) {
    const std::uint64_t topo = s.topology(c);
    if (!((topo >> axis) & 1u))
        throw CoordOutOfRange("cell is closed along the requested axis");
    const Sign t = axis_parity(topo, axis) * s.sign_of(c);
    const std::uint64_t beta = topo ^ (std::uint64_t{1} << axis);
    const SignedCell at_x = s.with_topology(c, beta, t);
    return {at_x, s.opposite(s.translated(at_x, axis, +1))};
}

std::pair<SignedCell, SignedCell> upper_boundary_along(const Space& s, SignedCell c, int axis) {
    const std::uint64_t topo = s.topology(c);
    if ((topo >> axis) & 1u)
        throw CoordOutOfRange("cell is open along the requested axis");
    const Sign t = axis_parity(topo, axis) * s.sign_of(c);
    const std::uint64_t beta = topo | (std::uint64_t{1} << axis);
    const SignedCell at_x = s.with_topology(c, beta, t);
    return {at_x, s.opposite(s.translated(at_x, axis, -1))};
}

std::vector<SignedCell> lower_boundary(const Space& s, SignedCell c) {
    std::vector<SignedCell> out;
    const std::uint64_t topo = s.topology(c);
    out.reserve(2 * static_cast<std::size_t>(std::popcount(topo)));
    for (int i = 0; i < s.dimension(); ++i) {
        if (!((topo >> i) & 1u)) continue;
        const auto [a, b] = lower_boundary_along(s, c, i);
        out.push_back(a);
        out.push_back(b);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<SignedCell> upper_boundary(const Space& s, SignedCell c) {
    std::vector<SignedCell> out;
    const std::uint64_t topo = s.topology(c);
    out.reserve(2 * static_cast<std::size_t>(s.dimension() - std::popcount(topo)));
    for (int i = 0; i < s.dimension(); ++i) {
        if ((topo >> i) & 1u) continue;
        const auto [a, b] = upper_boundary_along(s, c, i);
        out.push_back(a);
        out.push_back(b);
    }
    std::sort(out.begin(), out.end());
    return out;
}

LutCharSet SignedCellSet::unsigned_shadow() const {
    LutCharSet out(bits_.space(), CellFamily::cells(rank()));
    const Space& s = bits_.space();
    bits_.for_each_code([&](std::uint64_t code) { out.add(s.unsign(SignedCell{code})); });
    return out;
}

SignedCellSet object_boundary(const Space& s, const LutCharSet& spels) {
    if (!(spels.family() == CellFamily::spels(s)))
        throw FamilyMismatch("object boundary needs a set of spels");
    const int n = s.dimension();
    SignedCellSet out(s, n - 1);

    // One pass over O.  For each spel, toggle its 2n signed faces with the
    // cancellation rule; interior faces cancel pairwise, leaving the boundary.
    spels.for_each_code([&](std::uint64_t code) {
        const Cell spel{code};
        for (int i = 0; i < n; ++i) {
            const std::uint64_t x = s.coord(spel, i);
            if (x < 1 || x + 1 > s.coord_max(i))
                throw ObjectTouchesBorder("object spel without a one-spel border margin");
        }
        const SignedCell p = s.with_sign(spel, Sign::positive);
        for (int i = 0; i < n; ++i) {
            const auto [a, b] = lower_boundary_along(s, p, i);
            out.merge(a);
            out.merge(b);
        }
    });
    return out;
}

std::pair<Cell, Cell> interior_exterior(const Space& s, SignedCell b, const LutCharSet& spels) {
    const int o = s.orth_dir(b);  // NotASurfel when b is no surfel
    const auto [u, v] = upper_boundary_along(s, b, o);
    const SignedCell pos = s.sign_of(u) == Sign::positive ? u : v;
    const SignedCell neg = s.sign_of(u) == Sign::positive ? v : u;
    const Cell inside = s.unsign(pos);
    const Cell outside = s.unsign(neg);
    if (!spels.contains(inside) || spels.contains(outside))
        throw NotABel("surfel does not separate the object from its complement");
    return {inside, outside};
}

}  // namespace kgrid
