#pragma once

// Shared oracles and generators for the unit and acceptance tests.  Oracles
// are deliberately written from first principles (interval products, plain
// ordered sets) so they share no code with the containers under test.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

#include "kgrid/boundary.hpp"
#include "kgrid/charset.hpp"
#include "kgrid/errors.hpp"
#include "kgrid/space.hpp"
#include "kgrid/tracking.hpp"

namespace kgridtest {

using namespace kgrid;

/// Cell whose per-axis Khalimsky coordinate is xk[i]: the parity bit gives
/// the topology, the halved value the digital coordinate.
inline Cell cell_from_khalimsky(const Space& s, std::span<const std::uint64_t> xk) {
    std::uint64_t topo = 0;
    std::vector<std::uint64_t> x(xk.size(), 0);
    for (std::size_t i = 0; i < xk.size(); ++i) {
        topo |= (xk[i] & 1) << i;
        x[i] = xk[i] >> 1;
    }
    return s.make_cell(topo, x);
}

/// Interval-product closure oracle: per open axis the Khalimsky interval
/// {k-1, k, k+1}, per closed axis {k}; the result is every cell in the
/// product, sorted by code.  Throws CoordOutOfRange when an interval leaves
/// the space, mirroring the kernel's contract.
inline std::vector<Cell> closure_oracle(const Space& s, Cell c) {
    const int n = s.dimension();
    std::vector<std::vector<std::uint64_t>> choices(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const std::uint64_t k = s.khalimsky_coord(c, i);
        if (s.topology(c) >> i & 1) {
            if (k + 1 > 2 * s.coord_max(i) + 1)
                throw CoordOutOfRange("closure leaves the space");
            choices[static_cast<std::size_t>(i)] = {k - 1, k, k + 1};
        } else {
            choices[static_cast<std::size_t>(i)] = {k};
        }
    }
    std::vector<Cell> out;
    std::vector<std::uint64_t> pick(static_cast<std::size_t>(n), 0);
    std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
    for (;;) {
        for (int i = 0; i < n; ++i)
            pick[static_cast<std::size_t>(i)] =
                choices[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]];
        out.push_back(cell_from_khalimsky(s, pick));
        int i = 0;
        for (; i < n; ++i) {
            auto& ii = idx[static_cast<std::size_t>(i)];
            if (ii + 1 < choices[static_cast<std::size_t>(i)].size()) {
                ++ii;
                break;
            }
            ii = 0;
        }
        if (i == n) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Interval-product star oracle: per closed axis {k-1, k, k+1}, per open
/// axis {k}.
inline std::vector<Cell> star_oracle(const Space& s, Cell c) {
    const int n = s.dimension();
    std::vector<std::vector<std::uint64_t>> choices(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const std::uint64_t k = s.khalimsky_coord(c, i);
        if (s.topology(c) >> i & 1) {
            choices[static_cast<std::size_t>(i)] = {k};
        } else {
            if (k == 0) throw CoordOutOfRange("star leaves the space");
            choices[static_cast<std::size_t>(i)] = {k - 1, k, k + 1};
        }
    }
    std::vector<Cell> out;
    std::vector<std::uint64_t> pick(static_cast<std::size_t>(n), 0);
    std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
    for (;;) {
        for (int i = 0; i < n; ++i)
            pick[static_cast<std::size_t>(i)] =
                choices[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]];
        out.push_back(cell_from_khalimsky(s, pick));
        int i = 0;
        for (; i < n; ++i) {
            auto& ii = idx[static_cast<std::size_t>(i)];
            if (ii + 1 < choices[static_cast<std::size_t>(i)].size()) {
                ++ii;
                break;
            }
            ii = 0;
        }
        if (i == n) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Every space with the given dimension and per-axis bounds drawn from
/// {1, ..., max_bound}.
inline std::vector<Space> all_small_spaces(int n, std::uint64_t max_bound) {
    std::vector<Space> out;
    std::vector<std::uint64_t> bounds(static_cast<std::size_t>(n), 1);
    for (;;) {
        out.emplace_back(bounds);
        int i = 0;
        for (; i < n; ++i) {
            if (bounds[static_cast<std::size_t>(i)] < max_bound) {
                ++bounds[static_cast<std::size_t>(i)];
                break;
            }
            bounds[static_cast<std::size_t>(i)] = 1;
        }
        if (i == n) break;
    }
    return out;
}

/// Random object with a one-spel margin on every axis.
inline LutCharSet random_object(const Space& s, std::mt19937_64& rng, double density) {
    LutCharSet o(s, CellFamily::spels(s));
    std::bernoulli_distribution keep(density);
    const int n = s.dimension();
    std::vector<std::uint64_t> x(static_cast<std::size_t>(n), 1);
    for (;;) {
        if (keep(rng)) o.add(s.make_spel(x));
        int i = 0;
        for (; i < n; ++i) {
            auto& xi = x[static_cast<std::size_t>(i)];
            if (xi < s.coord_max(i) - 1) {
                ++xi;
                break;
            }
            xi = 1;
        }
        if (i == n) break;
    }
    return o;
}

/// The orientation of `surfel` that makes it a bel of O (interior spel on
/// the positive coboundary side).  Throws NotABel when neither sign works.
inline SignedCell orient_bel(const Space& s, const LutCharSet& o, Cell surfel) {
    SignedCell b = s.with_sign(surfel, Sign::positive);
    try {
        interior_exterior(s, b, o);
        return b;
    } catch (const NotABel&) {
    }
    b = s.opposite(b);
    interior_exterior(s, b, o);
    return b;
}

/// Tracks every boundary component of O, seeding components from the full
/// scan in code order.  `track` is one of the track_* functions.
template <class TrackFn>
std::vector<TrackResult> all_components(const Space& s, const LutCharSet& o,
                                        const BelAdjacency& adj, TrackFn&& track) {
    std::vector<TrackResult> comps;
    LutCharSet seen(s, CellFamily::surfels(s));
    for (std::uint64_t code : scan_full(s, o).codes()) {
        const Cell c{code};
        if (seen.contains(c)) continue;
        const SignedCell b = orient_bel(s, o, c);
        TrackResult r = track(s, o, b, adj, true);
        r.surfels.for_each_code(
            [&](std::uint64_t sc) { seen.add(s.unsign(SignedCell{sc})); });
        comps.push_back(std::move(r));
    }
    return comps;
}

/// Union of the oriented surfel sets of all components.
inline LutCharSet union_of(const Space& s, const std::vector<TrackResult>& comps) {
    LutCharSet all(s, CellFamily::oriented_surfels(s));
    for (const TrackResult& r : comps) all.unite(r.surfels);
    return all;
}

/// Unsigned shadow of an oriented surfel set, for comparing against scans.
inline LutCharSet shadow_of(const Space& s, const LutCharSet& oriented) {
    LutCharSet out(s, CellFamily::surfels(s));
    oriented.for_each_code(
        [&](std::uint64_t code) { out.add(s.unsign(SignedCell{code})); });
    return out;
}

}  // namespace kgridtest
