#include "kgrid/tracking.hpp"

#include <charconv>
#include <string>
#include <unordered_map>
#include <utility>

#include "kgrid/errors.hpp"

namespace kgrid {
namespace {

// Everything one tracking move needs to know about the current bel.
struct MoveContext {
    std::uint64_t topo;
    Sign sign;
    int orth;
    Cell inner;  // spel on the positive coboundary side
    Cell outer;  // spel on the negative coboundary side
};

MoveContext context_of(const Space& s, SignedCell b) {
    const int o = s.orth_dir(b);
    auto [at_x, at_prev] = upper_boundary_along(s, b, o);
    Cell inner{}, outer{};
    if (s.sign_of(at_x) == Sign::positive) {
        inner = s.unsign(at_x);
        outer = s.unsign(at_prev);
    } else {
        inner = s.unsign(at_prev);
        outer = s.unsign(at_x);
    }
    return {s.topology(b), s.sign_of(b), o, inner, outer};
}

// Direction the direct followers advance in: towards -x_j exactly when the
// face of b on the low side along j carries positive orientation.
int direct_dir(const MoveContext& ctx, int axis) {
    return ctx.sign * axis_parity(ctx.topo, axis) == Sign::positive ? -1 : +1;
}

// The face orthogonal to `axis` of the given spel on the `delta` side,
// signed so that it cancels against the matching face of the spel's
// boundary with orientation `base` on the low side.
SignedCell spel_face(const Space& s, Cell spel, int axis, int delta, Sign low_side_sign) {
    const std::uint64_t face_topo = s.full_topology() ^ (1ull << axis);
    if (delta < 0) {
        return s.with_topology(s.with_sign(spel, low_side_sign), face_topo, low_side_sign);
    }
    SignedCell f = s.with_topology(s.with_sign(spel, low_side_sign), face_topo,
                                   flipped(low_side_sign));
    return s.translated(f, axis, 1);
}

SignedCell follower1(const Space& s, const MoveContext& ctx, int axis, int delta) {
    return spel_face(s, ctx.inner, axis, delta, axis_parity(s.full_topology(), axis));
}

SignedCell follower2(const Space& s, SignedCell b, int axis, int delta) {
    return s.translated(b, axis, delta);
}

SignedCell follower3(const Space& s, const MoveContext& ctx, int axis, int delta) {
    return spel_face(s, ctx.outer, axis, delta,
                     flipped(axis_parity(s.full_topology(), axis)));
}

// One tracking move.  `in_means` tells what O-membership counts as "in the
// object" (false flips it, used for the indirect move over the complement);
// `first_rule` selects the pick-the-first-follower decision order used by
// interior adjacency, otherwise the last-follower order of exterior
// adjacency.
SignedCell adjacent_core(const Space& s, const LutCharSet& spels, const MoveContext& ctx,
                         SignedCell b, int axis, bool in_means, bool first_rule) {
    const int delta = direct_dir(ctx, axis);
    const Cell pn = s.translated(ctx.inner, axis, delta);
    const Cell qn = s.translated(ctx.outer, axis, delta);
    if (first_rule) {
        if (spels.contains(pn) != in_means) return follower1(s, ctx, axis, delta);
        if (spels.contains(qn) != in_means) return follower2(s, b, axis, delta);
        return follower3(s, ctx, axis, delta);
    }
    if (spels.contains(qn) == in_means) return follower3(s, ctx, axis, delta);
    if (spels.contains(pn) == in_means) return follower2(s, b, axis, delta);
    return follower1(s, ctx, axis, delta);
}

// For the inverse move we look at the opposite surfel: its coboundary signs
// swap, so inner and outer trade places.
MoveContext flipped_context(const MoveContext& ctx) {
    return {ctx.topo, flipped(ctx.sign), ctx.orth, ctx.outer, ctx.inner};
}

SignedCell adjacent_indirect_core(const Space& s, const LutCharSet& spels,
                                  const MoveContext& ctx, SignedCell b, int axis,
                                  bool interior) {
    const MoveContext rctx = flipped_context(ctx);
    const SignedCell rb = s.opposite(b);
    return s.opposite(adjacent_core(s, spels, rctx, rb, axis, false, !interior));
}

void check_axis_tangent(const Space& s, const MoveContext& ctx, int axis) {
    if (axis < 0 || axis >= s.dimension() || axis == ctx.orth) {
        throw Error("tracking axis " + std::to_string(axis) +
                    " is not tangent to the surfel");
    }
}

void check_is_bel(const Space& s, const LutCharSet& spels, const MoveContext& ctx,
                  SignedCell b) {
    if (!spels.contains(ctx.inner) || spels.contains(ctx.outer)) {
        throw NotABel(s.to_string(b));
    }
}

void check_spel_family(const Space& s, const LutCharSet& spels) {
    if (spels.family().rank != s.dimension() || spels.family().oriented) {
        throw FamilyMismatch("tracking requires an unsigned spel set");
    }
}

struct BelQueue {
    std::vector<std::uint64_t> codes;
    std::size_t head = 0;

    void push(SignedCell b) { codes.push_back(b.code); }
    bool empty() const { return head == codes.size(); }
    SignedCell pop() { return SignedCell{codes[head++]}; }
};

// Visited-bel store: oriented keeps signed surfels, otherwise the unsigned
// shadow (half the index space).
struct VisitedSet {
    VisitedSet(const Space& s, bool oriented)
        : set(s, oriented ? CellFamily::oriented_surfels(s) : CellFamily::surfels(s)),
          space(&s),
          keep_sign(oriented) {}

    bool contains(SignedCell b) const {
        return keep_sign ? set.contains(b) : set.contains(space->unsign(b));
    }
    void add(SignedCell b) {
        if (keep_sign) {
            set.add(b);
        } else {
            set.add(space->unsign(b));
        }
    }

    LutCharSet set;
    const Space* space;
    bool keep_sign;
};

MoveContext checked_start(const Space& s, const LutCharSet& spels, SignedCell start) {
    check_spel_family(s, spels);
    const MoveContext ctx = context_of(s, start);
    check_is_bel(s, spels, ctx, start);
    return ctx;
}

}  // namespace

BelAdjacency BelAdjacency::parse(int n, std::string_view text) {
    BelAdjacency adj = all_interior(n);
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find(';', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view item = text.substr(pos, end - pos);
        pos = end + 1;
        if (item.empty()) continue;

        const std::size_t eq = item.find('=');
        const std::size_t comma = item.find(',');
        if (eq == std::string_view::npos || comma == std::string_view::npos || comma > eq) {
            throw Error("bad adjacency entry '" + std::string(item) +
                        "', expected i,j=interior or i,j=exterior");
        }
        int a = -1;
        int b = -1;
        auto ra = std::from_chars(item.data(), item.data() + comma, a);
        auto rb = std::from_chars(item.data() + comma + 1, item.data() + eq, b);
        const std::string_view mode = item.substr(eq + 1);
        if (ra.ec != std::errc() || ra.ptr != item.data() + comma ||
            rb.ec != std::errc() || rb.ptr != item.data() + eq) {
            throw Error("bad axis pair in adjacency entry '" + std::string(item) + "'");
        }
        if (a < 0 || a >= n || b < 0 || b >= n || a == b) {
            throw Error("axis pair " + std::to_string(a) + "," + std::to_string(b) +
                        " is out of range for dimension " + std::to_string(n));
        }
        bool interior = false;
        if (mode == "interior") {
            interior = true;
        } else if (mode == "exterior") {
            interior = false;
        } else {
            throw Error("bad adjacency mode '" + std::string(mode) +
                        "', expected interior or exterior");
        }
        adj.set(a, b, interior);
    }
    return adj;
}

FollowerTriple direct_followers(const Space& s, SignedCell b, int axis) {
    const MoveContext ctx = context_of(s, b);
    check_axis_tangent(s, ctx, axis);
    const int delta = direct_dir(ctx, axis);
    return {{follower1(s, ctx, axis, delta), follower2(s, b, axis, delta),
             follower3(s, ctx, axis, delta)},
            delta};
}

FollowerTriple indirect_followers(const Space& s, SignedCell b, int axis) {
    FollowerTriple t = direct_followers(s, s.opposite(b), axis);
    for (SignedCell& c : t.cells) c = s.opposite(c);
    return t;
}

SignedCell direct_adjacent_bel(const Space& s, const LutCharSet& spels, SignedCell b,
                               int axis, bool interior) {
    const MoveContext ctx = checked_start(s, spels, b);
    check_axis_tangent(s, ctx, axis);
    return adjacent_core(s, spels, ctx, b, axis, true, interior);
}

SignedCell indirect_adjacent_bel(const Space& s, const LutCharSet& spels, SignedCell b,
                                 int axis, bool interior) {
    const MoveContext ctx = checked_start(s, spels, b);
    check_axis_tangent(s, ctx, axis);
    return adjacent_indirect_core(s, spels, ctx, b, axis, interior);
}

SignedCell find_start_bel(const Space& s, const LutCharSet& spels, Cell inside_spel) {
    check_spel_family(s, spels);
    if (!spels.contains(inside_spel)) {
        throw NotInObject(s.to_string(inside_spel));
    }
    const Sign bel_sign = flipped(axis_parity(s.full_topology(), 0));
    const std::uint64_t face_topo = s.full_topology() ^ 1ull;
    Cell r = inside_spel;
    while (s.coord(r, 0) < s.coord_max(0)) {
        const Cell next = s.translated(r, 0, 1);
        if (!spels.contains(next)) {
            return s.with_topology(s.with_sign(next, bel_sign), face_topo, bel_sign);
        }
        r = next;
    }
    throw ObjectTouchesBorder("object reaches the +x0 image border");
}

TrackResult track_closed(const Space& s, const LutCharSet& spels, SignedCell start,
                         const BelAdjacency& adj, bool oriented_result) {
    checked_start(s, spels, start);
    const int n = s.dimension();
    TrackStats stats;
    VisitedSet visited(s, oriented_result);
    BelQueue queue;
    queue.push(start);
    while (!queue.empty()) {
        const SignedCell cur = queue.pop();
        ++stats.queue_pops;
        const MoveContext ctx = context_of(s, cur);
        for (int j = 0; j < n; ++j) {
            if (j == ctx.orth) continue;
            const SignedCell next =
                adjacent_core(s, spels, ctx, cur, j, true, adj.interior(ctx.orth, j));
            ++stats.moves;
            if (visited.contains(next)) {
                ++stats.revisits;
            } else {
                visited.add(next);
                queue.push(next);
            }
        }
    }
    return {std::move(visited.set), oriented_result, stats};
}

TrackResult track_closed_tail(const Space& s, const LutCharSet& spels, SignedCell start,
                              const BelAdjacency& adj, bool oriented_result) {
    checked_start(s, spels, start);
    const int n = s.dimension();
    TrackStats stats;
    VisitedSet visited(s, oriented_result);
    BelQueue queue;
    std::unordered_map<std::uint64_t, std::uint32_t> tail;
    std::uint64_t tail_total = 0;

    visited.add(start);
    queue.push(start);
    if (n >= 2) {
        tail[start.code] = static_cast<std::uint32_t>(n - 1);
        tail_total = static_cast<std::uint64_t>(n - 1);
        stats.tail_peak = tail_total;
    }
    while (!queue.empty()) {
        const SignedCell cur = queue.pop();
        ++stats.queue_pops;
        const MoveContext ctx = context_of(s, cur);
        for (int j = 0; j < n; ++j) {
            if (j == ctx.orth) continue;
            const SignedCell next =
                adjacent_core(s, spels, ctx, cur, j, true, adj.interior(ctx.orth, j));
            ++stats.moves;
            auto it = tail.find(next.code);
            if (it != tail.end()) {
                ++stats.revisits;
                if (--it->second == 0) tail.erase(it);
                --tail_total;
            } else {
                visited.add(next);
                queue.push(next);
                if (n >= 3) {
                    tail[next.code] = static_cast<std::uint32_t>(n - 2);
                    tail_total += static_cast<std::uint64_t>(n - 2);
                    if (tail_total > stats.tail_peak) {
                        stats.tail_peak = tail_total;
                    }
                }
            }
        }
    }
    stats.tail_residue = tail_total;
    return {std::move(visited.set), oriented_result, stats};
}

TrackResult track_any(const Space& s, const LutCharSet& spels, SignedCell start,
                      const BelAdjacency& adj, bool oriented_result) {
    checked_start(s, spels, start);
    const int n = s.dimension();
    TrackStats stats;
    VisitedSet visited(s, oriented_result);
    BelQueue queue;
    visited.add(start);
    queue.push(start);
    while (!queue.empty()) {
        const SignedCell cur = queue.pop();
        ++stats.queue_pops;
        const MoveContext ctx = context_of(s, cur);
        for (int j = 0; j < n; ++j) {
            if (j == ctx.orth) continue;
            const bool interior = adj.interior(ctx.orth, j);
            const SignedCell fwd = adjacent_core(s, spels, ctx, cur, j, true, interior);
            const SignedCell bwd = adjacent_indirect_core(s, spels, ctx, cur, j, interior);
            stats.moves += 2;
            for (const SignedCell next : {fwd, bwd}) {
                if (visited.contains(next)) {
                    ++stats.revisits;
                } else {
                    visited.add(next);
                    queue.push(next);
                }
            }
        }
    }
    return {std::move(visited.set), oriented_result, stats};
}

namespace {

// Odometer over all combinations of the coordinates of every axis except
// `skip`, bounded per axis by [lo, hi] inclusive.  Invokes fn(coords) with
// coords[skip] left as fn wrote it.
template <typename Fn>
void for_each_line(const Space& s, int skip, std::span<const std::uint64_t> lo,
                   std::span<const std::uint64_t> hi, Fn&& fn) {
    const int n = s.dimension();
    std::vector<std::uint64_t> x(static_cast<std::size_t>(n), 0);
    for (int k = 0; k < n; ++k) {
        if (k != skip && lo[static_cast<std::size_t>(k)] > hi[static_cast<std::size_t>(k)])
            return;
        x[static_cast<std::size_t>(k)] = lo[static_cast<std::size_t>(k)];
    }
    for (;;) {
        fn(std::span<std::uint64_t>(x));
        int k = 0;
        for (; k < n; ++k) {
            if (k == skip) continue;
            if (x[static_cast<std::size_t>(k)] < hi[static_cast<std::size_t>(k)]) {
                ++x[static_cast<std::size_t>(k)];
                break;
            }
            x[static_cast<std::size_t>(k)] = lo[static_cast<std::size_t>(k)];
        }
        if (k == n) return;
    }
}

// Sweeps axis i over [pair_start-1, pair_end] emitting the face at every
// digital coordinate whose spel pair changes membership.
void sweep_axis(const Space& s, const LutCharSet& spels, LutCharSet& out, int axis,
                std::span<const std::uint64_t> lo, std::span<const std::uint64_t> hi,
                std::uint64_t pair_start, std::uint64_t pair_end) {
    if (pair_start > pair_end) return;
    const std::uint64_t face_topo = s.full_topology() ^ (1ull << axis);
    for_each_line(s, axis, lo, hi, [&](std::span<std::uint64_t> x) {
        x[static_cast<std::size_t>(axis)] = pair_start - 1;
        Cell spel = s.make_spel(x);
        bool prev = spels.contains(spel);
        for (std::uint64_t k = pair_start; k <= pair_end; ++k) {
            spel = s.translated(spel, axis, 1);
            const bool cur = spels.contains(spel);
            if (cur != prev) out.add(s.with_topology(spel, face_topo));
            prev = cur;
        }
    });
}

}  // namespace

LutCharSet scan_full(const Space& s, const LutCharSet& spels) {
    check_spel_family(s, spels);
    const int n = s.dimension();
    LutCharSet out(s, CellFamily::surfels(s));
    std::vector<std::uint64_t> lo(static_cast<std::size_t>(n), 0);
    std::vector<std::uint64_t> hi(static_cast<std::size_t>(n), 0);
    for (int k = 0; k < n; ++k) hi[static_cast<std::size_t>(k)] = s.coord_max(k);
    for (int i = 0; i < n; ++i) {
        if (s.coord_max(i) == 0) continue;
        sweep_axis(s, spels, out, i, lo, hi, 1, s.coord_max(i));
    }
    return out;
}

LutCharSet scan_box(const Space& s, const LutCharSet& spels,
                    std::span<const std::uint64_t> lo, std::span<const std::uint64_t> hi) {
    check_spel_family(s, spels);
    const int n = s.dimension();
    if (static_cast<int>(lo.size()) != n || static_cast<int>(hi.size()) != n) {
        throw WrongDimension("box bounds must have one entry per axis");
    }
    for (int k = 0; k < n; ++k) {
        const std::size_t uk = static_cast<std::size_t>(k);
        if (lo[uk] > hi[uk] || hi[uk] > s.coord_max(k)) {
            throw BoxOutOfBounds("axis " + std::to_string(k));
        }
    }
    LutCharSet out(s, CellFamily::surfels(s));
    for (int i = 0; i < n; ++i) {
        const std::size_t ui = static_cast<std::size_t>(i);
        const std::uint64_t first = lo[ui] > 0 ? lo[ui] : 1;
        const std::uint64_t last = hi[ui] < s.coord_max(i) ? hi[ui] + 1 : s.coord_max(i);
        sweep_axis(s, spels, out, i, lo, hi, first, last);
    }
    return out;
}

}  // namespace kgrid
