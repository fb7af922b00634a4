#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "kgrid/boundary.hpp"
#include "kgrid/cell.hpp"
#include "kgrid/charset.hpp"
#include "kgrid/space.hpp"

namespace kgrid {

/// Per-plane choice between interior and exterior bel adjacency.  A move
/// from a bel with orthogonal axis o along a tangential axis j is governed
/// by the entry for the unordered pair {o, j}.
class BelAdjacency {
public:
    static BelAdjacency all_interior(int n) { return BelAdjacency(n, true); }
    static BelAdjacency all_exterior(int n) { return BelAdjacency(n, false); }
    /// Parses "0,1=interior;0,2=exterior"; unspecified pairs are interior.
    static BelAdjacency parse(int n, std::string_view text);

    int dimension() const noexcept { return n_; }
    bool interior(int a, int b) const { return table_[idx(a, b)] != 0; }
    void set(int a, int b, bool interior) {
        table_[idx(a, b)] = table_[idx(b, a)] = interior ? 1 : 0;
    }

private:
    BelAdjacency(int n, bool interior_default)
        : table_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n),
                 interior_default ? 1 : 0),
          n_(n) {}
    std::size_t idx(int a, int b) const {
        return static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) +
               static_cast<std::size_t>(b);
    }

    std::vector<std::uint8_t> table_;
    int n_;
};

/// The three ordered followers of a bel along one tangential axis, plus the
/// direction (+1/-1 along that axis) the triple advances in.
struct FollowerTriple {
    std::array<SignedCell, 3> cells;
    int dir;
};

/// Ordered direct followers of surfel b along axis j (j must differ from the
/// orthogonal axis): the three surfels sharing b's positively-signed face
/// along j, each signed so the shared face appears negatively in its own
/// faces.  First the face of the interior-side coface, then b translated one
/// step, then the face of the exterior-side coface.
FollowerTriple direct_followers(const Space& s, SignedCell b, int axis);

/// Ordered indirect followers: the direct followers of the opposite surfel,
/// each with its orientation flipped.
FollowerTriple indirect_followers(const Space& s, SignedCell b, int axis);

/// The bel of O reached from bel b by one tracking move along `axis`:
/// the first (interior adjacency) or last (exterior adjacency) direct
/// follower that is a bel of O.  Decided with at most two spel membership
/// queries.  Raises NotABel when b itself is no bel of O.
SignedCell direct_adjacent_bel(const Space& s, const LutCharSet& spels, SignedCell b, int axis,
                               bool interior);

/// Inverse move: the bel whose direct adjacency leads back to b, i.e. the
/// last (interior) or first (exterior) indirect follower that is a bel.
SignedCell indirect_adjacent_bel(const Space& s, const LutCharSet& spels, SignedCell b,
                                 int axis, bool interior);

/// Walks from an inside spel towards +x0 until leaving O and returns the
/// crossed face as an oriented bel.  Raises NotInObject when the start spel
/// is outside O, ObjectTouchesBorder when the walk reaches the image border.
SignedCell find_start_bel(const Space& s, const LutCharSet& spels, Cell inside_spel);

struct TrackStats {
    std::uint64_t queue_pops = 0;
    std::uint64_t moves = 0;      ///< adjacent-bel computations
    std::uint64_t revisits = 0;   ///< moves that landed on a known bel
    std::uint64_t tail_peak = 0;  ///< largest pending multiset (tail variant)
    std::uint64_t tail_residue = 0;  ///< entries left in the tail at the end
};

struct TrackResult {
    LutCharSet surfels;  ///< oriented or unsigned surfel family
    bool oriented;
    TrackStats stats;

    std::uint64_t bel_count() const { return surfels.cardinality(); }
};

/// Breadth-first traversal of direct adjacencies from a starting bel of a
/// closed boundary; returns all bels of the component.  With
/// `oriented_result` false the visited set stores unsigned surfels (half the
/// memory), otherwise signed ones.
TrackResult track_closed(const Space& s, const LutCharSet& spels, SignedCell start,
                         const BelAdjacency& adj, bool oriented_result = true);

/// Same output as track_closed, bookkeeping re-encounters in a tail multiset
/// instead of querying the visited set: the start bel is entered n-1 times,
/// every discovered bel n-2 times, and each re-encounter removes one entry;
/// the tail is empty when the traversal ends.
TrackResult track_closed_tail(const Space& s, const LutCharSet& spels, SignedCell start,
                              const BelAdjacency& adj, bool oriented_result = true);

/// Traversal over direct and indirect adjacencies; extracts open boundaries
/// as well and equals track_closed on closed components.
TrackResult track_any(const Space& s, const LutCharSet& spels, SignedCell start,
                      const BelAdjacency& adj, bool oriented_result = true);

/// Every surfel whose two incident spels differ in O-membership, by a
/// sliding-pair sweep per axis over the whole image.
LutCharSet scan_full(const Space& s, const LutCharSet& spels);

/// Like scan_full but sweeping only the box [lo, hi] (inclusive spel
/// bounds); O must be contained in the box.  Raises BoxOutOfBounds for an
/// inverted or out-of-range box.
LutCharSet scan_box(const Space& s, const LutCharSet& spels,
                    std::span<const std::uint64_t> lo, std::span<const std::uint64_t> hi);

}  // namespace kgrid
