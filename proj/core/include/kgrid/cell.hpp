#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <vector>

namespace kgrid {

/// Orientation of a signed cell.  The numeric value is the sign bit.
enum class Sign : std::uint64_t { positive = 0, negative = 1 };

constexpr Sign flipped(Sign s) noexcept {
    return s == Sign::positive ? Sign::negative : Sign::positive;
}

/// Sign product: (+,+)->+, (+,-)->-, (-,-)->+.
constexpr Sign operator*(Sign a, Sign b) noexcept {
    return static_cast<Sign>(static_cast<std::uint64_t>(a) ^ static_cast<std::uint64_t>(b));
}

/// Unsigned cell code.  Interpretation requires the owning Space.
struct Cell {
    std::uint64_t code = 0;

    friend constexpr auto operator<=>(const Cell&, const Cell&) = default;
};

/// Signed (oriented) cell code.  Interpretation requires the owning Space.
struct SignedCell {
    std::uint64_t code = 0;

    friend constexpr auto operator<=>(const SignedCell&, const SignedCell&) = default;
};

/// Integer displacement between two cells, one entry per axis.
using CellVector = std::vector<std::int64_t>;

}  // namespace kgrid

template <>
struct std::hash<kgrid::Cell> {
    std::size_t operator()(const kgrid::Cell& c) const noexcept {
        return std::hash<std::uint64_t>{}(c.code);
    }
};

template <>
struct std::hash<kgrid::SignedCell> {
    std::size_t operator()(const kgrid::SignedCell& c) const noexcept {
        return std::hash<std::uint64_t>{}(c.code);
    }
};
