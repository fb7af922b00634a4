#pragma once

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "kgrid/charset.hpp"
#include "kgrid/space.hpp"

namespace kgrid {

/// Which lattice points belong to a digital ball of radius r around c:
/// `inclusive` keeps x with sum (x_i-c_i)^2 <= r^2, `strict` requires <.
/// The inclusive rule is the calibrated default; the two differ exactly by
/// the lattice points at distance r.
enum class BallPredicate { inclusive, strict };

/// A binary image: a space layout plus spel occupancy.
struct VolumeImage {
    Space space;
    LutCharSet spels;
};

/// Empty image over the given space.
VolumeImage make_volume(const Space& space);

/// Digital ball around `center`.  Radius 0 gives the empty object.  The ball
/// must keep a one-spel margin to every image border, else
/// BallTouchesBorder.
VolumeImage digital_ball(const Space& space, std::span<const std::uint64_t> center,
                         std::uint64_t radius,
                         BallPredicate predicate = BallPredicate::inclusive);
VolumeImage digital_ball(const Space& space, std::initializer_list<std::uint64_t> center,
                         std::uint64_t radius,
                         BallPredicate predicate = BallPredicate::inclusive);

/// Writes the image in the CUBV1 format: ASCII header
/// `CUBV1 <n> <size_0> ... <size_{n-1}>` plus newline, then the occupancy
/// bits packed little-endian (LSB first), axis-0 coordinate fastest.
void write_volume(std::ostream& out, const VolumeImage& image);
void write_volume_file(const std::filesystem::path& path, const VolumeImage& image);

/// Reads a CUBV1 image.  Raises BadMagic, HeaderMismatch, TruncatedPayload.
VolumeImage read_volume(std::istream& in);
VolumeImage read_volume_file(const std::filesystem::path& path);

/// Builds an image from 8-bit samples ordered axis-0 fastest: a spel is set
/// exactly when its sample is >= threshold.  Raises SizeMismatch when the
/// sample count differs from the product of the sizes.
VolumeImage threshold_import(std::span<const std::uint8_t> samples,
                             std::span<const std::uint64_t> sizes, std::uint8_t threshold);

/// Per-axis smallest and largest occupied spel coordinate, or nullopt for an
/// empty image.
std::optional<std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>>>
spel_bounds(const Space& space, const LutCharSet& spels);

}  // namespace kgrid
