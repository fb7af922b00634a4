#pragma once

#include <string>

#include "kgrid/charset.hpp"

namespace kgrid {

/// Text geometry formats a surfel set can be rendered to.
enum class MeshFormat {
    off_quads,      ///< 3D only: one quad per surfel, OFF text
    svg_segments,   ///< 2D only: one unit segment per surfel, SVG 1.1
    csv_khalimsky,  ///< any n: `sign,xk_0,...,xk_{n-1}` per cell
};

/// Renders a surfel family (oriented or unsigned) to the chosen format.
/// Vertices sit at the digital coordinates of the surfel's closure pointels;
/// for oriented sets the quad winding encodes the orientation so that the
/// face normal points from the positive-coboundary side to the negative one
/// (outward for object boundaries).  Raises WrongDimension when the format
/// does not fit the space dimension, FamilyMismatch for non-surfel input.
std::string export_mesh(const LutCharSet& surfels, MeshFormat format);

}  // namespace kgrid
