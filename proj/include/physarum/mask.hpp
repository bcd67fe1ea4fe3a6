#pragma once

#include <vector>

#include "physarum/geometry.hpp"
#include "physarum/series.hpp"

namespace physarum {

/// Sorted, duplicate-free set of lattice cells (row-major order).
using CellMask = std::vector<Cell>;

CellMask sorted_unique(CellMask cells);

/// 8-connected digital line from a to b, endpoints included.
CellMask raster_segment(Cell a, Cell b);

/// Rasterize every segment of the polyline (including the closing segment of
/// a closed polyline). Vertices are rounded to the nearest cell. Throws when
/// consecutive points coincide.
CellMask rasterize(const Polyline2D& polyline);

/// Morphological dilation by a disc structuring element: a cell is in the
/// output iff some mask cell lies within `radius` of it (dx^2 + dy^2 <= r^2).
/// radius 0 returns the mask unchanged.
CellMask dilate_disc(const CellMask& mask, int radius);

/// Replace each segment of an x-monotone polyline with a horizontal run to
/// the segment's x midpoint, a vertical run, and a horizontal run to the next
/// vertex. Original vertices are preserved exactly; the output contains only
/// axis-parallel segments. Throws when x is not strictly increasing.
Polyline2D rectilinear_preprocess(const Polyline2D& polyline);

}  // namespace physarum
