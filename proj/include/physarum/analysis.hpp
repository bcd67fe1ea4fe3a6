#pragma once

#include <optional>
#include <span>
#include <vector>

#include "physarum/mask.hpp"
#include "physarum/scenario.hpp"
#include "physarum/world.hpp"

namespace physarum {

/// A 1-sample-per-location curve read off the particle population.
struct MaterialCurve {
    std::vector<Vec2> samples;
};

/// column_mean: one sample per occupied x-column at the mean particle y
/// (x-monotone data). skeleton: thin the occupancy mask to a 1-px 8-connected
/// path and order it by geodesic distance from the pixel nearest `anchor`.
MaterialCurve extract_curve(const World& world, ExtractionMode mode,
                            std::optional<Vec2> anchor = {});

/// Maximum perpendicular distance from any particle to the line through the
/// baseline endpoints, in pixels.
double deviation_distance(const World& world, Vec2 baseline_a, Vec2 baseline_b);

/// RMS of nearest-point distances from a's samples to the polyline through
/// b's samples (asymmetric, a -> b).
double curve_rmse(const MaterialCurve& a, std::span<const Vec2> b);

/// Number of 8-connected components of the occupancy mask.
int component_count(const World& world);

/// Half the peak-to-trough span of the curve's y values.
double amplitude(const MaterialCurve& curve);

/// Shortest distance from a point to any particle, in pixels.
double nearest_particle_distance(const World& world, Vec2 p);

/// Cells currently occupied, sorted row-major.
CellMask occupied_cells(const World& world);

/// Number of x-columns holding at least one particle.
int occupied_column_count(const World& world);

/// Zhang-Suen thinning of a binary mask to a 1-px-wide 8-connected skeleton.
std::vector<std::uint8_t> thin_mask(std::vector<std::uint8_t> mask, int width, int height);

}  // namespace physarum
