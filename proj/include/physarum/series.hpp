#pragma once

#include <vector>

#include "physarum/geometry.hpp"

namespace physarum {

struct Polyline2D {
    std::vector<Vec2> points;
    bool closed = false;
};

/// 1D signal plus its mapping into lattice coordinates: sample i lands at
/// x = x_origin + i * x_scale, y = y_origin - value_i * y_scale (rows grow
/// downward, so larger values sit higher on the lattice).
struct Series1D {
    std::vector<double> values;
    double x_scale = 1.0;
    double x_origin = 0.0;
    double y_origin = 0.0;
    double y_scale = 1.0;
};

/// Open polyline with one vertex per sample. Throws when the series has
/// fewer than 2 values.
Polyline2D series_to_polyline(const Series1D& s);

}  // namespace physarum
