#include "physarum/geometry.hpp"

#include <algorithm>
#include <limits>

namespace physarum {

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0) return distance(p, a);
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return distance(p, a + t * ab);
}

double point_line_distance(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 ab = b - a;
    const double len = norm(ab);
    if (len == 0.0) return distance(p, a);
    return std::abs(cross(ab, p - a)) / len;
}

double point_polyline_distance(Vec2 p, std::span<const Vec2> vertices) {
    if (vertices.empty()) return std::numeric_limits<double>::quiet_NaN();
    if (vertices.size() == 1) return distance(p, vertices[0]);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
        best = std::min(best, point_segment_distance(p, vertices[i], vertices[i + 1]));
    return best;
}

}  // namespace physarum
