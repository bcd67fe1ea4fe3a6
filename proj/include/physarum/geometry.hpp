#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

namespace physarum {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    bool operator==(const Vec2&) const = default;
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }

struct Cell {
    int x = 0;
    int y = 0;

    bool operator==(const Cell&) const = default;
    auto operator<=>(const Cell& o) const {
        // row-major order: scan rows top to bottom
        if (auto c = y <=> o.y; c != 0) return c;
        return x <=> o.x;
    }
};

inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

/// Normalize an angle in degrees to [0, 360).
inline double normalize_deg(double deg) {
    double r = std::fmod(deg, 360.0);
    return r < 0.0 ? r + 360.0 : r;
}

/// Nearest lattice cell to a continuous position.
inline Cell to_cell(Vec2 p) {
    return {static_cast<int>(std::lround(p.x)), static_cast<int>(std::lround(p.y))};
}

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(b - a); }

/// Distance from point p to the segment [a, b].
double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);

/// Perpendicular distance from p to the infinite line through a and b.
double point_line_distance(Vec2 p, Vec2 a, Vec2 b);

/// Shortest distance from p to an open polyline (>= 1 vertex).
double point_polyline_distance(Vec2 p, std::span<const Vec2> vertices);

}  // namespace physarum
