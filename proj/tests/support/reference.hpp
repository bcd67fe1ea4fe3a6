// Independent reference implementations the library is checked against.
// Everything here is deliberately naive; none of it shares code with the
// implementations under test.
#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "physarum/field.hpp"
#include "physarum/geometry.hpp"
#include "physarum/oracle.hpp"

namespace reference {

using physarum::Cell;
using physarum::Vec2;

/// Direct (2r+1)^2 mean with zero padding, times (1-decay).
inline physarum::Field brute_diffuse(const physarum::Field& src, int radius, double decay) {
    physarum::Field dst(src.width(), src.height());
    const int side = 2 * radius + 1;
    for (int y = 0; y < src.height(); ++y)
        for (int x = 0; x < src.width(); ++x) {
            double acc = 0.0;
            for (int dy = -radius; dy <= radius; ++dy)
                for (int dx = -radius; dx <= radius; ++dx)
                    if (src.in_bounds(x + dx, y + dy)) acc += src.at(x + dx, y + dy);
            dst.at(x, y) = acc / (side * side) * (1.0 - decay);
        }
    return dst;
}

/// Cox-de Boor basis by raw recursion (0/0 := 0). The last nonempty span is
/// right-closed so the domain end evaluates to the left limit.
inline double basis(int i, int p, double t, const std::vector<double>& knots, double t_end) {
    if (p == 0) {
        if (t == t_end) return knots[i] < t && t <= knots[i + 1] ? 1.0 : 0.0;
        return knots[i] <= t && t < knots[i + 1] ? 1.0 : 0.0;
    }
    double left = 0.0;
    if (knots[i + p] != knots[i])
        left = (t - knots[i]) / (knots[i + p] - knots[i]) * basis(i, p - 1, t, knots, t_end);
    double right = 0.0;
    if (knots[i + p + 1] != knots[i + 1])
        right = (knots[i + p + 1] - t) / (knots[i + p + 1] - knots[i + 1]) *
                basis(i + 1, p - 1, t, knots, t_end);
    return left + right;
}

/// Curve point as the full basis-function summation over all control points.
inline Vec2 bspline_by_basis_sum(const physarum::SplineSpec& spec, double t) {
    const int n = static_cast<int>(spec.control_points.size());
    const std::vector<double> knots = physarum::bspline_knots(n, spec.degree, spec.clamped);
    const double t_end = knots[static_cast<std::size_t>(n)];
    Vec2 acc{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
        const double b = basis(i, spec.degree, t, knots, t_end);
        acc.x += b * spec.control_points[static_cast<std::size_t>(i)].x;
        acc.y += b * spec.control_points[static_cast<std::size_t>(i)].y;
    }
    return acc;
}

/// O(n^3) hull: a directed pair (a, b) is a hull edge when every point lies
/// on or left of it. Returns the hull as a set of vertices.
inline std::vector<Vec2> brute_hull_vertices(const std::vector<Vec2>& points) {
    std::set<std::pair<double, double>> verts;
    const auto cross = [](Vec2 o, Vec2 a, Vec2 b) {
        return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
    };
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (i == j) continue;
            bool edge = true;
            bool strict = false;
            for (std::size_t k = 0; k < points.size() && edge; ++k) {
                if (k == i || k == j) continue;
                const double c = cross(points[i], points[j], points[k]);
                if (c < 0.0) edge = false;
                if (c > 0.0) strict = true;
            }
            if (edge && strict) {
                verts.insert({points[i].x, points[i].y});
                verts.insert({points[j].x, points[j].y});
            }
        }
    std::vector<Vec2> out;
    for (auto [x, y] : verts) out.push_back({x, y});
    return out;
}

/// A cell is in the dilation iff it lies within `radius` of some mask cell.
inline std::vector<Cell> brute_dilate(const std::vector<Cell>& mask, int radius) {
    std::set<std::pair<int, int>> out;
    int min_x = 1 << 30, max_x = -(1 << 30), min_y = 1 << 30, max_y = -(1 << 30);
    for (Cell c : mask) {
        min_x = std::min(min_x, c.x - radius);
        max_x = std::max(max_x, c.x + radius);
        min_y = std::min(min_y, c.y - radius);
        max_y = std::max(max_y, c.y + radius);
    }
    for (int y = min_y; y <= max_y; ++y)
        for (int x = min_x; x <= max_x; ++x)
            for (Cell c : mask)
                if ((x - c.x) * (x - c.x) + (y - c.y) * (y - c.y) <= radius * radius) {
                    out.insert({x, y});
                    break;
                }
    std::vector<Cell> cells;
    for (auto [x, y] : out) cells.push_back({x, y});
    return cells;
}

/// Plain windowed mean, no running sum.
inline std::vector<double> brute_moving_average(const std::vector<double>& v, int w) {
    std::vector<double> out;
    for (std::size_t i = 0; i + w <= v.size(); ++i) {
        double acc = 0.0;
        for (int k = 0; k < w; ++k) acc += v[i + k];
        out.push_back(acc / w);
    }
    return out;
}

}  // namespace reference
