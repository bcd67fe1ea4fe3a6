#include "physarum/mask.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace physarum {

Polyline2D series_to_polyline(const Series1D& s) {
    if (s.values.size() < 2) throw std::invalid_argument("series needs at least 2 values");
    Polyline2D out;
    out.points.reserve(s.values.size());
    for (std::size_t i = 0; i < s.values.size(); ++i)
        out.points.push_back({s.x_origin + static_cast<double>(i) * s.x_scale,
                              s.y_origin - s.values[i] * s.y_scale});
    out.closed = false;
    return out;
}

CellMask sorted_unique(CellMask cells) {
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    return cells;
}

CellMask raster_segment(Cell a, Cell b) {
    // Bresenham, 8-connected: one cell per major-axis step.
    CellMask out;
    const int dx = std::abs(b.x - a.x);
    const int dy = -std::abs(b.y - a.y);
    const int sx = a.x < b.x ? 1 : -1;
    const int sy = a.y < b.y ? 1 : -1;
    int err = dx + dy;
    Cell c = a;
    out.reserve(static_cast<std::size_t>(std::max(dx, -dy)) + 1);
    while (true) {
        out.push_back(c);
        if (c == b) break;
        const int e2 = 2 * err;
        if (e2 >= dy) {
            err += dy;
            c.x += sx;
        }
        if (e2 <= dx) {
            err += dx;
            c.y += sy;
        }
    }
    return out;
}

CellMask rasterize(const Polyline2D& polyline) {
    const auto& pts = polyline.points;
    if (pts.size() < 2) throw std::invalid_argument("polyline needs at least 2 points");
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        if (pts[i] == pts[i + 1])
            throw std::invalid_argument("polyline has repeated consecutive points");

    CellMask cells;
    const std::size_t n_segments = pts.size() - (polyline.closed ? 0 : 1);
    for (std::size_t i = 0; i < n_segments; ++i) {
        const Cell a = to_cell(pts[i]);
        const Cell b = to_cell(pts[(i + 1) % pts.size()]);
        CellMask seg = raster_segment(a, b);
        cells.insert(cells.end(), seg.begin(), seg.end());
    }
    return sorted_unique(std::move(cells));
}

CellMask dilate_disc(const CellMask& mask, int radius) {
    if (radius < 0) throw std::invalid_argument("dilation radius must be >= 0");
    if (radius == 0) return sorted_unique(mask);

    std::vector<Cell> offsets;
    for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx)
            if (dx * dx + dy * dy <= radius * radius) offsets.push_back({dx, dy});

    CellMask out;
    out.reserve(mask.size() * offsets.size());
    for (Cell c : mask)
        for (Cell o : offsets) out.push_back({c.x + o.x, c.y + o.y});
    return sorted_unique(std::move(out));
}

Polyline2D rectilinear_preprocess(const Polyline2D& polyline) {
    const auto& pts = polyline.points;
    if (polyline.closed) throw std::invalid_argument("rectilinear preprocessing needs an open polyline");
    if (pts.size() < 2) throw std::invalid_argument("polyline needs at least 2 points");
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        if (!(pts[i + 1].x > pts[i].x))
            throw std::invalid_argument("rectilinear preprocessing needs strictly x-monotone data");

    Polyline2D out;
    out.points.push_back(pts[0]);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const Vec2 a = pts[i];
        const Vec2 b = pts[i + 1];
        if (a.y != b.y) {
            const double xm = 0.5 * (a.x + b.x);
            out.points.push_back({xm, a.y});
            out.points.push_back({xm, b.y});
        }
        out.points.push_back(b);
    }
    return out;
}

}  // namespace physarum
