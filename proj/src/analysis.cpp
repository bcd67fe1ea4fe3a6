#include "physarum/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

namespace physarum {

namespace {

std::vector<std::uint8_t> occupancy_bitmap(const World& world) {
    const auto& grid = world.occupancy();
    std::vector<std::uint8_t> mask(grid.cells().size(), 0);
    for (std::size_t i = 0; i < mask.size(); ++i)
        mask[i] = grid.cells()[i] != OccupancyGrid::kEmpty;
    return mask;
}

}  // namespace

CellMask occupied_cells(const World& world) {
    CellMask cells;
    const auto& grid = world.occupancy();
    for (int y = 0; y < grid.height(); ++y)
        for (int x = 0; x < grid.width(); ++x)
            if (!grid.empty({x, y})) cells.push_back({x, y});
    return cells;
}

int occupied_column_count(const World& world) {
    const auto& grid = world.occupancy();
    int n = 0;
    for (int x = 0; x < grid.width(); ++x) {
        for (int y = 0; y < grid.height(); ++y)
            if (!grid.empty({x, y})) {
                ++n;
                break;
            }
    }
    return n;
}

MaterialCurve extract_curve(const World& world, ExtractionMode mode, std::optional<Vec2> anchor) {
    if (world.population() == 0) throw std::runtime_error("extract_curve: no particles");
    MaterialCurve curve;

    if (mode == ExtractionMode::column_mean) {
        std::vector<double> sum(static_cast<std::size_t>(world.width()), 0.0);
        std::vector<int> count(static_cast<std::size_t>(world.width()), 0);
        for (const Particle& p : world.particles()) {
            if (!p.alive) continue;
            const Cell c = to_cell(p.pos);
            sum[static_cast<std::size_t>(c.x)] += p.pos.y;
            ++count[static_cast<std::size_t>(c.x)];
        }
        for (int x = 0; x < world.width(); ++x)
            if (count[static_cast<std::size_t>(x)] > 0)
                curve.samples.push_back({static_cast<double>(x),
                                         sum[static_cast<std::size_t>(x)] /
                                             count[static_cast<std::size_t>(x)]});
        return curve;
    }

    // skeleton extraction
    const int w = world.width();
    const int h = world.height();
    const std::vector<std::uint8_t> skel = thin_mask(occupancy_bitmap(world), w, h);
    std::vector<Cell> pixels;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (skel[static_cast<std::size_t>(y) * w + x]) pixels.push_back({x, y});
    if (pixels.empty()) return curve;

    const Vec2 start_ref = anchor.value_or(Vec2{static_cast<double>(pixels.front().x),
                                                static_cast<double>(pixels.front().y)});
    // BFS from the skeleton pixel nearest the anchor; unreachable pieces are
    // appended afterwards in scan order.
    auto nearest = std::min_element(pixels.begin(), pixels.end(), [&](Cell a, Cell b) {
        const Vec2 pa{static_cast<double>(a.x), static_cast<double>(a.y)};
        const Vec2 pb{static_cast<double>(b.x), static_cast<double>(b.y)};
        return distance(pa, start_ref) < distance(pb, start_ref);
    });
    std::vector<std::int32_t> order(static_cast<std::size_t>(w) * h, -1);
    std::deque<Cell> queue{*nearest};
    order[static_cast<std::size_t>(nearest->y) * w + nearest->x] = 0;
    std::vector<Cell> visited;
    while (!queue.empty()) {
        const Cell c = queue.front();
        queue.pop_front();
        visited.push_back(c);
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                if (dx == 0 && dy == 0) continue;
                const int nx = c.x + dx;
                const int ny = c.y + dy;
                if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                const std::size_t idx = static_cast<std::size_t>(ny) * w + nx;
                if (!skel[idx] || order[idx] >= 0) continue;
                order[idx] = 1;
                queue.push_back({nx, ny});
            }
    }
    for (Cell c : pixels)
        if (order[static_cast<std::size_t>(c.y) * w + c.x] < 0) visited.push_back(c);
    curve.samples.reserve(visited.size());
    for (Cell c : visited)
        curve.samples.push_back({static_cast<double>(c.x), static_cast<double>(c.y)});
    return curve;
}

double deviation_distance(const World& world, Vec2 baseline_a, Vec2 baseline_b) {
    double worst = 0.0;
    for (const Particle& p : world.particles()) {
        if (!p.alive) continue;
        worst = std::max(worst, point_line_distance(p.pos, baseline_a, baseline_b));
    }
    return worst;
}

double curve_rmse(const MaterialCurve& a, std::span<const Vec2> b) {
    if (a.samples.empty() || b.empty()) throw std::invalid_argument("curve_rmse: empty curve");
    double acc = 0.0;
    for (Vec2 p : a.samples) {
        const double d = point_polyline_distance(p, b);
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(a.samples.size()));
}

int component_count(const World& world) {
    const int w = world.width();
    const int h = world.height();
    std::vector<std::uint8_t> mask = occupancy_bitmap(world);
    int components = 0;
    std::deque<Cell> queue;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (!mask[static_cast<std::size_t>(y) * w + x]) continue;
            ++components;
            mask[static_cast<std::size_t>(y) * w + x] = 0;
            queue.push_back({x, y});
            while (!queue.empty()) {
                const Cell c = queue.front();
                queue.pop_front();
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int nx = c.x + dx;
                        const int ny = c.y + dy;
                        if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                        std::uint8_t& m = mask[static_cast<std::size_t>(ny) * w + nx];
                        if (!m) continue;
                        m = 0;
                        queue.push_back({nx, ny});
                    }
            }
        }
    return components;
}

double amplitude(const MaterialCurve& curve) {
    if (curve.samples.empty()) throw std::invalid_argument("amplitude: empty curve");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (Vec2 p : curve.samples) {
        lo = std::min(lo, p.y);
        hi = std::max(hi, p.y);
    }
    return 0.5 * (hi - lo);
}

double nearest_particle_distance(const World& world, Vec2 p) {
    double best = std::numeric_limits<double>::infinity();
    for (const Particle& q : world.particles()) {
        if (!q.alive) continue;
        best = std::min(best, distance(p, q.pos));
    }
    return best;
}

std::vector<std::uint8_t> thin_mask(std::vector<std::uint8_t> mask, int width, int height) {
    if (static_cast<std::size_t>(width) * height != mask.size())
        throw std::invalid_argument("thin_mask: size mismatch");
    const auto at = [&](int x, int y) -> std::uint8_t {
        if (x < 0 || x >= width || y < 0 || y >= height) return 0;
        return mask[static_cast<std::size_t>(y) * width + x] ? 1 : 0;
    };

    std::vector<std::size_t> to_clear;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int pass = 0; pass < 2; ++pass) {
            to_clear.clear();
            for (int y = 0; y < height; ++y)
                for (int x = 0; x < width; ++x) {
                    if (!at(x, y)) continue;
                    const std::uint8_t p2 = at(x, y - 1), p3 = at(x + 1, y - 1), p4 = at(x + 1, y),
                                       p5 = at(x + 1, y + 1), p6 = at(x, y + 1), p7 = at(x - 1, y + 1),
                                       p8 = at(x - 1, y), p9 = at(x - 1, y - 1);
                    const int b = p2 + p3 + p4 + p5 + p6 + p7 + p8 + p9;
                    if (b < 2 || b > 6) continue;
                    const int a = (p2 == 0 && p3 == 1) + (p3 == 0 && p4 == 1) + (p4 == 0 && p5 == 1) +
                                  (p5 == 0 && p6 == 1) + (p6 == 0 && p7 == 1) + (p7 == 0 && p8 == 1) +
                                  (p8 == 0 && p9 == 1) + (p9 == 0 && p2 == 1);
                    if (a != 1) continue;
                    const int m1 = pass == 0 ? p2 * p4 * p6 : p2 * p4 * p8;
                    const int m2 = pass == 0 ? p4 * p6 * p8 : p2 * p6 * p8;
                    if (m1 != 0 || m2 != 0) continue;
                    to_clear.push_back(static_cast<std::size_t>(y) * width + x);
                }
            for (std::size_t idx : to_clear) mask[idx] = 0;
            changed = changed || !to_clear.empty();
        }
    }
    return mask;
}

}  // namespace physarum
