#pragma once

#include <cstdint>
#include <vector>

#include "physarum/geometry.hpp"

namespace physarum {

/// Per-cell particle index. Each lattice site holds at most one particle.
class OccupancyGrid {
public:
    static constexpr std::int32_t kEmpty = -1;

    OccupancyGrid(int width, int height)
        : width_(width), height_(height),
          cells_(static_cast<std::size_t>(width) * height, kEmpty) {}

    int width() const { return width_; }
    int height() const { return height_; }

    bool in_bounds(Cell c) const { return c.x >= 0 && c.x < width_ && c.y >= 0 && c.y < height_; }

    std::int32_t at(Cell c) const { return cells_[index(c)]; }
    bool empty(Cell c) const { return cells_[index(c)] == kEmpty; }

    void place(Cell c, std::int32_t id) { cells_[index(c)] = id; }
    void clear(Cell c) { cells_[index(c)] = kEmpty; }

    /// Number of particles in the (2r+1)^2 window centered at `c`, clipped at
    /// the lattice boundary. Includes whatever occupies the center cell.
    int count_window(Cell c, int radius) const {
        int n = 0;
        const int x0 = std::max(0, c.x - radius);
        const int x1 = std::min(width_ - 1, c.x + radius);
        const int y0 = std::max(0, c.y - radius);
        const int y1 = std::min(height_ - 1, c.y + radius);
        for (int y = y0; y <= y1; ++y) {
            const std::int32_t* row = cells_.data() + static_cast<std::size_t>(y) * width_;
            for (int x = x0; x <= x1; ++x) n += row[x] != kEmpty;
        }
        return n;
    }

    int occupied_count() const {
        int n = 0;
        for (std::int32_t v : cells_) n += v != kEmpty;
        return n;
    }

    const std::vector<std::int32_t>& cells() const { return cells_; }

private:
    std::size_t index(Cell c) const { return static_cast<std::size_t>(c.y) * width_ + c.x; }

    int width_;
    int height_;
    std::vector<std::int32_t> cells_;
};

}  // namespace physarum
