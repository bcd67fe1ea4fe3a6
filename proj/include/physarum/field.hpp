#pragma once

#include <span>
#include <vector>

#include "physarum/geometry.hpp"

namespace physarum {

struct DiffusionParams {
    int kernel_radius = 1;   // 1 -> 3x3 mean filter
    double decay = 0.1;      // fraction removed per diffusion pass, in [0,1)
};

/// 2D scalar chemoattractant lattice. Values are nonnegative and finite;
/// dimensions are fixed for the lifetime of the field.
class Field {
public:
    Field(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }

    double at(int x, int y) const { return values_[index(x, y)]; }
    double& at(int x, int y) { return values_[index(x, y)]; }
    double at(Cell c) const { return at(c.x, c.y); }
    double& at(Cell c) { return at(c.x, c.y); }

    bool in_bounds(int x, int y) const { return x >= 0 && x < width_ && y >= 0 && y < height_; }
    bool in_bounds(Cell c) const { return in_bounds(c.x, c.y); }

    /// Value of the nearest cell; positions outside the lattice read 0.
    double sample(double x, double y) const;

    /// Add `magnitude` (>= 0) at each site.
    void project(std::span<const Cell> sites, double magnitude);

    void add(Cell c, double amount) { values_[index(c.x, c.y)] += amount; }

    double total() const;
    double min_value() const;
    double max_value() const;

    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

private:
    std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width_ + x; }

    int width_;
    int height_;
    std::vector<double> values_;
};

/// Box-mean diffusion with absorbing boundary: each cell becomes the mean of
/// its (2r+1)^2 neighborhood (out-of-bounds neighbors contribute 0), then is
/// scaled by (1 - decay). `dst` must have the same dimensions as `src`.
void diffuse_into(const Field& src, Field& dst, const DiffusionParams& params);

Field diffuse(const Field& src, const DiffusionParams& params);

}  // namespace physarum
