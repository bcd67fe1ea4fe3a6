#include "physarum/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace physarum {

Field::Field(int width, int height) : width_(width), height_(height) {
    if (width <= 0 || height <= 0) throw std::invalid_argument("field dimensions must be positive");
    values_.assign(static_cast<std::size_t>(width) * height, 0.0);
}

double Field::sample(double x, double y) const {
    const long cx = std::lround(x);
    const long cy = std::lround(y);
    if (cx < 0 || cx >= width_ || cy < 0 || cy >= height_) return 0.0;
    return values_[index(static_cast<int>(cx), static_cast<int>(cy))];
}

void Field::project(std::span<const Cell> sites, double magnitude) {
    if (magnitude < 0.0) throw std::invalid_argument("projection magnitude must be nonnegative");
    for (Cell c : sites) {
        if (!in_bounds(c)) throw std::out_of_range("projection site outside lattice");
        values_[index(c.x, c.y)] += magnitude;
    }
}

double Field::total() const {
    double sum = 0.0;
    for (double v : values_) sum += v;
    return sum;
}

double Field::min_value() const { return *std::min_element(values_.begin(), values_.end()); }

double Field::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

void diffuse_into(const Field& src, Field& dst, const DiffusionParams& params) {
    if (src.width() != dst.width() || src.height() != dst.height())
        throw std::invalid_argument("diffuse: field dimensions differ");
    if (params.kernel_radius < 1) throw std::invalid_argument("diffuse: kernel_radius must be >= 1");
    if (params.decay < 0.0 || params.decay >= 1.0)
        throw std::invalid_argument("diffuse: decay must be in [0,1)");

    const int w = src.width();
    const int h = src.height();
    const int r = params.kernel_radius;
    const int side = 2 * r + 1;
    const double scale = (1.0 - params.decay) / (static_cast<double>(side) * side);

    // Separable box filter: horizontal window sums into a scratch row-major
    // buffer, then vertical sums. Missing neighbors contribute 0 but the
    // divisor stays (2r+1)^2, which is what makes the boundary absorbing.
    static thread_local std::vector<double> rowsum;
    rowsum.assign(static_cast<std::size_t>(w) * h, 0.0);

    const std::span<const double> in = src.values();
    for (int y = 0; y < h; ++y) {
        const double* row = in.data() + static_cast<std::size_t>(y) * w;
        double* out = rowsum.data() + static_cast<std::size_t>(y) * w;
        double acc = 0.0;
        for (int x = 0; x < std::min(r, w); ++x) acc += row[x];
        for (int x = 0; x < w; ++x) {
            if (x + r < w) acc += row[x + r];
            out[x] = acc;
            if (x - r >= 0) acc -= row[x - r];
        }
    }

    std::span<double> out = dst.values();
    for (int x = 0; x < w; ++x) {
        double acc = 0.0;
        for (int y = 0; y < std::min(r, h); ++y) acc += rowsum[static_cast<std::size_t>(y) * w + x];
        for (int y = 0; y < h; ++y) {
            if (y + r < h) acc += rowsum[static_cast<std::size_t>(y + r) * w + x];
            double v = acc * scale;
            out[static_cast<std::size_t>(y) * w + x] = v < 0.0 ? 0.0 : v;
            if (y - r >= 0) acc -= rowsum[static_cast<std::size_t>(y - r) * w + x];
        }
    }
}

Field diffuse(const Field& src, const DiffusionParams& params) {
    Field dst(src.width(), src.height());
    diffuse_into(src, dst, params);
    return dst;
}

}  // namespace physarum
