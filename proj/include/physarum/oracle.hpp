#pragma once

#include <span>
#include <vector>

#include "physarum/geometry.hpp"
#include "physarum/series.hpp"

namespace physarum {

struct KernelSpec {
    int window = 1;  // odd, >= 1
};

/// Centered moving average with non-periodic boundaries: output sample j is
/// the mean of the w input samples centered at j + w/2, so the result is
/// n - w + 1 samples long and its x mapping shifts right by (w/2) * x_scale.
Series1D moving_average(const Series1D& s, const KernelSpec& k);

/// Iterated 3-tap smoothing y_i += (alpha/2) * (y_{i-1} - 2 y_i + y_{i+1})
/// with both endpoints held fixed. Full-length output.
Series1D lowpass(const Series1D& s, double alpha, int iterations);

struct SplineSpec {
    std::vector<Vec2> control_points;
    int degree = 1;
    bool clamped = false;
    bool closed = false;
    /// Number of control points appended by close_spline (0 for open specs);
    /// an unclamped-closed curve is evaluated over one full loop of the
    /// original points, not the whole knot range.
    int wrap_count = 0;
};

/// Knot vector of length n_points + degree + 1. Clamped repeats the first and
/// last knot degree+1 times with uniform interior knots; unclamped is uniform
/// throughout. Throws unless n_points > degree >= 1.
std::vector<double> bspline_knots(int n_points, int degree, bool clamped);

/// Valid parameter range [t0, t1] for evaluating `spec`.
struct ParamDomain {
    double t0;
    double t1;
};
ParamDomain bspline_domain(const SplineSpec& spec);

/// Point on the curve via the de Boor recursion. Throws when t lies outside
/// the valid domain.
Vec2 bspline_eval(const SplineSpec& spec, double t);

/// n_samples points at uniform parameter spacing across the valid domain.
std::vector<Vec2> bspline_sample(const SplineSpec& spec, int n_samples);

/// Closed-shape construction: unclamped appends copies of the first three
/// points; clamped appends a copy of the first point (the curve then passes
/// through it). Needs at least 4 points.
SplineSpec close_spline(std::vector<Vec2> points, int degree, bool clamped);

/// Convex hull, counterclockwise (y-up orientation), no duplicate endpoint.
/// Collinear input degenerates to its two extreme points; fewer than 3
/// distinct points come back as-is.
std::vector<Vec2> convex_hull(std::vector<Vec2> points);

/// True when p lies inside or on the hull boundary, within `tol` of it.
bool point_in_convex_hull(Vec2 p, std::span<const Vec2> hull, double tol = 1e-9);

}  // namespace physarum
