#include "physarum/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace physarum {

Series1D moving_average(const Series1D& s, const KernelSpec& k) {
    const int n = static_cast<int>(s.values.size());
    const int w = k.window;
    if (w < 1 || w % 2 == 0) throw std::invalid_argument("moving average window must be odd and >= 1");
    if (w > n) throw std::invalid_argument("moving average window exceeds series length");

    const int half = w / 2;
    Series1D out = s;
    out.values.clear();
    out.values.reserve(static_cast<std::size_t>(n - w + 1));
    double acc = 0.0;
    for (int i = 0; i < w; ++i) acc += s.values[i];
    out.values.push_back(acc / w);
    for (int i = w; i < n; ++i) {
        acc += s.values[i] - s.values[i - w];
        out.values.push_back(acc / w);
    }
    out.x_origin = s.x_origin + half * s.x_scale;
    return out;
}

Series1D lowpass(const Series1D& s, double alpha, int iterations) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("lowpass alpha must be in (0,1]");
    if (iterations < 0) throw std::invalid_argument("lowpass iterations must be >= 0");
    if (s.values.size() < 2) throw std::invalid_argument("series needs at least 2 values");

    Series1D out = s;
    std::vector<double> next(out.values.size());
    const std::size_t n = out.values.size();
    for (int it = 0; it < iterations; ++it) {
        next.front() = out.values.front();
        next.back() = out.values.back();
        for (std::size_t i = 1; i + 1 < n; ++i)
            next[i] = out.values[i] +
                      0.5 * alpha * (out.values[i - 1] - 2.0 * out.values[i] + out.values[i + 1]);
        out.values.swap(next);
    }
    return out;
}

std::vector<double> bspline_knots(int n_points, int degree, bool clamped) {
    if (degree < 1) throw std::invalid_argument("spline degree must be >= 1");
    if (n_points <= degree) throw std::invalid_argument("spline needs more control points than its degree");

    const int n_knots = n_points + degree + 1;
    std::vector<double> knots(static_cast<std::size_t>(n_knots));
    if (clamped) {
        // 0 repeated degree+1 times, uniform interior, n_points-degree repeated.
        for (int i = 0; i < n_knots; ++i)
            knots[i] = std::clamp(i - degree, 0, n_points - degree);
    } else {
        for (int i = 0; i < n_knots; ++i) knots[i] = i;
    }
    return knots;
}

namespace {

void validate(const SplineSpec& spec) {
    const int n = static_cast<int>(spec.control_points.size());
    if (spec.degree < 1) throw std::invalid_argument("spline degree must be >= 1");
    if (n <= spec.degree) throw std::invalid_argument("spline needs more control points than its degree");
    if (spec.wrap_count < 0 || spec.wrap_count >= n)
        throw std::invalid_argument("invalid spline wrap count");
}

}  // namespace

ParamDomain bspline_domain(const SplineSpec& spec) {
    validate(spec);
    const int n = static_cast<int>(spec.control_points.size());
    const int p = spec.degree;
    const std::vector<double> knots = bspline_knots(n, p, spec.clamped);
    double t1 = knots[static_cast<std::size_t>(n)];
    if (spec.closed && !spec.clamped && spec.wrap_count > 0) {
        // one full loop of the original control polygon
        const int loop_end = p + (n - spec.wrap_count);
        t1 = std::min(t1, knots[static_cast<std::size_t>(std::min(loop_end, n))]);
    }
    return {knots[static_cast<std::size_t>(p)], t1};
}

Vec2 bspline_eval(const SplineSpec& spec, double t) {
    validate(spec);
    const int n = static_cast<int>(spec.control_points.size());
    const int p = spec.degree;
    const std::vector<double> knots = bspline_knots(n, p, spec.clamped);
    const ParamDomain dom = bspline_domain(spec);
    if (!(t >= dom.t0 && t <= dom.t1)) throw std::out_of_range("spline parameter outside domain");

    // Knot span k with knots[k] <= t < knots[k+1]; the domain end evaluates
    // in the last nonempty span.
    int k;
    if (t >= knots[static_cast<std::size_t>(n)]) {
        k = n - 1;
    } else {
        k = p;
        while (k < n - 1 && !(t < knots[static_cast<std::size_t>(k + 1)])) ++k;
    }

    std::vector<Vec2> d(static_cast<std::size_t>(p) + 1);
    for (int j = 0; j <= p; ++j) d[j] = spec.control_points[static_cast<std::size_t>(k - p + j)];
    for (int r = 1; r <= p; ++r) {
        for (int j = p; j >= r; --j) {
            const int i = k - p + j;
            const double lo = knots[static_cast<std::size_t>(i)];
            const double hi = knots[static_cast<std::size_t>(i + p - r + 1)];
            const double alpha = (t - lo) / (hi - lo);
            d[j] = (1.0 - alpha) * d[j - 1] + alpha * d[j];
        }
    }
    return d[p];
}

std::vector<Vec2> bspline_sample(const SplineSpec& spec, int n_samples) {
    if (n_samples < 2) throw std::invalid_argument("need at least 2 samples");
    const ParamDomain dom = bspline_domain(spec);
    std::vector<Vec2> out;
    out.reserve(static_cast<std::size_t>(n_samples));
    for (int i = 0; i < n_samples; ++i) {
        const double u = static_cast<double>(i) / (n_samples - 1);
        out.push_back(bspline_eval(spec, dom.t0 + u * (dom.t1 - dom.t0)));
    }
    return out;
}

SplineSpec close_spline(std::vector<Vec2> points, int degree, bool clamped) {
    if (points.size() < 4) throw std::invalid_argument("closed spline needs at least 4 points");
    SplineSpec spec;
    spec.degree = degree;
    spec.clamped = clamped;
    spec.closed = true;
    const Vec2 p0 = points[0];
    const Vec2 p1 = points[1];
    const Vec2 p2 = points[2];
    if (clamped) {
        points.push_back(p0);
        spec.wrap_count = 1;
    } else {
        points.push_back(p0);
        points.push_back(p1);
        points.push_back(p2);
        spec.wrap_count = 3;
    }
    spec.control_points = std::move(points);
    validate(spec);
    return spec;
}

std::vector<Vec2> convex_hull(std::vector<Vec2> points) {
    std::sort(points.begin(), points.end(), [](Vec2 a, Vec2 b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    points.erase(std::unique(points.begin(), points.end()), points.end());
    const std::size_t n = points.size();
    if (n < 3) return points;

    // Andrew's monotone chain; strict turns drop collinear boundary points.
    std::vector<Vec2> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], points[i] - hull[k - 2]) <= 0.0) --k;
        hull[k++] = points[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 1] - hull[k - 2], points[i] - hull[k - 2]) <= 0.0) --k;
        hull[k++] = points[i];
    }
    hull.resize(k - 1);
    return hull;
}

bool point_in_convex_hull(Vec2 p, std::span<const Vec2> hull, double tol) {
    if (hull.empty()) return false;
    if (hull.size() == 1) return distance(p, hull[0]) <= tol;
    if (hull.size() == 2) return point_segment_distance(p, hull[0], hull[1]) <= tol;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Vec2 a = hull[i];
        const Vec2 b = hull[(i + 1) % hull.size()];
        const double len = distance(a, b);
        if (len == 0.0) continue;
        // signed distance to edge; negative means outside a CCW hull
        if (cross(b - a, p - a) / len < -tol) return false;
    }
    return true;
}

}  // namespace physarum
