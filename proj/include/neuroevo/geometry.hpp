#pragma once

#include <cassert>
#include <cmath>
#include <numbers>
#include <optional>

namespace neuroevo {

/// 2D vector, components in meters.
struct Vec2 {
    double x{0.0};
    double y{0.0};

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(const Vec2& r) const { return {x + r.x, y + r.y}; }
    constexpr Vec2 operator-(const Vec2& r) const { return {x - r.x, y - r.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    friend constexpr Vec2 operator*(double s, const Vec2& v) { return {v.x * s, v.y * s}; }

    Vec2& operator+=(const Vec2& r) {
        x += r.x;
        y += r.y;
        return *this;
    }

    constexpr bool operator==(const Vec2&) const = default;

    constexpr double dot(const Vec2& r) const { return x * r.x + y * r.y; }

    /// z-component of the 3D cross product; positive when r is to the left.
    constexpr double cross(const Vec2& r) const { return x * r.y - y * r.x; }

    constexpr double norm_sq() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm_sq()); }

    Vec2 normalized(double eps = 1e-12) const {
        const double n = norm();
        if (n <= eps) return {0.0, 0.0};
        return {x / n, y / n};
    }

    /// Counterclockwise rotation by `a` radians.
    Vec2 rotated(double a) const {
        const double c = std::cos(a);
        const double s = std::sin(a);
        return {x * c - y * s, x * s + y * c};
    }

    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

inline Vec2 unit_from_angle(double a) { return {std::cos(a), std::sin(a)}; }

/// Line segment between two distinct endpoints.
struct Segment {
    Vec2 a;
    Vec2 b;

    double length() const { return (b - a).norm(); }
};

/// Wraps an angle to (-pi, pi]. Idempotent.
inline double normalize_angle(double a) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::remainder(a, two_pi);  // lands in [-pi, pi]
    if (r <= -std::numbers::pi) r += two_pi;
    return r;
}

/// Smallest t >= 0 such that origin + t*direction lies on seg, or nullopt.
///
/// `direction` must be unit length (asserted in debug builds). Collinear
/// overlap resolves to the nearest on-segment point along the ray; hits
/// closer than 1e-9 m report t = 0 so that touching a wall counts as contact.
inline std::optional<double> ray_segment_intersect(const Vec2& origin, const Vec2& direction,
                                                   const Segment& seg) {
    assert(std::abs(direction.norm() - 1.0) < 1e-9);

    constexpr double t_contact = 1e-9;
    const Vec2 e = seg.b - seg.a;
    const Vec2 w = seg.a - origin;
    const double denom = direction.cross(e);

    if (std::abs(denom) < 1e-12) {
        // Parallel. Only a collinear segment can intersect the ray.
        if (std::abs(direction.cross(w)) > 1e-9) return std::nullopt;
        const double ta = w.dot(direction);
        const double tb = (seg.b - origin).dot(direction);
        const double thi = std::max(ta, tb);
        if (thi < 0.0) return std::nullopt;
        const double t = std::max(std::min(ta, tb), 0.0);
        return t < t_contact ? 0.0 : t;
    }

    const double t = w.cross(e) / denom;
    const double u = w.cross(direction) / denom;
    if (u < 0.0 || u > 1.0) return std::nullopt;
    if (t < -t_contact) return std::nullopt;
    return t < t_contact ? 0.0 : t;
}

}  // namespace neuroevo
