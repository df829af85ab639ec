#pragma once

#include <cmath>

namespace lgrad {

// Plain 2D vector, double precision. Everything in the library works in
// these; angles are radians, orientation is counterclockwise.
struct Vec2 {
    double x{0.0};
    double y{0.0};

    constexpr Vec2() = default;
    constexpr Vec2(double xx, double yy) : x(xx), y(yy) {}

    constexpr Vec2 operator+(const Vec2& r) const { return {x + r.x, y + r.y}; }
    constexpr Vec2 operator-(const Vec2& r) const { return {x - r.x, y - r.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    friend constexpr Vec2 operator*(double s, const Vec2& v) { return {v.x * s, v.y * s}; }
    Vec2& operator+=(const Vec2& r) { x += r.x; y += r.y; return *this; }
    Vec2& operator-=(const Vec2& r) { x -= r.x; y -= r.y; return *this; }
    Vec2& operator*=(double s) { x *= s; y *= s; return *this; }

    constexpr double dot(const Vec2& r) const { return x * r.x + y * r.y; }
    constexpr double cross(const Vec2& r) const { return x * r.y - y * r.x; }
    double norm() const { return std::hypot(x, y); }
    constexpr double norm2() const { return x * x + y * y; }

    // Counterclockwise quarter turn; rot90() of a travel direction is its
    // left normal.
    constexpr Vec2 rot90() const { return {-y, x}; }
    constexpr Vec2 rot270() const { return {y, -x}; }

    Vec2 normalized(double eps = 0.0) const {
        double n = norm();
        if (n <= eps) return {0.0, 0.0};
        return {x / n, y / n};
    }

    double angle() const { return std::atan2(y, x); }
};

inline constexpr double dot(const Vec2& a, const Vec2& b) { return a.dot(b); }
inline constexpr double cross(const Vec2& a, const Vec2& b) { return a.cross(b); }
inline double dist(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

inline Vec2 unit_dir(double angle) { return {std::cos(angle), std::sin(angle)}; }

// Wrap an angle into [0, 2*pi).
inline double wrap_angle(double a) {
    const double tau = 6.283185307179586476925286766559;
    a = std::fmod(a, tau);
    if (a < 0) a += tau;
    return a;
}

// Signed distance scale-free collinearity measure of three points.
inline double turn(const Vec2& a, const Vec2& b, const Vec2& c) {
    return cross(b - a, c - a);
}

// Distance from point p to segment [a, b].
inline double point_segment_dist(const Vec2& p, const Vec2& a, const Vec2& b) {
    Vec2 ab = b - a;
    double den = ab.norm2();
    if (den == 0.0) return dist(p, a);
    double t = dot(p - a, ab) / den;
    if (t < 0.0) t = 0.0;
    if (t > 1.0) t = 1.0;
    return dist(p, a + t * ab);
}

// Closest point on segment [a, b] to p.
inline Vec2 project_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
    Vec2 ab = b - a;
    double den = ab.norm2();
    if (den == 0.0) return a;
    double t = dot(p - a, ab) / den;
    if (t < 0.0) t = 0.0;
    if (t > 1.0) t = 1.0;
    return a + t * ab;
}

// Proper crossing test between open segments (p1,p2) and (q1,q2).
// Returns 1 on a transversal crossing, 0 on no intersection and -1 when the
// configuration is degenerate at tolerance `tol` (touching endpoints,
// collinear overlap); callers that need exactness retry with a jittered
// segment.
inline int segment_crossing(const Vec2& p1, const Vec2& p2,
                            const Vec2& q1, const Vec2& q2, double tol) {
    double d1 = turn(q1, q2, p1);
    double d2 = turn(q1, q2, p2);
    double d3 = turn(p1, p2, q1);
    double d4 = turn(p1, p2, q2);
    double scale = std::max({std::fabs(d1), std::fabs(d2), std::fabs(d3), std::fabs(d4), 1e-300});
    if (std::fabs(d1) < tol * scale || std::fabs(d2) < tol * scale ||
        std::fabs(d3) < tol * scale || std::fabs(d4) < tol * scale) {
        // Near-degenerate; report only if clearly separated instead.
        double lq = dist(q1, q2), lp = dist(p1, p2);
        double sep = std::min({point_segment_dist(p1, q1, q2), point_segment_dist(p2, q1, q2),
                               point_segment_dist(q1, p1, p2), point_segment_dist(q2, p1, p2)});
        if (sep > tol * std::max(1.0, std::max(lq, lp))) return 0;
        return -1;
    }
    if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0))) return 1;
    return 0;
}

}  // namespace lgrad
