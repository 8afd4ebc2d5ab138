#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <variant>
#include <vector>

namespace pto {

struct Vec2 {
    double x = 0;
    double y = 0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Maps an angle to (-pi, pi].
inline double normalizeAngle(double a)
{
    constexpr double twoPi = 2 * std::numbers::pi;
    a = std::fmod(a, twoPi);
    if (a <= -std::numbers::pi) a += twoPi;
    else if (a > std::numbers::pi) a -= twoPi;
    return a;
}

/// Signed rotation of smallest magnitude taking `from` to `to`.
inline double shortestArc(double from, double to) { return normalizeAngle(to - from); }

inline double degToRad(double d) { return d * std::numbers::pi / 180.0; }
inline double radToDeg(double r) { return r * 180.0 / std::numbers::pi; }

/// SE(2) configuration of the disc robot.
struct RobotState {
    double x = 0;
    double y = 0;
    double theta = 0;

    RobotState() = default;
    RobotState(double x_, double y_, double theta_) : x(x_), y(y_), theta(normalizeAngle(theta_)) {}

    Vec2 position() const { return {x, y}; }
    friend bool operator==(const RobotState&, const RobotState&) = default;
};

/// Interpolates position linearly and heading along the shortest arc.
inline RobotState interpolate(const RobotState& a, const RobotState& b, double t)
{
    return RobotState(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y), a.theta + t * shortestArc(a.theta, b.theta));
}

/// sqrt(dx^2 + dy^2) + angularWeight * |shortest arc|.
inline double distance(const RobotState& a, const RobotState& b, double angularWeight = 0.0)
{
    const double d = std::hypot(b.x - a.x, b.y - a.y);
    if (angularWeight == 0.0) return d;
    return d + angularWeight * std::abs(shortestArc(a.theta, b.theta));
}

struct Circle {
    Vec2 center;
    double radius = 0;
};

/// Convex polygon, vertices stored counter-clockwise.
class ConvexPolygon {
public:
    ConvexPolygon() = default;
    explicit ConvexPolygon(std::vector<Vec2> vertices) : vertices_(std::move(vertices))
    {
        if (vertices_.size() < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
        double area2 = 0;
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            area2 += cross(vertices_[i], vertices_[(i + 1) % vertices_.size()]);
        if (area2 == 0) throw std::invalid_argument("degenerate polygon");
        if (area2 < 0) std::reverse(vertices_.begin(), vertices_.end());
        const std::size_t n = vertices_.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2 e1 = vertices_[(i + 1) % n] - vertices_[i];
            const Vec2 e2 = vertices_[(i + 2) % n] - vertices_[(i + 1) % n];
            if (cross(e1, e2) < 0) throw std::invalid_argument("polygon is not convex");
        }
    }

    static ConvexPolygon rectangle(Vec2 min, Vec2 max)
    {
        return ConvexPolygon({min, {max.x, min.y}, max, {min.x, max.y}});
    }

    const std::vector<Vec2>& vertices() const { return vertices_; }

    bool contains(Vec2 p) const
    {
        const std::size_t n = vertices_.size();
        for (std::size_t i = 0; i < n; ++i)
            if (cross(vertices_[(i + 1) % n] - vertices_[i], p - vertices_[i]) < 0) return false;
        return true;
    }

private:
    std::vector<Vec2> vertices_;
};

using Shape = std::variant<ConvexPolygon, Circle>;

inline double pointSegmentDistance(Vec2 p, Vec2 a, Vec2 b)
{
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    double t = len2 > 0 ? dot(p - a, ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return norm(p - (a + t * ab));
}

/// Disc (center, radius) overlaps the shape with positive depth.
inline bool discOverlaps(const Shape& shape, Vec2 center, double radius)
{
    if (const auto* c = std::get_if<Circle>(&shape)) return norm(center - c->center) < c->radius + radius;
    const auto& poly = std::get<ConvexPolygon>(shape);
    if (poly.contains(center)) return true;
    const auto& v = poly.vertices();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (pointSegmentDistance(center, v[i], v[(i + 1) % v.size()]) < radius) return true;
    return false;
}

/// The segment a-b passes through the interior of the shape. Grazing contact does not count.
inline bool segmentCrosses(const Shape& shape, Vec2 a, Vec2 b)
{
    if (const auto* c = std::get_if<Circle>(&shape)) return pointSegmentDistance(c->center, a, b) < c->radius;

    // Cyrus-Beck clipping against the half-planes of the polygon.
    const auto& v = std::get<ConvexPolygon>(shape).vertices();
    const Vec2 d = b - a;
    double tEnter = 0.0;
    double tExit = 1.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2 edge = v[(i + 1) % v.size()] - v[i];
        // inside means cross(edge, p - v[i]) > 0
        const double num = cross(edge, a - v[i]);
        const double den = cross(edge, d);
        if (den == 0) {
            if (num <= 0) return false;
            continue;
        }
        const double t = -num / den;
        if (den > 0) tEnter = std::max(tEnter, t);
        else tExit = std::min(tExit, t);
        if (tEnter >= tExit) return false;
    }
    constexpr double kMinOverlap = 1e-12;
    return tExit - tEnter > kMinOverlap;
}

struct Bounds {
    Vec2 min;
    Vec2 max;

    bool containsDisc(Vec2 c, double r) const
    {
        return c.x - r >= min.x && c.x + r <= max.x && c.y - r >= min.y && c.y + r <= max.y;
    }
    Vec2 center() const { return 0.5 * (min + max); }
};

}  // namespace pto
