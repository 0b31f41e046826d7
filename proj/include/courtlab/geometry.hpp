#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace courtlab {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
    Point2 operator+(Point2 o) const { return {x + o.x, y + o.y}; }
    Point2 operator-(Point2 o) const { return {x - o.x, y - o.y}; }
    Point2 operator*(double s) const { return {x * s, y * s}; }
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Vertex ring, counter-clockwise, no repeated closing vertex.
using Polygon = std::vector<Point2>;

/// Signed shoelace area; positive for counter-clockwise rings.
double signed_area(std::span<const Point2> ring);

inline double polygon_area(std::span<const Point2> ring) { return std::abs(signed_area(ring)); }

/// Keeps the part of a convex ring where dot(p - anchor, normal) <= 0.
Polygon clip_half_plane(const Polygon& ring, Point2 anchor, Point2 normal);

/// True when every turn is a left turn (collinear runs within eps allowed).
bool is_convex_ccw(std::span<const Point2> ring, double eps = 1e-9);

/// Non-adjacent edges never touch.
bool is_simple(std::span<const Point2> ring, double eps = 1e-12);

/// Point-in-convex-ring test; boundary counts as inside within eps.
bool contains(std::span<const Point2> convex_ring, Point2 p, double eps = 1e-9);

}  // namespace courtlab
