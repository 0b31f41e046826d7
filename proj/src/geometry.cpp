#include "courtlab/geometry.hpp"

#include <algorithm>

namespace courtlab {

double signed_area(std::span<const Point2> ring) {
    if (ring.size() < 3) return 0.0;
    double twice = 0.0;
    for (std::size_t i = 0, n = ring.size(); i < n; ++i) {
        const Point2& a = ring[i];
        const Point2& b = ring[(i + 1) % n];
        twice += a.x * b.y - b.x * a.y;
    }
    return 0.5 * twice;
}

Polygon clip_half_plane(const Polygon& ring, Point2 anchor, Point2 normal) {
    Polygon out;
    if (ring.empty()) return out;
    out.reserve(ring.size() + 1);

    auto side = [&](Point2 p) { return dot(p - anchor, normal); };

    for (std::size_t i = 0, n = ring.size(); i < n; ++i) {
        const Point2 cur = ring[i];
        const Point2 next = ring[(i + 1) % n];
        const double sc = side(cur);
        const double sn = side(next);
        if (sc <= 0.0) out.push_back(cur);
        if ((sc < 0.0 && sn > 0.0) || (sc > 0.0 && sn < 0.0)) {
            const double t = sc / (sc - sn);
            out.push_back(cur + (next - cur) * t);
        }
    }

    // Drop consecutive duplicates created by vertices lying on the line.
    Polygon clean;
    clean.reserve(out.size());
    for (const Point2& p : out) {
        if (clean.empty() || distance(clean.back(), p) > 1e-12) clean.push_back(p);
    }
    while (clean.size() > 1 && distance(clean.front(), clean.back()) <= 1e-12) clean.pop_back();
    if (clean.size() < 3) clean.clear();
    return clean;
}

bool is_convex_ccw(std::span<const Point2> ring, double eps) {
    const std::size_t n = ring.size();
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 a = ring[i];
        const Point2 b = ring[(i + 1) % n];
        const Point2 c = ring[(i + 2) % n];
        if (cross(b - a, c - b) < -eps) return false;
    }
    return signed_area(ring) > 0.0;
}

namespace {

int orientation(Point2 a, Point2 b, Point2 c, double eps) {
    const double v = cross(b - a, c - a);
    if (v > eps) return 1;
    if (v < -eps) return -1;
    return 0;
}

bool on_segment(Point2 a, Point2 b, Point2 p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool segments_touch(Point2 a, Point2 b, Point2 c, Point2 d, double eps) {
    const int o1 = orientation(a, b, c, eps);
    const int o2 = orientation(a, b, d, eps);
    const int o3 = orientation(c, d, a, eps);
    const int o4 = orientation(c, d, b, eps);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(a, b, c)) return true;
    if (o2 == 0 && on_segment(a, b, d)) return true;
    if (o3 == 0 && on_segment(c, d, a)) return true;
    if (o4 == 0 && on_segment(c, d, b)) return true;
    return false;
}

}  // namespace

bool is_simple(std::span<const Point2> ring, double eps) {
    const std::size_t n = ring.size();
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (adjacent) continue;
            if (segments_touch(ring[i], ring[(i + 1) % n], ring[j], ring[(j + 1) % n], eps)) {
                return false;
            }
        }
    }
    return true;
}

bool contains(std::span<const Point2> convex_ring, Point2 p, double eps) {
    const std::size_t n = convex_ring.size();
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 a = convex_ring[i];
        const Point2 b = convex_ring[(i + 1) % n];
        const double len = distance(a, b);
        if (len == 0.0) continue;
        if (cross(b - a, p - a) / len < -eps) return false;
    }
    return true;
}

}  // namespace courtlab
