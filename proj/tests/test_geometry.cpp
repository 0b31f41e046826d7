#include <doctest.h>

#include "courtlab/geometry.hpp"
#include "courtlab/stats.hpp"

using namespace courtlab;

TEST_CASE("area of a counter-clockwise rectangle") {
    const Polygon r = {{0, 0}, {28, 0}, {28, 15}, {0, 15}};
    CHECK(signed_area(r) == doctest::Approx(420.0));
    const Polygon cw(r.rbegin(), r.rend());
    CHECK(signed_area(cw) == doctest::Approx(-420.0));
    CHECK(polygon_area(cw) == doctest::Approx(420.0));
    CHECK(is_convex_ccw(r));
    CHECK_FALSE(is_convex_ccw(cw));
    CHECK(is_simple(r));
}

TEST_CASE("half-plane clip cuts a rectangle along a bisector") {
    const Polygon r = {{0, 0}, {28, 0}, {28, 15}, {0, 15}};
    auto left = clip_half_plane(r, {14, 0}, {1, 0});
    CHECK(polygon_area(left) == doctest::Approx(210.0));
    CHECK(is_convex_ccw(left));
    auto none = clip_half_plane(r, {-1, 0}, {1, 0});
    CHECK(none.empty());
    auto all = clip_half_plane(r, {30, 0}, {1, 0});
    CHECK(polygon_area(all) == doctest::Approx(420.0));
}

TEST_CASE("bow-tie is not simple") {
    const Polygon bow = {{0, 0}, {2, 2}, {2, 0}, {0, 2}};
    CHECK_FALSE(is_simple(bow));
}

TEST_CASE("point containment on a convex ring") {
    const Polygon tri = {{0, 0}, {4, 0}, {0, 4}};
    CHECK(contains(tri, {1, 1}));
    CHECK(contains(tri, {2, 2}));  // on the hypotenuse
    CHECK_FALSE(contains(tri, {3, 3}));
}

TEST_CASE("quantiles follow linear interpolation between order statistics") {
    const std::vector<double> v = {1, 2, 3, 4};
    CHECK(stats::quantile_sorted(v, 0.25) == doctest::Approx(1.75));
    CHECK(stats::quantile_sorted(v, 0.5) == doctest::Approx(2.5));
    CHECK(stats::median({5, 1, 3}) == 3.0);
    CHECK(stats::sample_stddev(std::vector<double>{2, 4, 4, 4, 5, 5, 7, 9}) == doctest::Approx(2.1380899));
}
