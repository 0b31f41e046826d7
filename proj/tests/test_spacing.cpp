#include <doctest.h>

#include <cmath>
#include <random>

#include <json.hpp>

#include "courtlab/error.hpp"
#include "courtlab/spacing.hpp"
#include "fixtures.hpp"

using namespace courtlab;

namespace {

const Bounds kCourt{0, 28, 0, 15};

double brute_mean_distance(const std::vector<Point2>& pts) {
    double sum = 0.0;
    int pairs = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts.size(); ++j)
            if (i < j) sum += std::sqrt((pts[i].x - pts[j].x) * (pts[i].x - pts[j].x) +
                                        (pts[i].y - pts[j].y) * (pts[i].y - pts[j].y)),
                           ++pairs;
    return sum / pairs;
}

std::size_t nearest(const std::vector<Point2>& sites, Point2 p) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < sites.size(); ++i)
        if (distance(sites[i], p) < distance(sites[best], p)) best = i;
    return best;
}

}  // namespace

TEST_CASE("mean pairwise distance on hand-checked sets") {
    std::vector<Point2> same(5, Point2{3, 3});
    CHECK(mean_pairwise_distance(same) == 0.0);
    std::vector<Point2> four_and_one = {{0, 0}, {0, 0}, {0, 0}, {0, 0}, {3, 4}};
    CHECK(mean_pairwise_distance(four_and_one) == doctest::Approx(2.0).epsilon(1e-15));
    std::vector<Point2> one = {{1, 1}};
    CHECK_THROWS_AS(mean_pairwise_distance(one), Error);
}

TEST_CASE("mean pairwise distance agrees with the explicit double loop") {
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<int> k(2, 10);
    for (int trial = 0; trial < 300; ++trial) {
        auto pts = fixtures::random_points(rng, k(rng), 0, 28, 0, 15);
        CHECK(std::abs(mean_pairwise_distance(pts) - brute_mean_distance(pts)) <= 1e-12);
    }
}

TEST_CASE("mean pairwise distance is rigid-motion invariant and scales linearly") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        auto pts = fixtures::random_points(rng, 5, 0, 28, 0, 15);
        const double d = mean_pairwise_distance(pts);
        const double a = 0.3 + trial * 0.1, c = std::cos(a), s = std::sin(a);
        auto moved = pts, scaled = pts;
        for (auto& p : moved) p = Point2{c * p.x - s * p.y + 4.0, s * p.x + c * p.y - 2.0};
        for (auto& p : scaled) p = p * 2.5;
        CHECK(mean_pairwise_distance(moved) == doctest::Approx(d).epsilon(1e-12));
        CHECK(mean_pairwise_distance(scaled) == doctest::Approx(2.5 * d).epsilon(1e-12));
    }
}

TEST_CASE("centroid") {
    std::vector<Point2> ends = {{0, 0}, {28, 15}};
    CHECK(centroid(ends) == Point2{14, 7.5});
    std::vector<Point2> same(5, Point2{3, 3});
    CHECK(centroid(same) == Point2{3, 3});
    std::vector<Point2> square = {{0, 0}, {6, 0}, {0, 6}, {6, 6}, {3, 3}};
    CHECK(centroid(square) == Point2{3, 3});
    std::vector<Point2> rev(square.rbegin(), square.rend());
    CHECK(centroid(rev).x == doctest::Approx(3.0));
    auto shifted = square;
    for (auto& p : shifted) p = p + Point2{1.5, -2};
    CHECK(centroid(shifted).x == doctest::Approx(4.5));
    CHECK(centroid(shifted).y == doctest::Approx(1.0));
}

TEST_CASE("a single site owns the whole court") {
    std::vector<Point2> s = {{5, 5}};
    auto cells = voronoi_cells(s, kCourt);
    CHECK(polygon_area(cells[0]) == doctest::Approx(420.0));
}

TEST_CASE("two sites split the court at the bisector") {
    std::vector<Point2> s = {{7, 7.5}, {21, 7.5}};
    auto cells = voronoi_cells(s, kCourt);
    CHECK(polygon_area(cells[0]) == doctest::Approx(210.0));
    CHECK(polygon_area(cells[1]) == doctest::Approx(210.0));
    for (const auto& p : cells[0]) CHECK(p.x <= 14.0 + 1e-12);
    for (const auto& p : cells[1]) CHECK(p.x >= 14.0 - 1e-12);
}

TEST_CASE("bounding-box clip around two sites") {
    std::vector<Point2> s = {{7, 7.5}, {21, 7.5}};
    const Bounds b = ClipRegion::player_bbox(1.0).resolve(s, CourtSpec{});
    CHECK(b.x_min == 6.0);
    CHECK(b.x_max == 22.0);
    CHECK(b.y_min == 6.5);
    CHECK(b.y_max == 8.5);
    auto cells = voronoi_cells(s, b);
    CHECK(polygon_area(cells[0]) == doctest::Approx(16.0));  // 8 x 2
    CHECK(polygon_area(cells[1]) == doctest::Approx(16.0));
    CHECK(voronoi_area_sum(s, b) == doctest::Approx(32.0));
}

TEST_CASE("five random sites partition the court") {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 200; ++trial) {
        auto s = fixtures::random_points(rng, 5, 0, 28, 0, 15);
        CHECK(std::abs(voronoi_area_sum(s, kCourt) - 420.0) <= 420.0 * 1e-6);
        for (const auto& c : voronoi_cells(s, kCourt)) {
            CHECK(is_convex_ccw(c));
            CHECK(is_simple(c));
        }
    }
}

TEST_CASE("Monte-Carlo cell areas agree with nearest-site sampling") {
    std::mt19937_64 rng(15);
    auto s = fixtures::random_points(rng, 5, 0, 28, 0, 15);
    auto cells = voronoi_cells(s, kCourt);
    const int n = 1'000'000;
    std::vector<int> hits(5, 0);
    std::uniform_real_distribution<double> ux(0, 28), uy(0, 15);
    for (int i = 0; i < n; ++i) {
        const double x = ux(rng);
        ++hits[nearest(s, {x, uy(rng)})];
    }
    for (std::size_t i = 0; i < 5; ++i) {
        const double p = polygon_area(cells[i]) / 420.0;
        const double sigma = std::sqrt(p * (1 - p) / n);
        CHECK(std::abs(static_cast<double>(hits[i]) / n - p) <= 3.0 * sigma + 1e-12);
    }
}

TEST_CASE("sampled points fall in the cell of their nearest site") {
    std::mt19937_64 rng(16);
    for (int trial = 0; trial < 10; ++trial) {
        auto s = fixtures::random_points(rng, 5, 0, 28, 0, 15);
        auto cells = voronoi_cells(s, kCourt);
        auto pts = fixtures::random_points(rng, 2000, 0, 28, 0, 15);
        for (const auto& p : pts) CHECK(contains(cells[nearest(s, p)], p));
    }
}

TEST_CASE("coincident sites are rejected by the strict tessellation") {
    std::vector<Point2> s = {{5, 5}, {5.005, 5}, {9, 9}};
    try {
        voronoi_cells(s, kCourt);
        FAIL("expected degenerate_sites");
    } catch (const Error& e) {
        CHECK(e.code() == "degenerate_sites");
    }
}

TEST_CASE("coincident sites are separated deterministically in the frame pipeline") {
    std::vector<Site> players = {{1, {5, 5}}, {2, {5, 5}}, {3, {5, 5}}, {4, {10, 3}}, {5, {20, 12}}};
    auto f = spacing_frame(100, players, ClipRegion::full_court(), CourtSpec{});
    CHECK(f.voronoi_area_sum_m2 == doctest::Approx(420.0).epsilon(1e-9));
    CHECK(f.perturbed_players == std::vector<int>{2, 3});
    CHECK(f.cells.size() == 5);
    auto again = spacing_frame(100, players, ClipRegion::full_court(), CourtSpec{});
    for (std::size_t i = 0; i < 5; ++i) CHECK(again.cells[i].polygon == f.cells[i].polygon);
    // distances still use the true positions
    std::vector<Point2> raw = {{5, 5}, {5, 5}, {5, 5}, {10, 3}, {20, 12}};
    CHECK(f.mean_pairwise_distance_m == mean_pairwise_distance(raw));
}

TEST_CASE("clip presets parse and serialize") {
    CHECK(parse_clip_preset("court") == ClipPreset::FullCourt);
    CHECK(parse_clip_preset("player-bounding-box") == ClipPreset::PlayerBoundingBox);
    CHECK(to_string(ClipPreset::PlayerBoundingBox) == "bbox");
    CHECK_THROWS_AS(parse_clip_preset("ellipse"), Error);
}

TEST_CASE("spacing exports") {
    std::vector<Site> players = {{1, {2, 2}}, {2, {6, 5}}};
    std::vector<SpacingFrame> frames = {spacing_frame(7, players, ClipRegion::full_court(), CourtSpec{})};
    frames[0].phase = Phase::Attack;
    auto csv = spacing_to_csv(frames);
    CHECK(csv.find("7,5,420,4,3.5,attack") != std::string::npos);
    auto doc = nlohmann::json::parse(spacing_to_json(frames, true));
    CHECK(doc[0]["cells"].size() == 2);
    CHECK(doc[0]["phase"] == "attack");
}
