#include <doctest.h>

#include <random>

#include "courtlab/court.hpp"
#include "courtlab/error.hpp"

using namespace courtlab;

TEST_CASE("grid cell lookup") {
    const GridSpec g;
    CHECK(cell_of({-2, -2}, g) == CellIndex{0, 0});
    CHECK(cell_of({0.5, 0.5}, g) == CellIndex{2, 2});
    CHECK_FALSE(cell_of({28.1, 16.1}, g).has_value());
    CHECK_FALSE(cell_of({-2.0001, 3}, g).has_value());
    CHECK(cell_of({27.999, 15.999}, g) == CellIndex{17, 29});
}

TEST_CASE("cell edges belong to the higher cell") {
    const GridSpec g;
    CHECK(cell_of({1.0, 1.0}, g) == CellIndex{3, 3});
    CHECK(cell_of({0.999999, 1.0}, g) == CellIndex{3, 2});
}

TEST_CASE("every in-grid point maps to the cell that contains it") {
    const GridSpec g;
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> ux(-2.0, 28.0), uy(-2.0, 16.0);
    for (int i = 0; i < 20000; ++i) {
        const Point2 p{ux(rng), uy(rng)};
        auto c = cell_of(p, g);
        REQUIRE(c.has_value());
        const double x0 = g.origin.x + c->col * g.cell_size_m;
        const double y0 = g.origin.y + c->row * g.cell_size_m;
        CHECK(p.x >= x0);
        CHECK(p.x < x0 + g.cell_size_m);
        CHECK(p.y >= y0);
        CHECK(p.y < y0 + g.cell_size_m);
    }
}

TEST_CASE("play-by-play coordinates map onto the court") {
    const CourtSpec c;
    auto center = pbp_to_court({0, 0}, c);
    CHECK(center.x == doctest::Approx(14.0));
    CHECK(center.y == doctest::Approx(7.5));
    CHECK(pbp_to_court({-100, -100}, c) == Point2{0, 0});
    CHECK(pbp_to_court({100, 100}, c) == Point2{28, 15});
    CHECK_THROWS_AS(pbp_to_court({150, 0}, c), Error);
}

TEST_CASE("play-by-play mapping round-trips") {
    const CourtSpec c;
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    for (int i = 0; i < 1000; ++i) {
        const Point2 p{u(rng), u(rng)};
        const Point2 back = court_to_pbp(pbp_to_court(p, c), c);
        CHECK(std::abs(back.x - p.x) < 1e-9);
        CHECK(std::abs(back.y - p.y) < 1e-9);
    }
}

TEST_CASE("court membership and bench region") {
    const CourtSpec c;
    CHECK(in_court({14, 7.5}, c));
    CHECK_FALSE(in_court({14, -1}, c));
    CHECK(in_bench_region({14, -1}));
    CHECK_FALSE(in_court({29, 7}, c));
}

TEST_CASE("court presets and validation") {
    CHECK(court_preset("default").grid.n_cols == 30);
    auto p = court_preset("court15x28");
    CHECK(p.grid.n_rows == 15);
    CHECK(p.grid.n_cols == 28);
    CHECK(p.grid.origin == Point2{0, 0});
    CHECK_THROWS_AS(court_preset("hockey"), Error);
    CourtSpec bad;
    bad.length_m = 0;
    CHECK_THROWS_AS(bad.validate(), Error);
    CHECK(parse_attack_direction(to_string(AttackDirection::NegativeLength)) == AttackDirection::NegativeLength);
    CHECK(flipped(AttackDirection::PositiveLength) == AttackDirection::NegativeLength);
}
