#pragma once

#include <array>
#include <optional>
#include <string>

#include "courtlab/geometry.hpp"

namespace courtlab {

enum class AttackDirection { PositiveLength, NegativeLength };

AttackDirection flipped(AttackDirection d);
std::string to_string(AttackDirection d);
AttackDirection parse_attack_direction(const std::string& text);

/// Playing surface in meters. Length runs along x, width along y.
/// Points with a negative width coordinate are in the bench region.
struct CourtSpec {
    double length_m = 28.0;
    double width_m = 15.0;
    std::array<Point2, 2> baskets{Point2{1.0, 7.5}, Point2{27.0, 7.5}};
    AttackDirection attack_direction_first_half = AttackDirection::PositiveLength;

    double midcourt() const { return length_m / 2.0; }
    void validate() const;
};

/// Regular cell grid laid over the court. Rows follow the width axis,
/// columns the length axis. Cells are half-open: [k, k + cell).
struct GridSpec {
    Point2 origin{-2.0, -2.0};
    double cell_size_m = 1.0;
    int n_cols = 30;
    int n_rows = 18;

    void validate() const;
    int cell_count() const { return n_rows * n_cols; }
};

struct CellIndex {
    int row = 0;
    int col = 0;
    friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

/// Named court/grid combinations. "default" is 18x30 from (-2,-2);
/// "court15x28" is the bare 15x28 court from (0,0).
struct CourtPreset {
    CourtSpec court;
    GridSpec grid;
};
CourtPreset court_preset(const std::string& name);

/// Returns std::nullopt when the point falls outside the grid footprint.
std::optional<CellIndex> cell_of(Point2 p, const GridSpec& grid);

/// Maps play-by-play coordinates ([-100,100], origin at center court)
/// to court meters. Throws a range error outside [-100,100].
Point2 pbp_to_court(Point2 pbp, const CourtSpec& court);
Point2 court_to_pbp(Point2 meters, const CourtSpec& court);

bool in_court(Point2 p, const CourtSpec& court);
bool in_bench_region(Point2 p);

}  // namespace courtlab
