#include "courtlab/court.hpp"

#include <cmath>

#include "courtlab/error.hpp"

namespace courtlab {

AttackDirection flipped(AttackDirection d) {
    return d == AttackDirection::PositiveLength ? AttackDirection::NegativeLength
                                                : AttackDirection::PositiveLength;
}

std::string to_string(AttackDirection d) {
    return d == AttackDirection::PositiveLength ? "+length" : "-length";
}

AttackDirection parse_attack_direction(const std::string& text) {
    if (text == "+length" || text == "+x" || text == "positive") return AttackDirection::PositiveLength;
    if (text == "-length" || text == "-x" || text == "negative") return AttackDirection::NegativeLength;
    throw config_error("attack_direction", "unknown attack direction '" + text + "'");
}

void CourtSpec::validate() const {
    if (!(length_m > 0.0) || !(width_m > 0.0)) {
        throw config_error("court", "court dimensions must be positive");
    }
    for (const Point2& b : baskets) {
        if (b.x < 0.0 || b.x > length_m || b.y < 0.0 || b.y > width_m) {
            throw config_error("court", "basket lies outside the court");
        }
    }
}

void GridSpec::validate() const {
    if (!(cell_size_m > 0.0)) throw config_error("grid", "cell size must be positive");
    if (n_cols <= 0 || n_rows <= 0) throw config_error("grid", "grid needs at least one row and column");
}

CourtPreset court_preset(const std::string& name) {
    CourtPreset preset;
    if (name == "default" || name == "18x30") return preset;
    if (name == "court15x28" || name == "15x28") {
        preset.grid.origin = {0.0, 0.0};
        preset.grid.n_rows = 15;
        preset.grid.n_cols = 28;
        return preset;
    }
    throw config_error("court_preset", "unknown court preset '" + name + "'");
}

std::optional<CellIndex> cell_of(Point2 p, const GridSpec& grid) {
    const double fx = std::floor((p.x - grid.origin.x) / grid.cell_size_m);
    const double fy = std::floor((p.y - grid.origin.y) / grid.cell_size_m);
    if (!std::isfinite(fx) || !std::isfinite(fy)) return std::nullopt;
    if (fx < 0.0 || fy < 0.0 || fx >= grid.n_cols || fy >= grid.n_rows) return std::nullopt;
    return CellIndex{static_cast<int>(fy), static_cast<int>(fx)};
}

Point2 pbp_to_court(Point2 pbp, const CourtSpec& court) {
    if (!(std::abs(pbp.x) <= 100.0) || !(std::abs(pbp.y) <= 100.0)) {
        throw input_error("range", "play-by-play coordinate outside [-100,100]");
    }
    const double half_l = court.length_m / 2.0;
    const double half_w = court.width_m / 2.0;
    return {pbp.x / 100.0 * half_l + half_l, pbp.y / 100.0 * half_w + half_w};
}

Point2 court_to_pbp(Point2 meters, const CourtSpec& court) {
    const double half_l = court.length_m / 2.0;
    const double half_w = court.width_m / 2.0;
    return {(meters.x - half_l) / half_l * 100.0, (meters.y - half_w) / half_w * 100.0};
}

bool in_court(Point2 p, const CourtSpec& court) {
    return p.x >= 0.0 && p.x <= court.length_m && p.y >= 0.0 && p.y <= court.width_m;
}

bool in_bench_region(Point2 p) { return p.y < 0.0; }

}  // namespace courtlab
