#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "courtlab/court.hpp"
#include "courtlab/geometry.hpp"
#include "courtlab/heatmap.hpp"
#include "courtlab/motion_frame.hpp"

namespace courtlab {

/// Sites closer than this are treated as coincident.
inline constexpr double kSiteTolerance = 0.01;
/// Magnitude of the deterministic offset applied to coincident sites.
inline constexpr double kSitePerturbation = 0.001;

enum class ClipPreset { FullCourt, PlayerBoundingBox };

ClipPreset parse_clip_preset(const std::string& text);
std::string to_string(ClipPreset preset);

/// Region the Voronoi cells are clipped to: a fixed rectangle, or one of
/// the presets resolved per frame.
struct ClipRegion {
    std::optional<Bounds> rectangle;
    ClipPreset preset = ClipPreset::FullCourt;
    double bbox_padding_m = 1.0;

    static ClipRegion full_court() { return {}; }
    static ClipRegion player_bbox(double padding = 1.0) { return {std::nullopt, ClipPreset::PlayerBoundingBox, padding}; }
    static ClipRegion rect(Bounds b) { return {b, ClipPreset::FullCourt, 1.0}; }

    Bounds resolve(std::span<const Point2> sites, const CourtSpec& court) const;
};

double mean_pairwise_distance(std::span<const Point2> positions);
Point2 centroid(std::span<const Point2> positions);

/// Clipped Voronoi cells, one per site in input order, each a
/// counter-clockwise convex ring (empty when the cell misses the clip).
/// Throws when two sites are closer than kSiteTolerance.
std::vector<Polygon> voronoi_cells(std::span<const Point2> sites, const Bounds& clip);
double voronoi_area_sum(std::span<const Point2> sites, const Bounds& clip);

struct SeparatedSites {
    std::vector<Point2> sites;
    std::vector<std::size_t> perturbed;  // indices that were moved
};

/// Moves every site that lies within kSiteTolerance of an earlier one by a
/// fixed 1 mm offset whose direction depends on its index.
SeparatedSites separate_coincident_sites(std::span<const Point2> sites);

struct Site {
    int player_index = 0;
    Point2 pos;
};

struct VoronoiCell {
    int player_index = 0;
    Polygon polygon;
    double area_m2 = 0.0;
};

struct SpacingFrame {
    std::int64_t t_ms = 0;
    std::vector<Site> players;
    double mean_pairwise_distance_m = 0.0;
    std::vector<VoronoiCell> cells;
    double voronoi_area_sum_m2 = 0.0;
    Point2 centroid;
    std::vector<int> perturbed_players;
    std::optional<Phase> phase;
};

/// All per-frame spacing quantities for the given on-court players
/// (at least two). Coincident sites are separated before tessellation.
SpacingFrame spacing_frame(std::int64_t t_ms, std::span<const Site> players, const ClipRegion& clip,
                           const CourtSpec& court);

std::string spacing_to_csv(std::span<const SpacingFrame> frames);
std::string spacing_to_json(std::span<const SpacingFrame> frames, bool include_cells = false);

}  // namespace courtlab
