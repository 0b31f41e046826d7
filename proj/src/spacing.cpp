#include "courtlab/spacing.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "courtlab/error.hpp"

namespace courtlab {

ClipPreset parse_clip_preset(const std::string& text) {
    if (text == "court" || text == "full-court") return ClipPreset::FullCourt;
    if (text == "bbox" || text == "player-bounding-box") return ClipPreset::PlayerBoundingBox;
    throw config_error("clip", "unknown clip region '" + text + "' (expected court or bbox)");
}

std::string to_string(ClipPreset preset) { return preset == ClipPreset::FullCourt ? "court" : "bbox"; }

Bounds ClipRegion::resolve(std::span<const Point2> sites, const CourtSpec& court) const {
    if (rectangle) return *rectangle;
    if (preset == ClipPreset::FullCourt || sites.empty()) return {0.0, court.length_m, 0.0, court.width_m};
    Bounds b{sites[0].x, sites[0].x, sites[0].y, sites[0].y};
    for (const Point2& p : sites) {
        b.x_min = std::min(b.x_min, p.x);
        b.x_max = std::max(b.x_max, p.x);
        b.y_min = std::min(b.y_min, p.y);
        b.y_max = std::max(b.y_max, p.y);
    }
    b.x_min -= bbox_padding_m;
    b.x_max += bbox_padding_m;
    b.y_min -= bbox_padding_m;
    b.y_max += bbox_padding_m;
    return b;
}

double mean_pairwise_distance(std::span<const Point2> positions) {
    const std::size_t k = positions.size();
    if (k < 2) throw input_error("insufficient_players", "mean pairwise distance needs at least two players");
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) sum += distance(positions[i], positions[j]);
    }
    return sum / (static_cast<double>(k * (k - 1)) / 2.0);
}

Point2 centroid(std::span<const Point2> positions) {
    if (positions.empty()) throw input_error("insufficient_players", "centroid of an empty player set");
    Point2 c;
    for (const Point2& p : positions) c = c + p;
    return c * (1.0 / static_cast<double>(positions.size()));
}

namespace {

Polygon clip_rectangle(const Bounds& b) {
    return {{b.x_min, b.y_min}, {b.x_max, b.y_min}, {b.x_max, b.y_max}, {b.x_min, b.y_max}};
}

std::vector<Polygon> build_cells(std::span<const Point2> sites, const Bounds& clip) {
    if (!(clip.x_min < clip.x_max) || !(clip.y_min < clip.y_max)) {
        throw config_error("clip", "clip region must have positive extent");
    }
    const Polygon base = clip_rectangle(clip);
    std::vector<Polygon> cells;
    cells.reserve(sites.size());
    for (std::size_t i = 0; i < sites.size(); ++i) {
        Polygon cell = base;
        for (std::size_t j = 0; j < sites.size() && !cell.empty(); ++j) {
            if (j == i) continue;
            const Point2 mid = (sites[i] + sites[j]) * 0.5;
            cell = clip_half_plane(cell, mid, sites[j] - sites[i]);
        }
        cells.push_back(std::move(cell));
    }
    return cells;
}

void require_distinct(std::span<const Point2> sites) {
    std::ostringstream offenders;
    bool bad = false;
    for (std::size_t i = 0; i < sites.size(); ++i) {
        for (std::size_t j = i + 1; j < sites.size(); ++j) {
            if (distance(sites[i], sites[j]) < kSiteTolerance) {
                offenders << (bad ? ", " : "") << '(' << i << ',' << j << ')';
                bad = true;
            }
        }
    }
    if (bad) throw input_error("degenerate_sites", "coincident Voronoi sites: " + offenders.str());
}

}  // namespace

std::vector<Polygon> voronoi_cells(std::span<const Point2> sites, const Bounds& clip) {
    if (sites.empty()) throw input_error("insufficient_players", "Voronoi tessellation needs at least one site");
    require_distinct(sites);
    return build_cells(sites, clip);
}

double voronoi_area_sum(std::span<const Point2> sites, const Bounds& clip) {
    double total = 0.0;
    for (const auto& cell : voronoi_cells(sites, clip)) total += polygon_area(cell);
    return total;
}

SeparatedSites separate_coincident_sites(std::span<const Point2> sites) {
    constexpr double kGoldenAngle = 2.399963229728653;
    SeparatedSites out{{sites.begin(), sites.end()}, {}};
    for (std::size_t i = 1; i < sites.size(); ++i) {
        bool close = false;
        for (std::size_t j = 0; j < i && !close; ++j) close = distance(sites[i], sites[j]) < kSiteTolerance;
        if (!close) continue;
        const double angle = static_cast<double>(i) * kGoldenAngle;
        out.sites[i] = sites[i] + Point2{std::cos(angle), std::sin(angle)} * kSitePerturbation;
        out.perturbed.push_back(i);
    }
    return out;
}

SpacingFrame spacing_frame(std::int64_t t_ms, std::span<const Site> players, const ClipRegion& clip,
                           const CourtSpec& court) {
    SpacingFrame f;
    f.t_ms = t_ms;
    f.players.assign(players.begin(), players.end());
    std::vector<Point2> pts;
    pts.reserve(players.size());
    for (const Site& s : players) pts.push_back(s.pos);

    f.mean_pairwise_distance_m = mean_pairwise_distance(pts);
    f.centroid = centroid(pts);

    const SeparatedSites separated = separate_coincident_sites(pts);
    for (std::size_t idx : separated.perturbed) f.perturbed_players.push_back(players[idx].player_index);

    const Bounds region = clip.resolve(pts, court);
    auto polygons = build_cells(separated.sites, region);
    for (std::size_t i = 0; i < polygons.size(); ++i) {
        const double area = polygon_area(polygons[i]);
        f.voronoi_area_sum_m2 += area;
        f.cells.push_back({players[i].player_index, std::move(polygons[i]), area});
    }
    return f;
}

std::string spacing_to_csv(std::span<const SpacingFrame> frames) {
    std::ostringstream os;
    os.precision(10);
    os << "t_ms,mean_pairwise_distance_m,voronoi_area_sum_m2,centroid_x,centroid_y,phase\n";
    for (const auto& f : frames) {
        os << f.t_ms << ',' << f.mean_pairwise_distance_m << ',' << f.voronoi_area_sum_m2 << ',' << f.centroid.x
           << ',' << f.centroid.y << ',' << (f.phase ? to_string(*f.phase) : "") << '\n';
    }
    return os.str();
}

std::string spacing_to_json(std::span<const SpacingFrame> frames, bool include_cells) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& f : frames) {
        nlohmann::json players = nlohmann::json::array();
        for (const auto& s : f.players) players.push_back({{"player", s.player_index}, {"x", s.pos.x}, {"y", s.pos.y}});
        nlohmann::json row = {{"t_ms", f.t_ms},
                              {"players", players},
                              {"mean_pairwise_distance_m", f.mean_pairwise_distance_m},
                              {"voronoi_area_sum_m2", f.voronoi_area_sum_m2},
                              {"centroid", {f.centroid.x, f.centroid.y}},
                              {"phase", f.phase ? nlohmann::json(to_string(*f.phase)) : nlohmann::json(nullptr)}};
        if (include_cells) {
            nlohmann::json cells = nlohmann::json::array();
            for (const auto& c : f.cells) {
                nlohmann::json ring = nlohmann::json::array();
                for (const Point2& p : c.polygon) ring.push_back({p.x, p.y});
                cells.push_back({{"player", c.player_index}, {"area_m2", c.area_m2}, {"polygon", ring}});
            }
            row["cells"] = cells;
        }
        arr.push_back(std::move(row));
    }
    return arr.dump();
}

}  // namespace courtlab
