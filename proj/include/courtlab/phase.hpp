#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "courtlab/court.hpp"
#include "courtlab/motion_frame.hpp"
#include "courtlab/spacing.hpp"
#include "courtlab/tracking.hpp"

namespace courtlab {

/// Attack direction over the match. The direction flips at half-time when
/// session windows are known; without them the first-half direction holds
/// throughout.
struct AttackSchedule {
    AttackDirection first_half = AttackDirection::PositiveLength;
    std::optional<SessionWindows> windows;

    /// Throws a configuration error for timestamps outside both halves.
    AttackDirection direction_at(std::int64_t t_ms) const;
};

/// Attack iff the centroid lies strictly inside the half being attacked.
/// A centroid exactly on midcourt is Defense.
Phase classify_phase(Point2 centroid, AttackDirection direction, double midcourt = 14.0);

struct OnCourtInterval {
    int player_index = 0;
    std::int64_t start_ms = 0;  // inclusive
    std::int64_t end_ms = 0;    // exclusive
    bool on_court = false;
};

/// Per-player maximal runs of on/off-court state. A player is off court at
/// a tick when, over the centered window, they are absent from more than
/// half the ticks or their median width coordinate is negative.
std::vector<OnCourtInterval> detect_on_court(std::span<const MotionFrame> frames, std::span<const int> roster,
                                             std::int64_t window_ms = 30000);

struct QuintetSegment {
    std::int64_t start_ms = 0;
    std::int64_t end_ms = 0;
    std::array<int, 5> on_court{};
    int excluded = 0;
};

struct InvalidGap {
    std::int64_t start_ms = 0;
    std::int64_t end_ms = 0;
    std::vector<int> on_court;
};

struct QuintetTimeline {
    std::vector<QuintetSegment> segments;
    std::vector<InvalidGap> gaps;

    const QuintetSegment* segment_at(std::int64_t t_ms) const;
};

/// Splits the session into maximal spans with exactly five of the six
/// rostered players on court; all other spans become invalid gaps.
QuintetTimeline quintet_segments(std::span<const OnCourtInterval> intervals, std::span<const int> roster);

enum class GroupBy { Phase, Quintet, QuintetPhase };

struct GroupedSpacing {
    std::optional<Phase> phase;
    std::optional<int> excluded_player;
    double mean_voronoi_area_m2 = 0.0;
    double mean_avg_distance_m = 0.0;
    std::size_t frame_count = 0;

    std::string key() const;
};

/// Averages spacing over frames sharing a group key. `labels` is aligned
/// with `frames`. When `segments` is non-empty, frames outside every
/// segment are dropped.
std::vector<GroupedSpacing> grouped_spacing(std::span<const SpacingFrame> frames, std::span<const Phase> labels,
                                            std::span<const QuintetSegment> segments, GroupBy group_by);

std::string grouped_to_csv(std::span<const GroupedSpacing> rows);
std::string grouped_to_json(std::span<const GroupedSpacing> rows);

}  // namespace courtlab
