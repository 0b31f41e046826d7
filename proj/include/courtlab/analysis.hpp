#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "courtlab/config.hpp"
#include "courtlab/motion_frame.hpp"
#include "courtlab/pbp.hpp"
#include "courtlab/phase.hpp"
#include "courtlab/spacing.hpp"
#include "courtlab/tracking.hpp"

namespace courtlab {

/// Immutable result of running the whole pipeline over one match.
struct Analysis {
    Config config;
    std::vector<TrackingSample> samples;  // session-filtered, speeds recomputed
    std::vector<int> roster;
    std::map<int, std::string> tags;
    std::vector<MotionFrame> frames;      // resampled at config.rate_hz
    std::vector<OnCourtInterval> on_court;
    std::optional<QuintetTimeline> quintets;  // present for six-player rosters
    std::vector<SpacingFrame> spacing;    // phase filled in
    std::vector<Phase> labels;            // aligned with `spacing`
    std::vector<GroupedSpacing> by_phase;
    std::vector<GroupedSpacing> by_quintet_phase;
    std::vector<MinuteBucket> minutes;
    std::optional<BucketTable> buckets;
    std::optional<ClockMap> clock;
    std::vector<std::string> warnings;

    std::int64_t session_start_ms() const { return samples.empty() ? 0 : samples.front().timestamp_ms; }
    std::int64_t session_end_ms() const { return samples.empty() ? 0 : samples.back().timestamp_ms; }
    std::vector<TrackingSample> samples_of(int player) const;
};

/// Runs filter -> speed -> resample -> on-court -> quintets -> spacing ->
/// phases -> grouped tables -> minute buckets. `samples` are raw parsed
/// records; when no session windows are configured only the
/// non-negativity filter applies.
Analysis analyze(const Config& config, std::vector<TrackingSample> samples, std::vector<PlayEvent> events = {});

}  // namespace courtlab
