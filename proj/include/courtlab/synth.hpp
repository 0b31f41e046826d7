#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "courtlab/court.hpp"
#include "courtlab/pbp.hpp"
#include "courtlab/tracking.hpp"

namespace courtlab {

/// From `start_ms` (session clock, measured from match start) until the
/// next entry, `player` sits on the bench.
struct BenchChange {
    std::int64_t start_ms = 0;
    int player = 0;
};

struct SynthSpec {
    std::uint64_t seed = 42;
    int n_players = 6;
    std::int64_t duration_ms = 40 * 60000;        // playing time
    std::int64_t halftime_break_ms = 2 * 60000;
    std::int64_t pre_match_ms = 60000;
    std::int64_t post_match_ms = 60000;
    std::int64_t base_timestamp_ms = 47'000'000;  // tracking clock at session start
    std::string wall_clock_start = "22/03/2016 19:00";
    std::vector<BenchChange> rotation = {{0, 1},          {6 * 60000, 2},  {12 * 60000, 3}, {18 * 60000, 4},
                                         {27 * 60000, 5}, {33 * 60000, 6}, {38 * 60000, 1}};
    std::int64_t phase_period_ms = 24000;
    double sigma_attack_m = 4.0;
    double sigma_defense_m = 1.5;
    double sample_interval_ms = 162.0;
    double sample_jitter_ms = 30.0;
    AttackDirection attack_direction_first_half = AttackDirection::PositiveLength;

    void validate() const;
    /// Session-clock length: both halves plus the break.
    std::int64_t match_span_ms() const { return duration_ms + halftime_break_ms; }
};

struct SyntheticMatch {
    std::vector<TrackingSample> samples;
    std::vector<PlayEvent> events;
    SessionWindows windows;
    std::string sidecar_json;  // ground truth: rotation, phases, shots
};

/// Deterministic for a fixed spec.
SyntheticMatch generate_synthetic(const SynthSpec& spec, const CourtSpec& court = {});

}  // namespace courtlab
