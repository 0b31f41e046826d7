#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "courtlab/geometry.hpp"
#include "courtlab/motion_frame.hpp"

namespace courtlab {

/// Coordinates resolved into court axes: x = length, y = width, z = height.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    friend bool operator==(const Vec3&, const Vec3&) = default;
};

struct TrackingSample {
    std::int64_t record_id = 0;
    std::string wall_clock;  // "dd/mm/yyyy hh:mm", carried verbatim
    std::string player_tag;
    int player_index = 0;
    std::int64_t timestamp_ms = 0;
    Vec3 raw_pos;
    Vec3 filt_pos;
    Vec3 filt_vel;
    std::int64_t time_rank = 0;
    std::optional<double> speed_mps;

    Point2 planar() const { return {filt_pos.x, filt_pos.y}; }
};

/// Which source axis plays the court length, width and height role.
/// Names are filtered-coordinate columns: klm_x, klm_y or klm_z.
struct ColumnRoleMap {
    std::string length_axis = "klm_x";
    std::string width_axis = "klm_y";
    std::string height_axis = "klm_z";

    void validate() const;

    /// "xyz" (default: x length, y width, z height) or "yzx"
    /// (y length, z width, x height).
    static ColumnRoleMap profile(const std::string& name);
};

struct SessionWindows {
    std::int64_t match_start_ms = 0;
    std::int64_t halftime_start_ms = 0;
    std::int64_t halftime_end_ms = 0;
    std::int64_t match_end_ms = 0;

    void validate() const;
    bool in_play(std::int64_t t) const;
    /// 1 or 2 for timestamps inside a playing half, nullopt otherwise.
    std::optional<int> half_of(std::int64_t t) const;

    /// Parses "a,b,c,d".
    static SessionWindows parse(const std::string& text);
};

struct RejectedRow {
    std::size_t line = 0;
    std::string reason;
};

struct TrackingTable {
    std::vector<TrackingSample> samples;
    std::vector<std::string> warnings;
    std::vector<RejectedRow> rejected;
};

/// Column names of the tracking log, in file order.
const std::vector<std::string>& tracking_columns();

/// Tab-delimited log with a header row. Rows with unparseable numerics are
/// rejected and reported; missing columns and duplicate
/// (player_index, time_rank) keys throw.
TrackingTable parse_tracking(std::istream& in, const ColumnRoleMap& roles = {});

/// One JSON object per line, keyed by the same column names.
TrackingTable parse_tracking_jsonl(std::istream& in, const ColumnRoleMap& roles = {});

void write_tracking_tsv(std::ostream& out, std::span<const TrackingSample> samples,
                        const ColumnRoleMap& roles = {});

/// Keeps samples inside either playing half whose width and height
/// coordinates are non-negative. Output is sorted by timestamp.
std::vector<TrackingSample> filter_session(std::span<const TrackingSample> samples,
                                           const SessionWindows& windows);

/// Recomputes planar speed from consecutive filtered positions of each
/// player. Speeds above `cap_mps` and the first sample of each player are
/// left absent. Throws if a player's timestamps go backwards.
std::vector<TrackingSample> compute_speed(std::span<const TrackingSample> samples,
                                          double cap_mps = 12.0);

struct ResampleOptions {
    double rate_hz = 5.0;
    std::int64_t max_gap_ms = 1000;
    /// Tick origin; defaults to the earliest sample.
    std::optional<std::int64_t> origin_ms;
    bool parallel = false;
};

/// Interpolates every player onto a common clock. Frames with no player
/// present are omitted.
std::vector<MotionFrame> resample(std::span<const TrackingSample> samples,
                                  const ResampleOptions& options = {});

struct ColumnSummary {
    std::string name;
    std::size_t count = 0;
    double min = 0, q1 = 0, median = 0, mean = 0, q3 = 0, max = 0;
};

struct SummaryStats {
    std::vector<ColumnSummary> columns;
    std::size_t total_records = 0;
    std::map<int, std::size_t> records_per_player;
    std::int64_t duration_ms = 0;
    double samples_per_second_team = 0.0;
    double samples_per_second_player = 0.0;
};

SummaryStats summarize(std::span<const TrackingSample> samples, const ColumnRoleMap& roles = {});

/// Distinct player indices, ascending.
std::vector<int> roster_of(std::span<const TrackingSample> samples);

}  // namespace courtlab
