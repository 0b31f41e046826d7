#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "courtlab/court.hpp"
#include "courtlab/spacing.hpp"
#include "courtlab/tracking.hpp"

namespace courtlab {

enum class ActionClass { Make2, Miss2, Make3, Miss3, Other };

std::string to_string(ActionClass c);
ActionClass parse_action_class(const std::string& text);

/// Maps raw action strings (compared case-insensitively, trimmed) to
/// shot classes.
class ActionLexicon {
public:
    ActionLexicon();  // the built-in English shot vocabulary
    explicit ActionLexicon(std::map<std::string, ActionClass> entries);

    std::optional<ActionClass> lookup(const std::string& action) const;
    const std::map<std::string, ActionClass>& entries() const { return entries_; }

private:
    std::map<std::string, ActionClass> entries_;
};

struct PlayEvent {
    std::string wall_clock;
    std::string action;
    ActionClass action_class = ActionClass::Other;
    std::string first_name;
    std::string surname;
    Point2 coord;        // [-100, 100] on both axes, origin at center court
    std::string x_text;  // coordinate fields as they appeared in the input
    std::string y_text;
};

struct PbpTable {
    std::vector<PlayEvent> events;
    std::vector<std::string> warnings;
    std::vector<RejectedRow> rejected;
    char delimiter = '\t';
};

/// Tab- or comma-delimited log (detected from the header) with columns
/// timestamp, action, name, surname, x_coord, y_coord.
PbpTable parse_pbp(std::istream& in, const ActionLexicon& lexicon = {});
void write_pbp(std::ostream& out, std::span<const PlayEvent> events, char delimiter = '\t');

/// Minutes since 1970-01-01 for "dd/mm/yyyy hh:mm" or "yyyy-mm-dd hh:mm".
std::int64_t parse_minute(const std::string& wall_clock);
std::string format_minute(std::int64_t minute);

/// Rounds 100 * makes / attempts to the nearest of {0, 25, 33, 50, 67, 100}.
int nearest_pct_bucket(int makes, int attempts);

struct MinuteBucket {
    std::int64_t minute = 0;
    int attempts_2pt = 0;
    int makes_2pt = 0;
    int attempts_3pt = 0;
    int makes_3pt = 0;
    std::optional<int> pct_bucket;  // combined 2pt + 3pt
    std::optional<int> pct_bucket_2pt;
    std::optional<int> pct_bucket_3pt;

    int attempts() const { return attempts_2pt + attempts_3pt; }
    int makes() const { return makes_2pt + makes_3pt; }
};

/// One row per wall-clock minute that has any event, ascending.
std::vector<MinuteBucket> minute_shooting(std::span<const PlayEvent> events);

/// Relates tracking timestamps to wall-clock minutes through a constant
/// offset estimated from the samples' minute stamps.
struct ClockMap {
    std::int64_t offset_ms = 0;  // wall_ms = t_ms + offset_ms

    std::int64_t minute_of(std::int64_t t_ms) const;

    /// Picks the middle of the offset interval consistent with every
    /// sample; `extra_minutes` shifts the tracking clock against the log.
    static ClockMap from_samples(std::span<const TrackingSample> samples, std::int64_t extra_minutes = 0);
};

enum class BucketBasis { Combined, TwoPoint, ThreePoint };

struct BucketRow {
    int pct_bucket = 0;
    double mean_voronoi_area_m2 = 0.0;
    double mean_avg_distance_m = 0.0;
    std::size_t frame_count = 0;
    std::size_t minutes = 0;
};

struct BucketTable {
    std::vector<BucketRow> rows;  // ascending bucket
    std::size_t shot_minutes = 0;
    std::size_t matched_minutes = 0;
};

/// Mean spacing over Attack frames grouped by the shooting bucket of the
/// frame's minute. Throws an alignment error when no minute with shot
/// attempts overlaps the frames.
BucketTable bucket_spacing(std::span<const MinuteBucket> buckets, std::span<const SpacingFrame> frames,
                           const ClockMap& clock, BucketBasis basis = BucketBasis::Combined);

std::string minutes_to_csv(std::span<const MinuteBucket> buckets);
std::string buckets_to_csv(const BucketTable& table);
std::string buckets_to_json(const BucketTable& table);

}  // namespace courtlab
