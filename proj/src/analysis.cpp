#include "courtlab/analysis.hpp"

#include <algorithm>

#include "courtlab/error.hpp"
#include "courtlab/frames.hpp"

namespace courtlab {

std::vector<TrackingSample> Analysis::samples_of(int player) const {
    std::vector<TrackingSample> out;
    for (const auto& s : samples) {
        if (s.player_index == player) out.push_back(s);
    }
    return out;
}

namespace {

std::vector<TrackingSample> apply_filters(const Config& config, const std::vector<TrackingSample>& raw) {
    if (config.windows) return filter_session(raw, *config.windows);
    std::vector<TrackingSample> out;
    for (const auto& s : raw) {
        if (s.filt_pos.y >= 0.0 && s.filt_pos.z >= 0.0) out.push_back(s);
    }
    std::stable_sort(out.begin(), out.end(), [](const TrackingSample& a, const TrackingSample& b) {
        if (a.timestamp_ms != b.timestamp_ms) return a.timestamp_ms < b.timestamp_ms;
        return a.player_index < b.player_index;
    });
    return out;
}

/// Players counted as on court at tick t when no quintet timeline exists.
std::vector<int> on_court_at(const std::vector<OnCourtInterval>& intervals, std::int64_t t) {
    std::vector<int> out;
    for (const auto& iv : intervals) {
        if (iv.on_court && iv.start_ms <= t && t < iv.end_ms) out.push_back(iv.player_index);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

Analysis analyze(const Config& config, std::vector<TrackingSample> raw, std::vector<PlayEvent> events) {
    config.validate();
    Analysis a;
    a.config = config;
    a.samples = compute_speed(apply_filters(config, raw), config.speed_cap_mps);
    raw.clear();
    if (a.samples.empty()) throw input_error("empty_dataset", "no tracking samples left after session filtering");

    a.roster = roster_of(a.samples);
    for (const auto& s : a.samples) a.tags.emplace(s.player_index, s.player_tag);

    ResampleOptions ro;
    ro.rate_hz = config.rate_hz;
    ro.max_gap_ms = config.max_gap_ms;
    a.frames = resample(a.samples, ro);

    a.on_court = detect_on_court(a.frames, a.roster, config.on_court_window_ms);
    if (a.roster.size() == 6) {
        a.quintets = quintet_segments(a.on_court, a.roster);
    } else {
        a.warnings.push_back("roster has " + std::to_string(a.roster.size()) +
                             " players; quintet segmentation skipped");
    }

    const AttackSchedule schedule{config.court.attack_direction_first_half, config.windows};
    const ClipRegion clip{std::nullopt, config.clip, config.bbox_padding_m};
    std::size_t perturbed_frames = 0;

    for (const auto& frame : a.frames) {
        std::vector<int> players;
        if (a.quintets) {
            const QuintetSegment* seg = a.quintets->segment_at(frame.t_ms);
            if (!seg) continue;
            players.assign(seg->on_court.begin(), seg->on_court.end());
        } else {
            players = on_court_at(a.on_court, frame.t_ms);
        }
        std::vector<Site> sites;
        for (int p : players) {
            if (const FrameEntry* e = frame.find(p)) sites.push_back({p, e->pos});
        }
        if (sites.size() != players.size() || sites.size() < 2) continue;
        if (config.windows && !config.windows->in_play(frame.t_ms)) continue;

        SpacingFrame sf = spacing_frame(frame.t_ms, sites, clip, config.court);
        if (!sf.perturbed_players.empty()) ++perturbed_frames;
        sf.phase = classify_phase(sf.centroid, schedule.direction_at(frame.t_ms), config.court.midcourt());
        a.labels.push_back(*sf.phase);
        a.spacing.push_back(std::move(sf));
    }

    if (perturbed_frames > 0) {
        a.warnings.push_back(std::to_string(perturbed_frames) +
                             " frames had coincident players; their Voronoi sites were nudged by 1 mm");
    }
    annotate_phases(a.frames, a.spacing);

    const std::vector<QuintetSegment> no_segments;
    const auto& segments = a.quintets ? a.quintets->segments : no_segments;
    a.by_phase = grouped_spacing(a.spacing, a.labels, segments, GroupBy::Phase);
    if (a.quintets) a.by_quintet_phase = grouped_spacing(a.spacing, a.labels, segments, GroupBy::QuintetPhase);

    if (!events.empty()) {
        a.minutes = minute_shooting(events);
        a.clock = ClockMap::from_samples(a.samples, config.clock_offset_min);
        a.buckets = bucket_spacing(a.minutes, a.spacing, *a.clock);
    }
    return a;
}

}  // namespace courtlab
