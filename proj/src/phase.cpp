#include "courtlab/phase.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "courtlab/error.hpp"
#include "courtlab/stats.hpp"

namespace courtlab {

AttackDirection AttackSchedule::direction_at(std::int64_t t_ms) const {
    if (!windows) return first_half;
    const auto half = windows->half_of(t_ms);
    if (!half) {
        throw config_error("unknown_half", "timestamp " + std::to_string(t_ms) + " lies outside both halves");
    }
    return *half == 1 ? first_half : flipped(first_half);
}

Phase classify_phase(Point2 c, AttackDirection direction, double midcourt) {
    const bool offensive_half = direction == AttackDirection::PositiveLength ? c.x > midcourt : c.x < midcourt;
    return offensive_half ? Phase::Attack : Phase::Defense;
}

std::vector<OnCourtInterval> detect_on_court(std::span<const MotionFrame> frames, std::span<const int> roster,
                                             std::int64_t window_ms) {
    std::vector<OnCourtInterval> out;
    if (frames.empty()) return out;

    std::vector<std::int64_t> gaps;
    for (std::size_t i = 1; i < frames.size(); ++i) gaps.push_back(frames[i].t_ms - frames[i - 1].t_ms);
    const std::int64_t step = gaps.empty() ? 1 : std::max<std::int64_t>(1, *std::min_element(gaps.begin(), gaps.end()));
    const std::int64_t end_of_session = frames.back().t_ms + step;
    const std::int64_t half = window_ms / 2;

    for (int player : roster) {
        std::vector<bool> state(frames.size());
        std::size_t lo = 0, hi = 0;  // window [lo, hi)
        std::vector<double> widths;
        for (std::size_t i = 0; i < frames.size(); ++i) {
            const std::int64_t t = frames[i].t_ms;
            while (frames[lo].t_ms < t - half) ++lo;
            while (hi < frames.size() && frames[hi].t_ms <= t + half) ++hi;

            widths.clear();
            for (std::size_t j = lo; j < hi; ++j) {
                if (const FrameEntry* e = frames[j].find(player)) widths.push_back(e->pos.y);
            }
            const std::size_t ticks = hi - lo;
            const std::size_t absent = ticks - widths.size();
            bool on = absent * 2 <= ticks;
            if (on) on = stats::median(widths) >= 0.0;
            state[i] = on;
        }

        std::size_t run_start = 0;
        for (std::size_t i = 1; i <= frames.size(); ++i) {
            if (i == frames.size() || state[i] != state[run_start]) {
                const std::int64_t end = i == frames.size() ? end_of_session : frames[i].t_ms;
                out.push_back({player, frames[run_start].t_ms, end, state[run_start]});
                run_start = i;
            }
        }
    }
    return out;
}

const QuintetSegment* QuintetTimeline::segment_at(std::int64_t t_ms) const {
    auto it = std::upper_bound(segments.begin(), segments.end(), t_ms,
                               [](std::int64_t t, const QuintetSegment& s) { return t < s.start_ms; });
    if (it == segments.begin()) return nullptr;
    --it;
    return t_ms < it->end_ms ? &*it : nullptr;
}

QuintetTimeline quintet_segments(std::span<const OnCourtInterval> intervals, std::span<const int> roster) {
    if (roster.size() != 6) {
        throw config_error("unsupported_roster", "quintet segmentation needs a roster of exactly 6 players, got " +
                                                     std::to_string(roster.size()));
    }
    QuintetTimeline out;
    if (intervals.empty()) return out;

    std::set<std::int64_t> cuts;
    for (const auto& iv : intervals) {
        cuts.insert(iv.start_ms);
        cuts.insert(iv.end_ms);
    }
    const std::vector<std::int64_t> bounds(cuts.begin(), cuts.end());

    auto on_court_during = [&](std::int64_t a, std::int64_t b) {
        std::vector<int> on;
        for (int p : roster) {
            const bool present = std::any_of(intervals.begin(), intervals.end(), [&](const OnCourtInterval& iv) {
                return iv.player_index == p && iv.on_court && iv.start_ms <= a && b <= iv.end_ms;
            });
            if (present) on.push_back(p);
        }
        return on;
    };

    struct Span {
        std::int64_t start, end;
        std::vector<int> on;
    };
    std::vector<Span> spans;
    for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
        auto on = on_court_during(bounds[k], bounds[k + 1]);
        if (!spans.empty() && spans.back().on == on && spans.back().end == bounds[k]) {
            spans.back().end = bounds[k + 1];
        } else {
            spans.push_back({bounds[k], bounds[k + 1], std::move(on)});
        }
    }

    for (auto& s : spans) {
        if (s.on.size() == 5) {
            QuintetSegment seg;
            seg.start_ms = s.start;
            seg.end_ms = s.end;
            std::copy(s.on.begin(), s.on.end(), seg.on_court.begin());
            for (int p : roster) {
                if (std::find(s.on.begin(), s.on.end(), p) == s.on.end()) seg.excluded = p;
            }
            out.segments.push_back(seg);
        } else {
            out.gaps.push_back({s.start, s.end, std::move(s.on)});
        }
    }
    return out;
}

std::string GroupedSpacing::key() const {
    std::string k;
    if (excluded_player) k = "quintet-" + std::to_string(*excluded_player);
    if (phase) k += (k.empty() ? "" : "/") + to_string(*phase);
    return k.empty() ? "all" : k;
}

std::vector<GroupedSpacing> grouped_spacing(std::span<const SpacingFrame> frames, std::span<const Phase> labels,
                                            std::span<const QuintetSegment> segments, GroupBy group_by) {
    if (labels.size() != frames.size()) {
        throw invariant_error("misaligned", "phase labels are not aligned with spacing frames");
    }
    QuintetTimeline timeline;
    timeline.segments.assign(segments.begin(), segments.end());

    // Sort key: quintet ascending, then Attack before Defense for the
    // quintet tables and Defense before Attack for the phase table.
    struct Acc {
        GroupedSpacing row;
        double area = 0.0, dist = 0.0;
    };
    std::map<std::pair<int, int>, Acc> groups;

    for (std::size_t i = 0; i < frames.size(); ++i) {
        const SpacingFrame& f = frames[i];
        const QuintetSegment* seg = nullptr;
        if (!segments.empty()) {
            seg = timeline.segment_at(f.t_ms);
            if (!seg) continue;
        }
        std::pair<int, int> key{0, 0};
        GroupedSpacing proto;
        switch (group_by) {
            case GroupBy::Phase:
                key = {0, labels[i] == Phase::Defense ? 0 : 1};
                proto.phase = labels[i];
                break;
            case GroupBy::Quintet:
                if (!seg) throw config_error("argument", "grouping by quintet needs quintet segments");
                key = {seg->excluded, 0};
                proto.excluded_player = seg->excluded;
                break;
            case GroupBy::QuintetPhase:
                if (!seg) throw config_error("argument", "grouping by quintet needs quintet segments");
                key = {seg->excluded, labels[i] == Phase::Attack ? 0 : 1};
                proto.excluded_player = seg->excluded;
                proto.phase = labels[i];
                break;
        }
        auto [it, inserted] = groups.try_emplace(key);
        if (inserted) it->second.row = proto;
        it->second.area += f.voronoi_area_sum_m2;
        it->second.dist += f.mean_pairwise_distance_m;
        ++it->second.row.frame_count;
    }

    std::vector<GroupedSpacing> out;
    for (auto& [_, acc] : groups) {
        const double n = static_cast<double>(acc.row.frame_count);
        acc.row.mean_voronoi_area_m2 = acc.area / n;
        acc.row.mean_avg_distance_m = acc.dist / n;
        out.push_back(acc.row);
    }
    return out;
}

std::string grouped_to_csv(std::span<const GroupedSpacing> rows) {
    std::ostringstream os;
    os.precision(10);
    os << "group,quintet,phase,voronoi_area_m2,avg_distance_m,frame_count\n";
    for (const auto& r : rows) {
        os << r.key() << ',' << (r.excluded_player ? std::to_string(*r.excluded_player) : "") << ','
           << (r.phase ? to_string(*r.phase) : "") << ',' << r.mean_voronoi_area_m2 << ',' << r.mean_avg_distance_m
           << ',' << r.frame_count << '\n';
    }
    return os.str();
}

std::string grouped_to_json(std::span<const GroupedSpacing> rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
        arr.push_back({{"group", r.key()},
                       {"quintet", r.excluded_player ? nlohmann::json(*r.excluded_player) : nlohmann::json(nullptr)},
                       {"phase", r.phase ? nlohmann::json(to_string(*r.phase)) : nlohmann::json(nullptr)},
                       {"voronoi_area_m2", r.mean_voronoi_area_m2},
                       {"avg_distance_m", r.mean_avg_distance_m},
                       {"frame_count", r.frame_count}});
    }
    return arr.dump();
}

}  // namespace courtlab
