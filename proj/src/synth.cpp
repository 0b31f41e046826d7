#include "courtlab/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <random>

#include <json.hpp>

#include "courtlab/error.hpp"

namespace courtlab {

void SynthSpec::validate() const {
    if (n_players != 6) throw config_error("synth", "the generator supports a six-player roster only");
    if (duration_ms <= 0 || halftime_break_ms <= 0 || pre_match_ms < 0 || post_match_ms < 0) {
        throw config_error("synth", "durations must be positive");
    }
    if (!(sigma_attack_m > sigma_defense_m && sigma_defense_m > 0.0)) {
        throw config_error("synth", "spreads must satisfy sigma_attack > sigma_defense > 0");
    }
    if (phase_period_ms <= 0) throw config_error("synth", "phase period must be positive");
    if (!(sample_interval_ms > 0.0) || sample_jitter_ms < 0.0) throw config_error("synth", "invalid sampling interval");
    if (rotation.empty() || rotation.front().start_ms != 0) {
        throw config_error("synth", "rotation schedule must start at match time 0");
    }
    for (std::size_t i = 0; i < rotation.size(); ++i) {
        if (rotation[i].player < 1 || rotation[i].player > n_players) {
            throw config_error("synth", "rotation names an unknown player");
        }
        if (rotation[i].start_ms >= match_span_ms()) throw config_error("synth", "rotation change after match end");
        if (i > 0 && rotation[i].start_ms <= rotation[i - 1].start_ms) {
            throw config_error("synth", "rotation changes must be strictly increasing");
        }
    }
    parse_minute(wall_clock_start);
}

namespace {

const char* const kTags[] = {"84eb18675b32", "84eb18675b4b", "b4994c898155",
                             "b4994c89889c", "b4994c8baa73", "b4994c8bcc29"};
const char* const kFirstNames[] = {"Marco", "Luca", "Andrea", "Paolo", "Giorgio", "Stefano"};
const char* const kSurnames[] = {"Rossi", "Bianchi", "Ferrari", "Colombo", "Ricci", "Galli"};

struct PhaseWindow {
    std::int64_t start = 0;  // match clock
    std::int64_t end = 0;
    Phase phase = Phase::Attack;
    int half = 1;
    std::size_t index = 0;  // into the offsets table
};

class Generator {
public:
    Generator(const SynthSpec& spec, const CourtSpec& court) : spec_(spec), court_(court), rng_(spec.seed) {
        half_len_ = spec.duration_ms / 2;
        second_start_ = half_len_ + spec.halftime_break_ms;
        build_phases();
    }

    SyntheticMatch run() {
        SyntheticMatch out;
        const std::int64_t match_start = spec_.base_timestamp_ms + spec_.pre_match_ms;
        out.windows = {match_start, match_start + half_len_, match_start + second_start_,
                       match_start + spec_.match_span_ms()};
        out.samples = sample_players();
        out.events = play_by_play(out.windows);
        out.sidecar_json = sidecar(out.windows, out.events);
        return out;
    }

private:
    void build_phases() {
        std::normal_distribution<double> unit(0.0, 1.0);
        auto add_half = [&](std::int64_t start, std::int64_t end, int half) {
            std::size_t k = 0;
            for (std::int64_t t = start; t < end; t += spec_.phase_period_ms, ++k) {
                PhaseWindow w{t, std::min(end, t + spec_.phase_period_ms), k % 2 == 0 ? Phase::Attack : Phase::Defense,
                              half, phases_.size()};
                const double sigma = w.phase == Phase::Attack ? spec_.sigma_attack_m : spec_.sigma_defense_m;
                std::array<Point2, 6> offs{};
                for (auto& o : offs) o = {sigma * unit(rng_), sigma * unit(rng_)};
                offsets_.push_back(offs);
                phases_.push_back(w);
            }
        };
        add_half(0, half_len_, 1);
        add_half(second_start_, spec_.match_span_ms(), 2);
    }

    int benched_at(std::int64_t m) const {
        int p = spec_.rotation.front().player;
        for (const auto& r : spec_.rotation) {
            if (r.start_ms <= m) p = r.player;
        }
        return p;
    }

    const PhaseWindow* phase_at(std::int64_t m) const {
        for (const auto& w : phases_) {
            if (m >= w.start && m < w.end) return &w;
        }
        return nullptr;
    }

    Point2 team_target(Phase phase, int half) const {
        AttackDirection dir = half == 1 ? spec_.attack_direction_first_half : flipped(spec_.attack_direction_first_half);
        const bool forward = (phase == Phase::Attack) == (dir == AttackDirection::PositiveLength);
        return {court_.length_m * (forward ? 0.75 : 0.25), court_.width_m / 2.0};
    }

    Point2 clamp_court(Point2 p) const {
        return {std::clamp(p.x, 0.3, court_.length_m - 0.3), std::clamp(p.y, 0.3, court_.width_m - 0.3)};
    }

    /// True position of `player` (0-based) at session time `s`.
    Point2 position(int player, std::int64_t s) const {
        const double ps = static_cast<double>(s);
        const double phase_shift = player * 1.3;
        const std::int64_t m = s - spec_.pre_match_ms;
        const PhaseWindow* w = (m >= 0 && m <= spec_.match_span_ms()) ? phase_at(m) : nullptr;
        const bool benched = m >= 0 && m <= spec_.match_span_ms() && benched_at(m) == player + 1;

        if (!w || benched) {
            // Warm-up before and after the match sits on court; benches and the break sit at width -1.
            const bool on_bench = benched || (m >= half_len_ && m < second_start_);
            const double x = 4.0 + 4.0 * player + 1.5 * std::sin(2.0 * std::numbers::pi * ps / 60000.0 + phase_shift);
            if (on_bench) return {x, -1.0};
            return clamp_court({x, court_.width_m / 2.0 + 4.0 * std::sin(2.0 * std::numbers::pi * ps / 9000.0 + phase_shift)});
        }

        const double local = static_cast<double>(m - w->start);
        const double drift_x = 1.5 * std::sin(2.0 * std::numbers::pi * static_cast<double>(m) / 37000.0);
        const double drift_y = 2.0 * std::sin(2.0 * std::numbers::pi * static_cast<double>(m) / 53000.0);
        Point2 center = team_target(w->phase, w->half);
        Point2 offset = offsets_[w->index][static_cast<std::size_t>(player)];

        constexpr double kTransitionMs = 1000.0;
        const bool first_of_half = w->index == 0 || phases_[w->index - 1].half != w->half;
        if (!first_of_half && local < kTransitionMs) {
            const PhaseWindow& prev = phases_[w->index - 1];
            const double a = local / kTransitionMs;
            center = team_target(prev.phase, prev.half) * (1.0 - a) + center * a;
            offset = offsets_[prev.index][static_cast<std::size_t>(player)] * (1.0 - a) + offset * a;
        }
        const double wander = 0.5 * std::sin(2.0 * std::numbers::pi * ps / (7000.0 + 900.0 * player) + phase_shift);
        return clamp_court(center + Point2{drift_x, drift_y} + offset + Point2{wander, -wander});
    }

    std::vector<TrackingSample> sample_players() {
        const std::int64_t session = spec_.pre_match_ms + spec_.match_span_ms() + spec_.post_match_ms;
        std::normal_distribution<double> interval(spec_.sample_interval_ms, spec_.sample_jitter_ms);
        std::normal_distribution<double> sensor(0.0, 0.3);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const std::int64_t wall0 = parse_minute(spec_.wall_clock_start) * 60000;

        std::vector<TrackingSample> all;
        for (int p = 0; p < spec_.n_players; ++p) {
            double t = unit(rng_) * spec_.sample_interval_ms;
            Point2 last;
            double last_t = -1.0;
            while (t < static_cast<double>(session)) {
                const auto s = static_cast<std::int64_t>(t);
                const Point2 pos = position(p, s);
                TrackingSample smp;
                smp.player_tag = kTags[p];
                smp.player_index = p + 1;
                smp.timestamp_ms = spec_.base_timestamp_ms + s;
                smp.wall_clock = format_minute((wall0 + s) / 60000);
                smp.filt_pos = {std::round(pos.x), std::round(pos.y), unit(rng_) < 0.01 ? 1.0 : 0.0};
                smp.raw_pos = {std::round(pos.x + sensor(rng_)), std::round(pos.y + sensor(rng_)), smp.filt_pos.z};
                if (last_t >= 0.0) {
                    const double dt = (t - last_t) / 1000.0;
                    const Point2 v = (pos - last) * (1.0 / dt);
                    smp.filt_vel = {std::round(v.x), std::round(v.y), 0.0};
                    smp.speed_mps = std::round(std::hypot(v.x, v.y) * 100.0) / 100.0;
                }
                all.push_back(std::move(smp));
                last = pos;
                last_t = t;
                t += std::max(40.0, interval(rng_));
            }
        }
        std::stable_sort(all.begin(), all.end(), [](const TrackingSample& a, const TrackingSample& b) {
            if (a.timestamp_ms != b.timestamp_ms) return a.timestamp_ms < b.timestamp_ms;
            return a.player_index < b.player_index;
        });
        for (std::size_t i = 0; i < all.size(); ++i) {
            all[i].record_id = 1'000'000 + static_cast<std::int64_t>(i);
            all[i].time_rank = static_cast<std::int64_t>(i) + 1;
        }
        return all;
    }

    std::vector<PlayEvent> play_by_play(const SessionWindows& windows) {
        const std::int64_t wall0 = parse_minute(spec_.wall_clock_start) * 60000;
        const std::int64_t session_to_wall = wall0 - spec_.base_timestamp_ms;
        std::discrete_distribution<int> attempts_dist({25, 30, 25, 12, 8});
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::uniform_int_distribution<int> coord(-60, 60);
        std::uniform_int_distribution<int> depth(60, 95);

        std::vector<PlayEvent> events;
        const std::int64_t first_minute = (windows.match_start_ms + session_to_wall) / 60000;
        const std::int64_t last_minute = (windows.match_end_ms + session_to_wall) / 60000;
        for (std::int64_t minute = first_minute; minute <= last_minute; ++minute) {
            const std::int64_t mid_ts = minute * 60000 + 30000 - session_to_wall;
            const auto half = windows.half_of(mid_ts);
            if (!half) continue;
            const int benched = benched_at(mid_ts - windows.match_start_ms);
            const AttackDirection dir =
                *half == 1 ? spec_.attack_direction_first_half : flipped(spec_.attack_direction_first_half);
            const int sign = dir == AttackDirection::PositiveLength ? 1 : -1;

            const int attempts = attempts_dist(rng_);
            for (int a = 0; a < attempts; ++a) {
                int shooter = static_cast<int>(unit(rng_) * 5.0);
                if (shooter + 1 >= benched) ++shooter;  // skip the benched player
                shooter = std::min(shooter, 5);
                const bool three = unit(rng_) < 0.3;
                const bool made = unit(rng_) < (three ? 0.35 : 0.5);
                PlayEvent e;
                e.wall_clock = format_minute(minute);
                e.action = std::string(three ? "three" : "two") + " shot " + (made ? "made" : "missed");
                e.action_class = three ? (made ? ActionClass::Make3 : ActionClass::Miss3)
                                       : (made ? ActionClass::Make2 : ActionClass::Miss2);
                e.first_name = kFirstNames[shooter];
                e.surname = kSurnames[shooter];
                const int x = sign * depth(rng_);
                const int y = coord(rng_);
                e.coord = {static_cast<double>(x), static_cast<double>(y)};
                e.x_text = std::to_string(x);
                e.y_text = std::to_string(y);
                events.push_back(e);
                if (!made) {
                    PlayEvent r = e;
                    r.action = "rebound";
                    r.action_class = ActionClass::Other;
                    events.push_back(r);
                }
            }
        }
        return events;
    }

    std::string sidecar(const SessionWindows& windows, const std::vector<PlayEvent>& events) const {
        using nlohmann::json;
        json rotation = json::array();
        for (std::size_t i = 0; i < spec_.rotation.size(); ++i) {
            const std::int64_t end = i + 1 < spec_.rotation.size() ? spec_.rotation[i + 1].start_ms : spec_.match_span_ms();
            rotation.push_back({{"player", spec_.rotation[i].player},
                                {"start_ms", windows.match_start_ms + spec_.rotation[i].start_ms},
                                {"end_ms", windows.match_start_ms + end}});
        }
        json substitutions = json::array();
        for (std::size_t i = 1; i < spec_.rotation.size(); ++i) {
            substitutions.push_back(windows.match_start_ms + spec_.rotation[i].start_ms);
        }
        json phases = json::array();
        for (const auto& w : phases_) {
            phases.push_back({{"start_ms", windows.match_start_ms + w.start},
                              {"end_ms", windows.match_start_ms + w.end},
                              {"phase", to_string(w.phase)},
                              {"half", w.half}});
        }
        json shots = json::array();
        for (const auto& b : minute_shooting(events)) {
            shots.push_back({{"minute", format_minute(b.minute)},
                             {"attempts_2pt", b.attempts_2pt},
                             {"makes_2pt", b.makes_2pt},
                             {"attempts_3pt", b.attempts_3pt},
                             {"makes_3pt", b.makes_3pt}});
        }
        json doc = {{"seed", spec_.seed},
                    {"session_windows",
                     {{"match_start_ms", windows.match_start_ms},
                      {"halftime_start_ms", windows.halftime_start_ms},
                      {"halftime_end_ms", windows.halftime_end_ms},
                      {"match_end_ms", windows.match_end_ms}}},
                    {"attack_direction_first_half", to_string(spec_.attack_direction_first_half)},
                    {"sigma_attack_m", spec_.sigma_attack_m},
                    {"sigma_defense_m", spec_.sigma_defense_m},
                    {"phase_period_ms", spec_.phase_period_ms},
                    {"rotation", rotation},
                    {"substitutions", substitutions},
                    {"phases", phases},
                    {"shots", shots}};
        return doc.dump(2);
    }

    const SynthSpec& spec_;
    CourtSpec court_;
    std::mt19937_64 rng_;
    std::int64_t half_len_ = 0;
    std::int64_t second_start_ = 0;
    std::vector<PhaseWindow> phases_;
    std::vector<std::array<Point2, 6>> offsets_;
};

}  // namespace

SyntheticMatch generate_synthetic(const SynthSpec& spec, const CourtSpec& court) {
    spec.validate();
    court.validate();
    return Generator(spec, court).run();
}

}  // namespace courtlab
