#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "courtlab/analysis.hpp"
#include "courtlab/error.hpp"
#include "courtlab/synth.hpp"

using namespace courtlab;

namespace {

SynthSpec short_match() {
    SynthSpec s;
    s.duration_ms = 8 * 60000;
    s.halftime_break_ms = 60000;
    s.rotation = {{0, 1}, {3 * 60000, 2}, {6 * 60000, 3}};
    return s;
}

}  // namespace

TEST_CASE("same seed gives byte-identical outputs") {
    auto a = generate_synthetic(short_match());
    auto b = generate_synthetic(short_match());
    std::ostringstream ta, tb;
    write_tracking_tsv(ta, a.samples);
    write_tracking_tsv(tb, b.samples);
    CHECK(ta.str() == tb.str());
    std::ostringstream pa, pb;
    write_pbp(pa, a.events);
    write_pbp(pb, b.events);
    CHECK(pa.str() == pb.str());
    CHECK(a.sidecar_json == b.sidecar_json);

    auto other = short_match();
    other.seed = 7;
    std::ostringstream tc;
    write_tracking_tsv(tc, generate_synthetic(other).samples);
    CHECK(tc.str() != ta.str());
}

TEST_CASE("generated log covers six tagged players and the session windows") {
    auto m = generate_synthetic(short_match());
    CHECK(roster_of(m.samples) == std::vector<int>{1, 2, 3, 4, 5, 6});
    CHECK(m.windows.match_start_ms == 47'060'000);
    CHECK(m.windows.halftime_start_ms == 47'060'000 + 4 * 60000);
    CHECK(m.windows.match_end_ms == 47'060'000 + 9 * 60000);
    CHECK(m.samples.front().timestamp_ms < m.windows.match_start_ms);
    CHECK(m.samples.back().timestamp_ms > m.windows.match_end_ms);
    for (const auto& s : m.samples) {
        CHECK(s.filt_pos.x == std::round(s.filt_pos.x));
        CHECK(s.filt_pos.x >= -1.0);
    }
}

TEST_CASE("sidecar rotation passes the schedule through") {
    auto spec = short_match();
    spec.duration_ms = 40 * 60000;
    spec.halftime_break_ms = 2 * 60000;
    spec.rotation = {{0, 1}, {10 * 60000, 3}, {15 * 60000, 1}};
    auto m = generate_synthetic(spec);
    auto doc = nlohmann::json::parse(m.sidecar_json);
    REQUIRE(doc["rotation"].size() == 3);
    CHECK(doc["rotation"][1]["player"] == 3);
    CHECK(doc["rotation"][1]["start_ms"] == m.windows.match_start_ms + 10 * 60000);
    CHECK(doc["rotation"][1]["end_ms"] == m.windows.match_start_ms + 15 * 60000);
    CHECK(doc["substitutions"].size() == 2);
}

TEST_CASE("invalid generator specs are configuration errors") {
    auto s = short_match();
    s.sigma_attack_m = 1.0;
    CHECK_THROWS_AS(s.validate(), Error);
    s = short_match();
    s.rotation = {{1000, 1}};
    CHECK_THROWS_AS(s.validate(), Error);
    s = short_match();
    s.rotation = {{0, 7}};
    CHECK_THROWS_AS(s.validate(), Error);
}

TEST_CASE("attack spreads wider than defense on generated data") {
    auto m = generate_synthetic(short_match());
    Config c;
    c.windows = m.windows;
    auto a = analyze(c, m.samples, m.events);
    REQUIRE(a.by_phase.size() == 2);
    CHECK(a.by_phase[0].phase == Phase::Defense);
    CHECK(a.by_phase[1].phase == Phase::Attack);
    CHECK(a.by_phase[1].mean_avg_distance_m > a.by_phase[0].mean_avg_distance_m);
    std::size_t total = 0;
    for (const auto& r : a.by_phase) total += r.frame_count;
    CHECK(total == a.spacing.size());
    REQUIRE(a.buckets.has_value());
    std::size_t attack_in_shot_minutes = 0;
    for (const auto& f : a.spacing) {
        if (f.phase != Phase::Attack) continue;
        const auto minute = a.clock->minute_of(f.t_ms);
        for (const auto& b : a.minutes)
            if (b.minute == minute && b.pct_bucket) ++attack_in_shot_minutes;
    }
    std::size_t bucket_frames = 0;
    for (const auto& r : a.buckets->rows) bucket_frames += r.frame_count;
    CHECK(bucket_frames == attack_in_shot_minutes);
}
