#include <doctest.h>

#include <cmath>

#include <json.hpp>

#include "courtlab/error.hpp"
#include "courtlab/frames.hpp"

using namespace courtlab;

namespace {

std::vector<MotionFrame> ten_frames() {
    std::vector<MotionFrame> frames;
    for (int k = 0; k < 10; ++k) {
        MotionFrame f{1000 + k * 200, {}};
        for (int p = 1; p <= 6; ++p) {
            f.entries.push_back({p, {p * 3.1 + k * 0.123456789, 7.5 - p * 0.3}, p == 2 ? std::nullopt : std::optional(1.5 * p),
                                 std::nullopt});
        }
        frames.push_back(std::move(f));
    }
    return frames;
}

}  // namespace

TEST_CASE("one frame exports one record with entries in index order") {
    auto frames = ten_frames();
    frames.resize(1);
    std::reverse(frames[0].entries.begin(), frames[0].entries.end());
    std::sort(frames[0].entries.begin(), frames[0].entries.end(),
              [](const FrameEntry& a, const FrameEntry& b) { return a.player_index < b.player_index; });
    auto doc = nlohmann::json::parse(export_motion_frames(frames, CourtSpec{}));
    REQUIRE(doc["frames"].size() == 1);
    const auto& e = doc["frames"][0]["entries"];
    REQUIRE(e.size() == 6);
    for (int i = 0; i < 6; ++i) CHECK(e[i]["player"] == i + 1);
    CHECK(e[1]["speed"].is_null());
    CHECK(doc["header"]["canvas"]["width"] == 1200);
    CHECK(doc["header"]["aspect"].get<double>() == doctest::Approx(28.0 / 15.0));
}

TEST_CASE("stride decimates and keeps timestamps increasing") {
    FrameExportOptions o;
    o.stride = 2;
    auto doc = nlohmann::json::parse(export_motion_frames(ten_frames(), CourtSpec{}, o));
    REQUIRE(doc["frames"].size() == 5);
    for (std::size_t i = 1; i < 5; ++i) CHECK(doc["frames"][i]["t_ms"] > doc["frames"][i - 1]["t_ms"]);
    o.stride = 0;
    CHECK_THROWS_AS(export_motion_frames(ten_frames(), CourtSpec{}, o), Error);
}

TEST_CASE("range is half-open") {
    FrameExportOptions o;
    o.from_ms = 1200;
    o.to_ms = 1800;
    auto doc = nlohmann::json::parse(export_motion_frames(ten_frames(), CourtSpec{}, o));
    REQUIRE(doc["frames"].size() == 3);
    CHECK(doc["frames"][0]["t_ms"] == 1200);
    CHECK(doc["frames"][2]["t_ms"] == 1600);
}

TEST_CASE("export then import reproduces positions in both formats") {
    const auto frames = ten_frames();
    for (auto fmt : {FrameFormat::Document, FrameFormat::JsonLines}) {
        FrameExportOptions o;
        o.format = fmt;
        const auto text = export_motion_frames(frames, CourtSpec{}, o);
        const auto back = import_motion_frames(text);
        CHECK(back.court.length_m == 28.0);
        CHECK(back.rate_hz == 5.0);
        REQUIRE(back.frames.size() == frames.size());
        for (std::size_t i = 0; i < frames.size(); ++i) {
            CHECK(back.frames[i].t_ms == frames[i].t_ms);
            for (std::size_t j = 0; j < 6; ++j) {
                CHECK(std::abs(back.frames[i].entries[j].pos.x - frames[i].entries[j].pos.x) <= 1e-6);
                CHECK(std::abs(back.frames[i].entries[j].pos.y - frames[i].entries[j].pos.y) <= 1e-6);
                CHECK(back.frames[i].entries[j].speed_mps == frames[i].entries[j].speed_mps);
            }
        }
    }
}

TEST_CASE("JSON-lines output starts with a header record") {
    FrameExportOptions o;
    o.format = FrameFormat::JsonLines;
    const auto text = export_motion_frames(ten_frames(), CourtSpec{}, o);
    CHECK(std::count(text.begin(), text.end(), '\n') == 11);
    CHECK(nlohmann::json::parse(text.substr(0, text.find('\n')))["type"] == "header");
    o.from_ms = 99999;
    const auto empty = import_motion_frames(export_motion_frames(ten_frames(), CourtSpec{}, o));
    CHECK(empty.frames.empty());
    CHECK_THROWS_AS(import_motion_frames("{not json"), Error);
}

TEST_CASE("phases are copied onto on-court players only") {
    auto frames = ten_frames();
    SpacingFrame s;
    s.t_ms = 1200;
    s.players = {{1, {}}, {3, {}}};
    s.phase = Phase::Defense;
    std::vector<SpacingFrame> spacing = {s};
    annotate_phases(frames, spacing);
    CHECK(frames[1].find(1)->phase == Phase::Defense);
    CHECK_FALSE(frames[1].find(2)->phase.has_value());
    CHECK_FALSE(frames[0].find(1)->phase.has_value());
}
