#include <doctest.h>

#include <functional>
#include <random>

#include "courtlab/error.hpp"
#include "courtlab/phase.hpp"

using namespace courtlab;

namespace {

// Frames every 200 ms over [0, duration); `width(player, t)` places each
// player, with a negative value meaning seated on the bench.
std::vector<MotionFrame> scripted(std::int64_t duration_ms, const std::vector<int>& roster,
                                  const std::function<double(int, std::int64_t)>& width) {
    std::vector<MotionFrame> frames;
    for (std::int64_t t = 0; t < duration_ms; t += 200) {
        MotionFrame f{t, {}};
        for (int p : roster) f.entries.push_back({p, {10.0 + p, width(p, t)}, std::nullopt, std::nullopt});
        frames.push_back(std::move(f));
    }
    return frames;
}

std::vector<OnCourtInterval> of_player(const std::vector<OnCourtInterval>& all, int p) {
    std::vector<OnCourtInterval> out;
    for (const auto& iv : all)
        if (iv.player_index == p) out.push_back(iv);
    return out;
}

SpacingFrame flat_frame(std::int64_t t, double dist, double area) {
    SpacingFrame f;
    f.t_ms = t;
    f.mean_pairwise_distance_m = dist;
    f.voronoi_area_sum_m2 = area;
    return f;
}

constexpr std::int64_t kMin = 60000;

}  // namespace

TEST_CASE("phase from the centroid side") {
    CHECK(classify_phase({21, 7}, AttackDirection::PositiveLength) == Phase::Attack);
    CHECK(classify_phase({5, 7}, AttackDirection::PositiveLength) == Phase::Defense);
    CHECK(classify_phase({14, 7.5}, AttackDirection::PositiveLength) == Phase::Defense);
    CHECK(classify_phase({14, 7.5}, AttackDirection::NegativeLength) == Phase::Defense);
    CHECK(classify_phase({5, 7}, AttackDirection::NegativeLength) == Phase::Attack);
}

TEST_CASE("reflecting through midcourt and flipping direction keeps labels") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ux(0, 28), uy(0, 15);
    for (int i = 0; i < 5000; ++i) {
        const Point2 c{ux(rng), uy(rng)};
        const Point2 mirrored{28.0 - c.x, c.y};
        for (auto d : {AttackDirection::PositiveLength, AttackDirection::NegativeLength})
            CHECK(classify_phase(c, d) == classify_phase(mirrored, flipped(d)));
    }
}

TEST_CASE("attack direction flips at halftime") {
    AttackSchedule s{AttackDirection::PositiveLength, SessionWindows{0, 100, 200, 300}};
    CHECK(s.direction_at(50) == AttackDirection::PositiveLength);
    CHECK(s.direction_at(250) == AttackDirection::NegativeLength);
    CHECK_THROWS_AS(s.direction_at(150), Error);
    AttackSchedule fixed{AttackDirection::NegativeLength, std::nullopt};
    CHECK(fixed.direction_at(12345) == AttackDirection::NegativeLength);
}

TEST_CASE("on-court detection for constant positions") {
    std::vector<int> roster = {1, 2};
    auto frames = scripted(10 * kMin, roster, [](int p, std::int64_t) { return p == 1 ? -1.0 : 7.0; });
    auto iv = detect_on_court(frames, roster);
    auto p1 = of_player(iv, 1), p2 = of_player(iv, 2);
    REQUIRE(p1.size() == 1);
    CHECK_FALSE(p1[0].on_court);
    CHECK(p1[0].start_ms == 0);
    CHECK(p1[0].end_ms == 10 * kMin);
    REQUIRE(p2.size() == 1);
    CHECK(p2[0].on_court);
}

TEST_CASE("a bench stint is located within half a window") {
    std::vector<int> roster = {1};
    auto frames = scripted(15 * kMin, roster, [](int, std::int64_t t) { return t < 10 * kMin ? 7.0 : -1.0; });
    auto iv = detect_on_court(frames, roster);
    REQUIRE(iv.size() == 2);
    CHECK(iv[0].on_court);
    CHECK_FALSE(iv[1].on_court);
    CHECK(std::llabs(iv[1].start_ms - 10 * kMin) <= 15000);
}

TEST_CASE("absence counts as off court") {
    std::vector<int> roster = {1};
    auto frames = scripted(4 * kMin, roster, [](int, std::int64_t) { return 7.0; });
    for (auto& f : frames)
        if (f.t_ms >= kMin && f.t_ms < 3 * kMin) f.entries.clear();
    auto iv = detect_on_court(frames, roster);
    REQUIRE(iv.size() == 3);
    CHECK_FALSE(iv[1].on_court);
    CHECK(std::llabs(iv[1].start_ms - kMin) <= 15000);
    CHECK(std::llabs(iv[1].end_ms - 3 * kMin) <= 15000);
}

TEST_CASE("one benched player yields a single segment") {
    std::vector<int> roster = {1, 2, 3, 4, 5, 6};
    auto frames = scripted(5 * kMin, roster, [](int p, std::int64_t) { return p == 1 ? -1.0 : 7.0; });
    auto tl = quintet_segments(detect_on_court(frames, roster), roster);
    REQUIRE(tl.segments.size() == 1);
    CHECK(tl.gaps.empty());
    CHECK(tl.segments[0].excluded == 1);
    CHECK(tl.segments[0].start_ms == 0);
    CHECK(tl.segments[0].end_ms == 5 * kMin);
    CHECK(tl.segments[0].on_court == std::array<int, 5>{2, 3, 4, 5, 6});
}

TEST_CASE("benching 1 then 2 gives two segments at the scheduled switch") {
    std::vector<int> roster = {1, 2, 3, 4, 5, 6};
    auto frames = scripted(10 * kMin, roster, [](int p, std::int64_t t) {
        const int benched = t < 4 * kMin ? 1 : 2;
        return p == benched ? -1.0 : 7.0;
    });
    auto tl = quintet_segments(detect_on_court(frames, roster), roster);
    REQUIRE(tl.segments.size() == 2);
    CHECK(tl.segments[0].excluded == 1);
    CHECK(tl.segments[1].excluded == 2);
    CHECK(std::llabs(tl.segments[1].start_ms - 4 * kMin) <= 15000);
}

TEST_CASE("two players sitting leaves an invalid gap, and everything tiles the session") {
    std::vector<int> roster = {1, 2, 3, 4, 5, 6};
    auto frames = scripted(9 * kMin, roster, [](int p, std::int64_t t) {
        if (p == 1) return -1.0;
        if (p == 2 && t >= 3 * kMin && t < 6 * kMin) return -1.0;
        return 7.0;
    });
    auto tl = quintet_segments(detect_on_court(frames, roster), roster);
    REQUIRE(tl.segments.size() == 2);
    REQUIRE(tl.gaps.size() == 1);
    CHECK(tl.gaps[0].on_court.size() == 4);

    struct Piece {
        std::int64_t a, b;
    };
    std::vector<Piece> pieces;
    for (const auto& s : tl.segments) pieces.push_back({s.start_ms, s.end_ms});
    for (const auto& g : tl.gaps) pieces.push_back({g.start_ms, g.end_ms});
    std::sort(pieces.begin(), pieces.end(), [](auto& x, auto& y) { return x.a < y.a; });
    CHECK(pieces.front().a == 0);
    CHECK(pieces.back().b == 9 * kMin);
    for (std::size_t i = 1; i < pieces.size(); ++i) CHECK(pieces[i].a == pieces[i - 1].b);
    CHECK(tl.segment_at(4 * kMin) == nullptr);
    REQUIRE(tl.segment_at(kMin) != nullptr);
    CHECK(tl.segment_at(kMin)->excluded == 1);
}

TEST_CASE("quintet segmentation requires six players") {
    std::vector<int> roster = {1, 2, 3, 4, 5};
    CHECK_THROWS_AS(quintet_segments(std::vector<OnCourtInterval>{}, roster), Error);
}

TEST_CASE("grouping identical frames gives their constants") {
    std::vector<SpacingFrame> frames;
    std::vector<Phase> labels;
    for (int i = 0; i < 20; ++i) frames.push_back(flat_frame(i * 200, 6.0, 40.0)), labels.push_back(Phase::Attack);
    auto rows = grouped_spacing(frames, labels, {}, GroupBy::Phase);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].phase == Phase::Attack);
    CHECK(rows[0].mean_voronoi_area_m2 == 40.0);
    CHECK(rows[0].mean_avg_distance_m == 6.0);
    CHECK(rows[0].frame_count == 20);
}

TEST_CASE("two-frame group averages by hand") {
    std::vector<SpacingFrame> frames = {flat_frame(0, 4.0, 30.0), flat_frame(200, 8.0, 50.0),
                                        flat_frame(400, 1.0, 10.0)};
    std::vector<Phase> labels = {Phase::Defense, Phase::Defense, Phase::Attack};
    auto rows = grouped_spacing(frames, labels, {}, GroupBy::Phase);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].phase == Phase::Defense);
    CHECK(rows[0].mean_avg_distance_m == 6.0);
    CHECK(rows[0].mean_voronoi_area_m2 == 40.0);
    CHECK(rows[1].phase == Phase::Attack);
    CHECK(rows[0].frame_count + rows[1].frame_count == 3);
    std::vector<Phase> short_labels = {Phase::Attack};
    CHECK_THROWS_AS(grouped_spacing(frames, short_labels, {}, GroupBy::Phase), Error);
}

TEST_CASE("grouping by quintet and phase drops frames outside segments") {
    std::vector<QuintetSegment> segs = {{0, 1000, {2, 3, 4, 5, 6}, 1}, {2000, 3000, {1, 3, 4, 5, 6}, 2}};
    std::vector<SpacingFrame> frames;
    std::vector<Phase> labels;
    for (std::int64_t t = 0; t < 3000; t += 200) {
        frames.push_back(flat_frame(t, t < 1000 ? 5.0 : 7.0, 420.0));
        labels.push_back((t / 200) % 2 ? Phase::Attack : Phase::Defense);
    }
    auto rows = grouped_spacing(frames, labels, segs, GroupBy::QuintetPhase);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].key() == "quintet-1/attack");
    CHECK(rows[1].key() == "quintet-1/defense");
    CHECK(rows[2].excluded_player == 2);
    std::size_t total = 0;
    for (const auto& r : rows) total += r.frame_count;
    CHECK(total == 10);  // 5 frames in each segment, the 1000..2000 gap dropped
    auto by_q = grouped_spacing(frames, labels, segs, GroupBy::Quintet);
    REQUIRE(by_q.size() == 2);
    CHECK(by_q[0].mean_avg_distance_m == 5.0);
    CHECK(by_q[1].mean_avg_distance_m == 7.0);
    CHECK(grouped_to_csv(by_q).find("quintet-2,2,,420,7,5") != std::string::npos);
}
