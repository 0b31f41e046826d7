#include <doctest.h>

#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "courtlab/analysis.hpp"
#include "courtlab/service.hpp"
#include "courtlab/synth.hpp"

using namespace courtlab;
using nlohmann::json;

namespace {

std::shared_ptr<const Analysis> small_analysis() {
    static const auto shared = [] {
        SynthSpec s;
        s.duration_ms = 6 * 60000;
        s.halftime_break_ms = 60000;
        s.rotation = {{0, 1}, {4 * 60000, 2}};
        auto m = generate_synthetic(s);
        Config c;
        c.windows = m.windows;
        c.cors_origin = "http://localhost:5173";
        return std::make_shared<const Analysis>(analyze(c, m.samples, m.events));
    }();
    return shared;
}

}  // namespace

TEST_CASE("court endpoint reports the configured geometry") {
    Service svc(small_analysis());
    auto r = svc.handle("/court", {});
    CHECK(r.status == 200);
    auto doc = json::parse(r.body);
    CHECK(doc["length_m"] == 28);
    CHECK(doc["width_m"] == 15);
    CHECK(doc["grid"]["n_rows"] == 18);
}

TEST_CASE("frames over ten seconds at 5 Hz") {
    auto a = small_analysis();
    Service svc(a);
    const auto from = a->frames[100].t_ms;
    auto r = svc.handle("/frames", {{"from_ms", std::to_string(from)}, {"to_ms", std::to_string(from + 10000)}});
    REQUIRE(r.status == 200);
    CHECK(json::parse(r.body)["frames"].size() == 50);
    auto strided = svc.handle(
        "/frames", {{"from_ms", std::to_string(from)}, {"to_ms", std::to_string(from + 10000)}, {"stride", "5"}});
    CHECK(json::parse(strided.body)["frames"].size() == 10);
    auto slower = svc.handle("/frames", {{"from_ms", std::to_string(from)}, {"to_ms", std::to_string(from + 10000)},
                                         {"hz", "2"}});
    REQUIRE(slower.status == 200);
    CHECK(json::parse(slower.body)["frames"].size() == 20);
}

TEST_CASE("malformed and out-of-range queries") {
    auto a = small_analysis();
    Service svc(a);
    CHECK(svc.handle("/frames", {{"from_ms", "20"}, {"to_ms", "10"}}).status == 400);
    CHECK(svc.handle("/frames", {{"from_ms", "abc"}}).status == 400);
    CHECK(svc.handle("/frames", {{"stride", "0"}}).status == 400);
    CHECK(svc.handle("/frames", {{"hz", "-1"}}).status == 400);
    CHECK(svc.handle("/frames", {{"from_ms", "0"}, {"to_ms", "10"}}).status == 416);
    CHECK(svc.handle("/frames", {{"from_ms", std::to_string(a->session_end_ms() + 1)}}).status == 416);
    CHECK(svc.handle("/heatmap/9", {}).status == 404);
    CHECK(svc.handle("/heatmap/x", {}).status == 400);
    CHECK(svc.handle("/heatmap/1", {{"mode", "fancy"}}).status == 400);
    CHECK(svc.handle("/nowhere", {}).status == 404);
    auto err = json::parse(svc.handle("/frames", {{"from_ms", "abc"}}).body);
    CHECK(err["error"] == "bad_request");
}

TEST_CASE("identical queries give identical bodies") {
    Service svc(small_analysis());
    for (const char* path : {"/players", "/spacing", "/quintets", "/buckets", "/heatmap/3"}) {
        auto a = svc.handle(path, {});
        auto b = svc.handle(path, {});
        CHECK(a.status == 200);
        CHECK(a.body == b.body);
    }
    auto kde = json::parse(svc.handle("/heatmap/3", {{"mode", "kde"}}).body);
    CHECK(kde["values"].size() == 100 * 100);
    CHECK(kde["contour_levels"].size() == 11);
    auto players = json::parse(svc.handle("/players", {}).body);
    CHECK(players.size() == 6);
    CHECK(players[0]["tag"] == "84eb18675b32");
}

TEST_CASE("HTTP round trip returns the exported bytes") {
    auto a = small_analysis();
    Service svc(a);
    const int port = svc.bind_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread server([&] { svc.listen_after_bind(); });

    httplib::Client client("127.0.0.1", port);
    const auto from = a->frames[50].t_ms;
    FrameExportOptions o;
    o.from_ms = from;
    o.to_ms = from + 10000;
    const std::string direct = frame_payload(*a, o);
    auto res = client.Get("/frames?from_ms=" + std::to_string(from) + "&to_ms=" + std::to_string(from + 10000));
    REQUIRE(res);
    CHECK(res->status == 200);
    CHECK(res->body == direct);
    CHECK(res->get_header_value("Access-Control-Allow-Origin") == "http://localhost:5173");
    CHECK(res->get_header_value("Content-Type") == "application/json");

    auto bad = client.Get("/frames?from_ms=5&to_ms=1");
    REQUIRE(bad);
    CHECK(bad->status == 400);
    auto pre = client.Options("/frames");
    REQUIRE(pre);
    CHECK(pre->status == 204);

    svc.stop();
    server.join();
}
