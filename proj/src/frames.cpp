#include "courtlab/frames.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "courtlab/error.hpp"

namespace courtlab {

namespace {

using nlohmann::json;

json frame_json(const MotionFrame& f) {
    json entries = json::array();
    for (const auto& e : f.entries) {
        entries.push_back({{"player", e.player_index},
                           {"x", e.pos.x},
                           {"y", e.pos.y},
                           {"speed", e.speed_mps ? json(*e.speed_mps) : json(nullptr)},
                           {"phase", e.phase ? json(to_string(*e.phase)) : json(nullptr)}});
    }
    return {{"t_ms", f.t_ms}, {"entries", entries}};
}

MotionFrame frame_from_json(const json& j) {
    MotionFrame f;
    f.t_ms = j.at("t_ms").get<std::int64_t>();
    for (const auto& e : j.at("entries")) {
        FrameEntry entry;
        entry.player_index = e.at("player").get<int>();
        entry.pos = {e.at("x").get<double>(), e.at("y").get<double>()};
        if (e.contains("speed") && !e["speed"].is_null()) entry.speed_mps = e["speed"].get<double>();
        if (e.contains("phase") && !e["phase"].is_null()) entry.phase = parse_phase(e["phase"].get<std::string>());
        f.entries.push_back(entry);
    }
    return f;
}

}  // namespace

std::string export_motion_frames(std::span<const MotionFrame> frames, const CourtSpec& court,
                                 const FrameExportOptions& options) {
    if (options.stride < 1) throw config_error("argument", "stride must be at least 1");

    std::vector<const MotionFrame*> picked;
    std::size_t seen = 0;
    for (const auto& f : frames) {
        if (options.from_ms && f.t_ms < *options.from_ms) continue;
        if (options.to_ms && f.t_ms >= *options.to_ms) continue;
        if (seen++ % static_cast<std::size_t>(options.stride) == 0) picked.push_back(&f);
    }

    json header = {{"type", "header"},
                   {"court", {{"length_m", court.length_m}, {"width_m", court.width_m}}},
                   {"canvas", {{"width", 1200}, {"height", 600}}},
                   {"aspect", court.length_m / court.width_m},
                   {"rate_hz", options.rate_hz},
                   {"stride", options.stride},
                   {"frame_count", picked.size()}};
    if (options.from_ms) header["from_ms"] = *options.from_ms;
    if (options.to_ms) header["to_ms"] = *options.to_ms;

    if (options.format == FrameFormat::JsonLines) {
        std::string out = header.dump() + '\n';
        for (const MotionFrame* f : picked) out += frame_json(*f).dump() + '\n';
        return out;
    }
    json arr = json::array();
    for (const MotionFrame* f : picked) arr.push_back(frame_json(*f));
    return json{{"header", header}, {"frames", arr}}.dump();
}

FrameStream import_motion_frames(const std::string& text) {
    FrameStream out;
    auto read_header = [&](const json& h) {
        out.court.length_m = h.at("court").at("length_m").get<double>();
        out.court.width_m = h.at("court").at("width_m").get<double>();
        out.rate_hz = h.at("rate_hz").get<double>();
    };
    try {
        const std::string first_line = text.substr(0, text.find('\n'));
        const json first = json::parse(first_line);
        if (!(first.is_object() && first.value("type", "") == "header")) {
            read_header(first.at("header"));
            for (const auto& f : first.at("frames")) out.frames.push_back(frame_from_json(f));
            return out;
        }
        std::istringstream in(text);
        std::string line;
        bool have_header = false;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const json j = json::parse(line);
            if (!have_header) {
                read_header(j);
                have_header = true;
            } else {
                out.frames.push_back(frame_from_json(j));
            }
        }
    } catch (const json::exception& e) {
        throw input_error("frames", std::string("malformed frame stream: ") + e.what());
    }
    return out;
}

void annotate_phases(std::vector<MotionFrame>& frames, std::span<const SpacingFrame> spacing) {
    for (auto& f : frames) {
        auto it = std::lower_bound(spacing.begin(), spacing.end(), f.t_ms,
                                   [](const SpacingFrame& s, std::int64_t t) { return s.t_ms < t; });
        if (it == spacing.end() || it->t_ms != f.t_ms || !it->phase) continue;
        for (auto& e : f.entries) {
            const bool on = std::any_of(it->players.begin(), it->players.end(),
                                        [&](const Site& s) { return s.player_index == e.player_index; });
            if (on) e.phase = it->phase;
        }
    }
}

}  // namespace courtlab
