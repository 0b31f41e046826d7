#include "courtlab/config.hpp"

#include <fstream>

#include "courtlab/error.hpp"

namespace courtlab {

using nlohmann::json;

void Config::validate() const {
    court.validate();
    grid.validate();
    roles.validate();
    if (windows) windows->validate();
    synth.validate();
    if (!(rate_hz > 0.0)) throw config_error("rate_hz", "rate_hz must be positive");
    if (max_gap_ms < 0) throw config_error("max_gap_ms", "max_gap_ms must be non-negative");
    if (!(speed_cap_mps > 0.0)) throw config_error("speed_cap_mps", "speed cap must be positive");
    if (on_court_window_ms <= 0) throw config_error("on_court_window_ms", "window must be positive");
    if (kde_n < 2) throw config_error("kde_n", "kde_n must be at least 2");
}

namespace {

template <typename T>
void read(const json& obj, const char* key, T& out) {
    if (obj.contains(key)) out = obj.at(key).get<T>();
}

SessionWindows windows_from_json(const json& j) {
    SessionWindows w;
    if (j.is_array()) {
        if (j.size() != 4) throw config_error("session_windows", "expected four timestamps");
        w = {j[0].get<std::int64_t>(), j[1].get<std::int64_t>(), j[2].get<std::int64_t>(), j[3].get<std::int64_t>()};
    } else if (j.is_string()) {
        w = SessionWindows::parse(j.get<std::string>());
    } else {
        w.match_start_ms = j.at("match_start_ms").get<std::int64_t>();
        w.halftime_start_ms = j.at("halftime_start_ms").get<std::int64_t>();
        w.halftime_end_ms = j.at("halftime_end_ms").get<std::int64_t>();
        w.match_end_ms = j.at("match_end_ms").get<std::int64_t>();
    }
    w.validate();
    return w;
}

void read_synth(const json& j, SynthSpec& s) {
    read(j, "seed", s.seed);
    read(j, "n_players", s.n_players);
    read(j, "duration_ms", s.duration_ms);
    read(j, "halftime_break_ms", s.halftime_break_ms);
    read(j, "pre_match_ms", s.pre_match_ms);
    read(j, "post_match_ms", s.post_match_ms);
    read(j, "base_timestamp_ms", s.base_timestamp_ms);
    read(j, "wall_clock_start", s.wall_clock_start);
    read(j, "phase_period_ms", s.phase_period_ms);
    read(j, "sigma_attack_m", s.sigma_attack_m);
    read(j, "sigma_defense_m", s.sigma_defense_m);
    read(j, "sample_interval_ms", s.sample_interval_ms);
    read(j, "sample_jitter_ms", s.sample_jitter_ms);
    if (j.contains("attack_direction_first_half")) {
        s.attack_direction_first_half = parse_attack_direction(j["attack_direction_first_half"].get<std::string>());
    }
    if (j.contains("rotation")) {
        s.rotation.clear();
        for (const auto& r : j["rotation"]) s.rotation.push_back({r.at("start_ms").get<std::int64_t>(), r.at("player").get<int>()});
    }
}

}  // namespace

Config config_from_json(const json& doc, Config c) {
    try {
        if (doc.contains("court")) {
            const auto& j = doc["court"];
            if (j.contains("preset")) {
                const auto preset = court_preset(j["preset"].get<std::string>());
                c.court = preset.court;
                c.grid = preset.grid;
            }
            read(j, "length_m", c.court.length_m);
            read(j, "width_m", c.court.width_m);
            if (j.contains("baskets")) {
                for (std::size_t i = 0; i < 2; ++i) {
                    c.court.baskets[i] = {j["baskets"].at(i).at(0).get<double>(), j["baskets"].at(i).at(1).get<double>()};
                }
            }
            if (j.contains("attack_direction_first_half")) {
                c.court.attack_direction_first_half =
                    parse_attack_direction(j["attack_direction_first_half"].get<std::string>());
            }
        }
        if (doc.contains("grid")) {
            const auto& j = doc["grid"];
            if (j.contains("origin")) c.grid.origin = {j["origin"].at(0).get<double>(), j["origin"].at(1).get<double>()};
            read(j, "cell_size_m", c.grid.cell_size_m);
            read(j, "n_rows", c.grid.n_rows);
            read(j, "n_cols", c.grid.n_cols);
        }
        if (doc.contains("session_windows") && !doc["session_windows"].is_null()) {
            c.windows = windows_from_json(doc["session_windows"]);
        }
        if (doc.contains("column_roles")) {
            const auto& j = doc["column_roles"];
            if (j.is_string()) {
                c.roles = ColumnRoleMap::profile(j.get<std::string>());
            } else {
                read(j, "length", c.roles.length_axis);
                read(j, "width", c.roles.width_axis);
                read(j, "height", c.roles.height_axis);
            }
        }
        if (doc.contains("action_lexicon")) {
            std::map<std::string, ActionClass> entries;
            for (const auto& [k, v] : doc["action_lexicon"].items()) entries[k] = parse_action_class(v.get<std::string>());
            c.lexicon = ActionLexicon(std::move(entries));
        }
        if (doc.contains("synth")) read_synth(doc["synth"], c.synth);
        read(doc, "rate_hz", c.rate_hz);
        read(doc, "max_gap_ms", c.max_gap_ms);
        read(doc, "speed_cap_mps", c.speed_cap_mps);
        if (doc.contains("clip")) c.clip = parse_clip_preset(doc["clip"].get<std::string>());
        read(doc, "bbox_padding_m", c.bbox_padding_m);
        read(doc, "on_court_window_ms", c.on_court_window_ms);
        read(doc, "clock_offset_min", c.clock_offset_min);
        read(doc, "kde_n", c.kde_n);
        read(doc, "exclude_bench", c.exclude_bench);
        read(doc, "cors_origin", c.cors_origin);
    } catch (const json::exception& e) {
        throw config_error("config", std::string("invalid configuration: ") + e.what());
    }
    c.validate();
    return c;
}

Config load_config(const std::string& path, Config base) {
    std::ifstream in(path);
    if (!in) throw config_error("config", "cannot open configuration '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw config_error("config", "configuration '" + path + "' is not valid JSON: " + e.what());
    }
    return config_from_json(doc, std::move(base));
}

json config_to_json(const Config& c) {
    json doc = {
        {"court",
         {{"length_m", c.court.length_m},
          {"width_m", c.court.width_m},
          {"baskets", {{c.court.baskets[0].x, c.court.baskets[0].y}, {c.court.baskets[1].x, c.court.baskets[1].y}}},
          {"attack_direction_first_half", to_string(c.court.attack_direction_first_half)}}},
        {"grid",
         {{"origin", {c.grid.origin.x, c.grid.origin.y}},
          {"cell_size_m", c.grid.cell_size_m},
          {"n_rows", c.grid.n_rows},
          {"n_cols", c.grid.n_cols}}},
        {"column_roles", {{"length", c.roles.length_axis}, {"width", c.roles.width_axis}, {"height", c.roles.height_axis}}},
        {"rate_hz", c.rate_hz},
        {"max_gap_ms", c.max_gap_ms},
        {"speed_cap_mps", c.speed_cap_mps},
        {"clip", to_string(c.clip)},
        {"bbox_padding_m", c.bbox_padding_m},
        {"on_court_window_ms", c.on_court_window_ms},
        {"clock_offset_min", c.clock_offset_min},
        {"kde_n", c.kde_n},
        {"exclude_bench", c.exclude_bench},
        {"cors_origin", c.cors_origin}};
    if (c.windows) {
        doc["session_windows"] = {{"match_start_ms", c.windows->match_start_ms},
                                  {"halftime_start_ms", c.windows->halftime_start_ms},
                                  {"halftime_end_ms", c.windows->halftime_end_ms},
                                  {"match_end_ms", c.windows->match_end_ms}};
    }
    json lex = json::object();
    for (const auto& [k, v] : c.lexicon.entries()) lex[k] = to_string(v);
    doc["action_lexicon"] = lex;
    return doc;
}

}  // namespace courtlab
