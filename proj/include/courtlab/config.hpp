#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "courtlab/court.hpp"
#include "courtlab/pbp.hpp"
#include "courtlab/spacing.hpp"
#include "courtlab/synth.hpp"
#include "courtlab/tracking.hpp"

namespace courtlab {

/// Everything tunable about one analysis run, loadable from one JSON
/// document.
struct Config {
    CourtSpec court;
    GridSpec grid;
    std::optional<SessionWindows> windows;
    ColumnRoleMap roles;
    ActionLexicon lexicon;
    SynthSpec synth;

    double rate_hz = 5.0;
    std::int64_t max_gap_ms = 1000;
    double speed_cap_mps = 12.0;
    ClipPreset clip = ClipPreset::FullCourt;
    double bbox_padding_m = 1.0;
    std::int64_t on_court_window_ms = 30000;
    std::int64_t clock_offset_min = 0;
    int kde_n = 100;
    bool exclude_bench = false;
    std::string cors_origin = "*";

    void validate() const;
};

Config config_from_json(const nlohmann::json& doc, Config base = {});
Config load_config(const std::string& path, Config base = {});
nlohmann::json config_to_json(const Config& config);

}  // namespace courtlab
