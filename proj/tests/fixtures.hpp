#pragma once

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "courtlab/tracking.hpp"

namespace fixtures {

inline courtlab::TrackingSample sample(int player, std::int64_t t_ms, double x, double y, double z = 0.0) {
    static std::int64_t next_id = 1;
    courtlab::TrackingSample s;
    s.record_id = next_id++;
    s.wall_clock = "22/03/2016 19:00";
    s.player_tag = "tag" + std::to_string(player);
    s.player_index = player;
    s.timestamp_ms = t_ms;
    s.raw_pos = {x, y, z};
    s.filt_pos = {x, y, z};
    s.time_rank = s.record_id;
    return s;
}

inline std::string tracking_header() {
    std::string h;
    for (const auto& c : courtlab::tracking_columns()) h += (h.empty() ? "" : "\t") + c;
    return h + "\n";
}

// One TSV row in the default column order; position values are klm_x/y/z.
inline std::string tracking_row(int id, int player, std::int64_t t, double x, double y, double z,
                                const std::string& speed = "NA") {
    std::ostringstream os;
    os << id << "\t22/03/2016 19:00\ttag" << player << "\t22/03/2016 19:00\t" << x << '\t' << y << '\t' << z << '\t'
       << x << '\t' << y << '\t' << z << "\t0\t0\t0\t" << player << '\t' << id << '\t' << speed << '\t' << t << '\n';
    return os.str();
}

inline std::vector<courtlab::Point2> random_points(std::mt19937_64& rng, int n, double x0, double x1, double y0,
                                                   double y1) {
    std::uniform_real_distribution<double> ux(x0, x1), uy(y0, y1);
    std::vector<courtlab::Point2> out;
    for (int i = 0; i < n; ++i) {
        const double x = ux(rng);
        out.push_back({x, uy(rng)});
    }
    return out;
}

}  // namespace fixtures
