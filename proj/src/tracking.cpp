#include "courtlab/tracking.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <future>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "courtlab/error.hpp"
#include "courtlab/stats.hpp"

namespace courtlab {

namespace {

const std::vector<std::string> kColumns = {
    "id",    "insert_date", "tagid", "position_ts", "smt_x",     "smt_y",         "smt_z",
    "klm_x", "klm_y",       "klm_z", "klv_x",       "klv_y",     "klv_z",         "tagid_new",
    "time",  "speed.mtr.sec", "timestamp_ms_ok"};

char axis_suffix(const std::string& name) {
    std::string s = name;
    if (s.rfind("klm_", 0) == 0) s = s.substr(4);
    if (s.size() == 1 && (s[0] == 'x' || s[0] == 'y' || s[0] == 'z')) return s[0];
    throw config_error("column_roles", "'" + name + "' is not one of klm_x, klm_y, klm_z");
}

struct ResolvedRoles {
    std::array<char, 3> axis;  // source axis letter for length, width, height

    explicit ResolvedRoles(const ColumnRoleMap& roles)
        : axis{axis_suffix(roles.length_axis), axis_suffix(roles.width_axis),
               axis_suffix(roles.height_axis)} {}

    std::string column(const std::string& prefix, int role) const {
        return prefix + "_" + std::string(1, axis[static_cast<std::size_t>(role)]);
    }
};

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n\"");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n\"");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(delim, start);
        out.push_back(trim(std::string_view(line).substr(start, pos - start)));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

std::optional<double> to_double(const std::string& text) {
    if (text.empty()) return std::nullopt;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (*first == '+') ++first;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::optional<std::int64_t> to_int(const std::string& text) {
    auto v = to_double(text);
    if (!v || std::floor(*v) != *v || std::abs(*v) > 9.0e15) return std::nullopt;
    return static_cast<std::int64_t>(*v);
}

bool is_missing(const std::string& text) { return text.empty() || text == "NA" || text == "null"; }

/// Field access by column name for one input row.
using FieldLookup = std::unordered_map<std::string, std::string>;

TrackingSample build_sample(const FieldLookup& row, const ResolvedRoles& roles) {
    auto field = [&](const std::string& name) -> const std::string& { return row.at(name); };
    auto integer = [&](const std::string& name) {
        auto v = to_int(field(name));
        if (!v) throw input_error("parse", "column '" + name + "': not an integer: '" + field(name) + "'");
        return *v;
    };
    auto real = [&](const std::string& name) {
        auto v = to_double(field(name));
        if (!v) throw input_error("parse", "column '" + name + "': not a number: '" + field(name) + "'");
        return *v;
    };
    auto vec = [&](const std::string& prefix) {
        return Vec3{real(roles.column(prefix, 0)), real(roles.column(prefix, 1)), real(roles.column(prefix, 2))};
    };

    TrackingSample s;
    s.record_id = integer("id");
    s.wall_clock = field("position_ts");
    s.player_tag = field("tagid");
    const auto index = integer("tagid_new");
    if (index < 1 || index > 64) throw input_error("parse", "column 'tagid_new': player index out of range");
    s.player_index = static_cast<int>(index);
    s.timestamp_ms = integer("timestamp_ms_ok");
    if (s.timestamp_ms < 0) throw input_error("parse", "column 'timestamp_ms_ok': negative timestamp");
    s.raw_pos = vec("smt");
    s.filt_pos = vec("klm");
    s.filt_vel = vec("klv");
    s.time_rank = integer("time");
    const std::string& speed = field("speed.mtr.sec");
    if (!is_missing(speed)) {
        auto v = to_double(speed);
        if (!v || *v < 0.0) throw input_error("parse", "column 'speed.mtr.sec': invalid speed '" + speed + "'");
        s.speed_mps = *v;
    }
    return s;
}

void check_unique_keys(const std::vector<TrackingSample>& samples) {
    std::set<std::pair<int, std::int64_t>> seen;
    for (const auto& s : samples) {
        if (!seen.emplace(s.player_index, s.time_rank).second) {
            throw input_error("duplicate_key", "duplicate (player_index, time_rank) = (" +
                                                   std::to_string(s.player_index) + ", " +
                                                   std::to_string(s.time_rank) + ")");
        }
    }
}

}  // namespace

const std::vector<std::string>& tracking_columns() { return kColumns; }

void ColumnRoleMap::validate() const {
    ResolvedRoles r(*this);
    if (r.axis[0] == r.axis[1] || r.axis[0] == r.axis[2] || r.axis[1] == r.axis[2]) {
        throw config_error("column_roles", "length, width and height must use distinct axes");
    }
}

ColumnRoleMap ColumnRoleMap::profile(const std::string& name) {
    if (name == "xyz" || name == "default") return {};
    if (name == "yzx") return {"klm_y", "klm_z", "klm_x"};
    throw config_error("column_roles", "unknown column-role profile '" + name + "'");
}

void SessionWindows::validate() const {
    if (!(match_start_ms < halftime_start_ms && halftime_start_ms < halftime_end_ms &&
          halftime_end_ms < match_end_ms)) {
        throw config_error("session_windows", "session windows must be strictly increasing");
    }
}

bool SessionWindows::in_play(std::int64_t t) const { return half_of(t).has_value(); }

std::optional<int> SessionWindows::half_of(std::int64_t t) const {
    if (t >= match_start_ms && t <= halftime_start_ms) return 1;
    if (t >= halftime_end_ms && t <= match_end_ms) return 2;
    return std::nullopt;
}

SessionWindows SessionWindows::parse(const std::string& text) {
    auto parts = split(text, ',');
    if (parts.size() != 4) throw config_error("session_windows", "expected four comma-separated integers");
    std::array<std::int64_t, 4> v{};
    for (std::size_t i = 0; i < 4; ++i) {
        auto n = to_int(parts[i]);
        if (!n) throw config_error("session_windows", "not an integer: '" + parts[i] + "'");
        v[i] = *n;
    }
    SessionWindows w{v[0], v[1], v[2], v[3]};
    w.validate();
    return w;
}

TrackingTable parse_tracking(std::istream& in, const ColumnRoleMap& roles) {
    roles.validate();
    const ResolvedRoles resolved(roles);
    TrackingTable table;

    std::string line;
    if (!std::getline(in, line)) throw input_error("schema", "tracking input has no header row");
    const auto header = split(line, '\t');

    std::unordered_map<std::string, std::size_t> position;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (std::find(kColumns.begin(), kColumns.end(), header[i]) == kColumns.end()) {
            table.warnings.push_back("ignoring unknown column '" + header[i] + "'");
            continue;
        }
        position.emplace(header[i], i);
    }
    for (const auto& c : kColumns) {
        if (!position.contains(c)) throw input_error("schema", "missing required column '" + c + "'");
    }

    std::size_t line_no = 1;
    FieldLookup row;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split(line, '\t');
        if (fields.size() < header.size()) {
            table.rejected.push_back({line_no, "expected " + std::to_string(header.size()) + " fields, got " +
                                                   std::to_string(fields.size())});
            continue;
        }
        for (const auto& [name, idx] : position) row[name] = fields[idx];
        try {
            table.samples.push_back(build_sample(row, resolved));
        } catch (const Error& e) {
            table.rejected.push_back({line_no, e.what()});
        }
    }
    check_unique_keys(table.samples);
    return table;
}

TrackingTable parse_tracking_jsonl(std::istream& in, const ColumnRoleMap& roles) {
    roles.validate();
    const ResolvedRoles resolved(roles);
    TrackingTable table;

    std::string line;
    std::size_t line_no = 0;
    FieldLookup row;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            table.rejected.push_back({line_no, std::string("invalid JSON: ") + e.what()});
            continue;
        }
        if (!obj.is_object()) {
            table.rejected.push_back({line_no, "expected a JSON object"});
            continue;
        }
        for (const auto& c : kColumns) {
            if (!obj.contains(c)) throw input_error("schema", "missing required column '" + c + "'");
            const auto& v = obj[c];
            if (v.is_string()) {
                row[c] = v.get<std::string>();
            } else if (v.is_null()) {
                row[c] = "NA";
            } else {
                row[c] = v.dump();
            }
        }
        try {
            table.samples.push_back(build_sample(row, resolved));
        } catch (const Error& e) {
            table.rejected.push_back({line_no, e.what()});
        }
    }
    check_unique_keys(table.samples);
    return table;
}

namespace {

std::string format_number(double v) {
    if (std::floor(v) == v && std::abs(v) < 1e15) return std::to_string(static_cast<std::int64_t>(v));
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

void write_tracking_tsv(std::ostream& out, std::span<const TrackingSample> samples, const ColumnRoleMap& roles) {
    roles.validate();
    const ResolvedRoles resolved(roles);
    for (std::size_t i = 0; i < kColumns.size(); ++i) out << (i ? "\t" : "") << kColumns[i];
    out << '\n';

    // Invert the role map: source axis letter -> role slot.
    auto by_axis = [&](const Vec3& v, char axis) {
        const double comps[3] = {v.x, v.y, v.z};
        for (std::size_t r = 0; r < 3; ++r) {
            if (resolved.axis[r] == axis) return comps[r];
        }
        return 0.0;
    };

    for (const auto& s : samples) {
        out << s.record_id << '\t' << s.wall_clock << '\t' << s.player_tag << '\t' << s.wall_clock;
        for (const Vec3* v : {&s.raw_pos, &s.filt_pos, &s.filt_vel}) {
            for (char axis : {'x', 'y', 'z'}) out << '\t' << format_number(by_axis(*v, axis));
        }
        out << '\t' << s.player_index << '\t' << s.time_rank << '\t'
            << (s.speed_mps ? format_number(*s.speed_mps) : std::string("NA")) << '\t' << s.timestamp_ms << '\n';
    }
}

std::vector<TrackingSample> filter_session(std::span<const TrackingSample> samples, const SessionWindows& windows) {
    windows.validate();
    std::vector<TrackingSample> out;
    for (const auto& s : samples) {
        if (!windows.in_play(s.timestamp_ms)) continue;
        if (s.filt_pos.y < 0.0 || s.filt_pos.z < 0.0) continue;
        out.push_back(s);
    }
    std::stable_sort(out.begin(), out.end(), [](const TrackingSample& a, const TrackingSample& b) {
        if (a.timestamp_ms != b.timestamp_ms) return a.timestamp_ms < b.timestamp_ms;
        if (a.player_index != b.player_index) return a.player_index < b.player_index;
        return a.time_rank < b.time_rank;
    });
    return out;
}

std::vector<TrackingSample> compute_speed(std::span<const TrackingSample> samples, double cap_mps) {
    std::vector<TrackingSample> out(samples.begin(), samples.end());
    std::unordered_map<int, std::size_t> last;  // player -> index of previous sample in `out`
    for (std::size_t i = 0; i < out.size(); ++i) {
        auto& s = out[i];
        s.speed_mps.reset();
        auto it = last.find(s.player_index);
        if (it != last.end()) {
            const auto& prev = out[it->second];
            const std::int64_t dt = s.timestamp_ms - prev.timestamp_ms;
            if (dt < 0) {
                throw input_error("ordering", "timestamps go backwards for player " +
                                                  std::to_string(s.player_index) + " at record " +
                                                  std::to_string(s.record_id));
            }
            if (dt > 0) {
                const double v = distance(prev.planar(), s.planar()) / (static_cast<double>(dt) / 1000.0);
                if (v <= cap_mps) s.speed_mps = v;
            }
        }
        last[s.player_index] = i;
    }
    return out;
}

namespace {

struct PlayerTrack {
    int player_index = 0;
    std::vector<const TrackingSample*> samples;  // sorted by timestamp
};

std::optional<FrameEntry> sample_at(const PlayerTrack& track, std::int64_t t, std::int64_t max_gap) {
    const auto& s = track.samples;
    auto it = std::lower_bound(s.begin(), s.end(), t,
                               [](const TrackingSample* a, std::int64_t v) { return a->timestamp_ms < v; });
    FrameEntry e;
    e.player_index = track.player_index;

    if (it != s.end() && (*it)->timestamp_ms == t) {
        e.pos = (*it)->planar();
        e.speed_mps = (*it)->speed_mps;
        return e;
    }
    const TrackingSample* next = it != s.end() ? *it : nullptr;
    const TrackingSample* prev = it != s.begin() ? *(it - 1) : nullptr;

    if (prev && next) {
        const std::int64_t gap = next->timestamp_ms - prev->timestamp_ms;
        if (gap > max_gap) return std::nullopt;
        const double w = static_cast<double>(t - prev->timestamp_ms) / static_cast<double>(gap);
        e.pos = prev->planar() + (next->planar() - prev->planar()) * w;
        if (prev->speed_mps && next->speed_mps) {
            e.speed_mps = *prev->speed_mps + (*next->speed_mps - *prev->speed_mps) * w;
        } else {
            e.speed_mps = w < 0.5 ? prev->speed_mps : next->speed_mps;
        }
        return e;
    }
    const TrackingSample* only = prev ? prev : next;
    if (!only) return std::nullopt;
    if (std::abs(only->timestamp_ms - t) > max_gap) return std::nullopt;
    e.pos = only->planar();
    e.speed_mps = only->speed_mps;
    return e;
}

}  // namespace

std::vector<MotionFrame> resample(std::span<const TrackingSample> samples, const ResampleOptions& options) {
    if (!(options.rate_hz > 0.0) || !std::isfinite(options.rate_hz)) {
        throw config_error("argument", "resample rate must be positive");
    }
    if (samples.empty()) return {};

    std::map<int, PlayerTrack> tracks;
    std::int64_t t_min = samples.front().timestamp_ms;
    std::int64_t t_max = t_min;
    for (const auto& s : samples) {
        auto& tr = tracks[s.player_index];
        tr.player_index = s.player_index;
        tr.samples.push_back(&s);
        t_min = std::min(t_min, s.timestamp_ms);
        t_max = std::max(t_max, s.timestamp_ms);
    }
    for (auto& [_, tr] : tracks) {
        std::stable_sort(tr.samples.begin(), tr.samples.end(), [](const TrackingSample* a, const TrackingSample* b) {
            return a->timestamp_ms < b->timestamp_ms;
        });
    }

    const std::int64_t origin = options.origin_ms.value_or(t_min);
    const double step_ms = 1000.0 / options.rate_hz;
    std::vector<std::int64_t> ticks;
    for (std::int64_t k = 0;; ++k) {
        const std::int64_t t = origin + std::llround(static_cast<double>(k) * step_ms);
        if (t > t_max) break;
        if (!ticks.empty() && t <= ticks.back()) continue;
        ticks.push_back(t);
    }

    auto run_player = [&](const PlayerTrack& tr) {
        std::vector<std::optional<FrameEntry>> column(ticks.size());
        for (std::size_t k = 0; k < ticks.size(); ++k) column[k] = sample_at(tr, ticks[k], options.max_gap_ms);
        return column;
    };

    std::vector<std::vector<std::optional<FrameEntry>>> columns;
    columns.reserve(tracks.size());
    if (options.parallel) {
        std::vector<std::future<std::vector<std::optional<FrameEntry>>>> jobs;
        for (const auto& [_, tr] : tracks) jobs.push_back(std::async(std::launch::async, run_player, std::cref(tr)));
        for (auto& j : jobs) columns.push_back(j.get());
    } else {
        for (const auto& [_, tr] : tracks) columns.push_back(run_player(tr));
    }

    std::vector<MotionFrame> frames;
    for (std::size_t k = 0; k < ticks.size(); ++k) {
        MotionFrame f;
        f.t_ms = ticks[k];
        for (const auto& col : columns) {
            if (col[k]) f.entries.push_back(*col[k]);
        }
        if (!f.entries.empty()) frames.push_back(std::move(f));
    }
    return frames;
}

SummaryStats summarize(std::span<const TrackingSample> samples, const ColumnRoleMap& roles) {
    if (samples.empty()) throw input_error("empty_dataset", "cannot summarize an empty dataset");
    roles.validate();
    const ResolvedRoles resolved(roles);

    SummaryStats out;
    out.total_records = samples.size();

    std::int64_t t_min = samples.front().timestamp_ms, t_max = t_min;
    for (const auto& s : samples) {
        ++out.records_per_player[s.player_index];
        t_min = std::min(t_min, s.timestamp_ms);
        t_max = std::max(t_max, s.timestamp_ms);
    }
    out.duration_ms = t_max - t_min;
    if (out.duration_ms > 0) {
        out.samples_per_second_team = static_cast<double>(samples.size()) / (static_cast<double>(out.duration_ms) / 1000.0);
        out.samples_per_second_player =
            out.samples_per_second_team / static_cast<double>(out.records_per_player.size());
    }

    auto summarize_column = [&](const std::string& name, auto&& get) {
        std::vector<double> v;
        v.reserve(samples.size());
        for (const auto& s : samples) {
            std::optional<double> x = get(s);
            if (x) v.push_back(*x);
        }
        ColumnSummary c;
        c.name = name;
        c.count = v.size();
        if (!v.empty()) {
            std::sort(v.begin(), v.end());
            c.min = v.front();
            c.max = v.back();
            c.q1 = stats::quantile_sorted(v, 0.25);
            c.median = stats::quantile_sorted(v, 0.5);
            c.q3 = stats::quantile_sorted(v, 0.75);
            c.mean = stats::mean(v);
        }
        out.columns.push_back(std::move(c));
    };

    struct Source {
        const char* prefix;
        Vec3 TrackingSample::*member;
    };
    for (const Source src : {Source{"smt", &TrackingSample::raw_pos}, Source{"klm", &TrackingSample::filt_pos},
                             Source{"klv", &TrackingSample::filt_vel}}) {
        for (int role = 0; role < 3; ++role) {
            summarize_column(resolved.column(src.prefix, role), [&](const TrackingSample& s) -> std::optional<double> {
                const Vec3& v = s.*(src.member);
                return role == 0 ? v.x : role == 1 ? v.y : v.z;
            });
        }
    }
    summarize_column("speed.mtr.sec", [](const TrackingSample& s) { return s.speed_mps; });
    return out;
}

std::vector<int> roster_of(std::span<const TrackingSample> samples) {
    std::set<int> ids;
    for (const auto& s : samples) ids.insert(s.player_index);
    return {ids.begin(), ids.end()};
}

}  // namespace courtlab
