#include "courtlab/pbp.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "courtlab/error.hpp"

namespace courtlab {

namespace {

std::string normalize(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n\"");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n\"");
    std::string out(s.substr(b, e - b + 1));
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::string strip(std::string_view s) {
    auto b = s.find_first_not_of("\r\n");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of("\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(delim, start);
        out.push_back(line.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

std::optional<double> to_double(const std::string& text) {
    std::string t = text;
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
    std::size_t b = 0;
    while (b < t.size() && std::isspace(static_cast<unsigned char>(t[b]))) ++b;
    if (b == t.size()) return std::nullopt;
    const char* first = t.data() + b;
    const char* last = t.data() + t.size();
    if (*first == '+') ++first;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) return std::nullopt;
    return v;
}

const std::vector<std::string> kPbpColumns = {"timestamp", "action", "name", "surname", "x_coord", "y_coord"};

}  // namespace

std::string to_string(ActionClass c) {
    switch (c) {
        case ActionClass::Make2: return "make_2pt";
        case ActionClass::Miss2: return "miss_2pt";
        case ActionClass::Make3: return "make_3pt";
        case ActionClass::Miss3: return "miss_3pt";
        case ActionClass::Other: return "other";
    }
    return "other";
}

ActionClass parse_action_class(const std::string& text) {
    for (ActionClass c : {ActionClass::Make2, ActionClass::Miss2, ActionClass::Make3, ActionClass::Miss3,
                          ActionClass::Other}) {
        if (to_string(c) == text) return c;
    }
    throw config_error("action_lexicon", "unknown action class '" + text + "'");
}

ActionLexicon::ActionLexicon()
    : entries_{{"two shot made", ActionClass::Make2},    {"two shot missed", ActionClass::Miss2},
               {"two shot miss", ActionClass::Miss2},    {"three shot made", ActionClass::Make3},
               {"three shot missed", ActionClass::Miss3}, {"three shot miss", ActionClass::Miss3}} {}

ActionLexicon::ActionLexicon(std::map<std::string, ActionClass> entries) {
    for (auto& [k, v] : entries) entries_.emplace(normalize(k), v);
}

std::optional<ActionClass> ActionLexicon::lookup(const std::string& action) const {
    auto it = entries_.find(normalize(action));
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

PbpTable parse_pbp(std::istream& in, const ActionLexicon& lexicon) {
    PbpTable table;
    std::string line;
    if (!std::getline(in, line)) throw input_error("schema", "play-by-play input has no header row");
    line = strip(line);
    table.delimiter = line.find('\t') != std::string::npos ? '\t' : ',';

    const auto header = split(line, table.delimiter);
    std::vector<std::size_t> pos;
    for (const auto& c : kPbpColumns) {
        auto it = std::find_if(header.begin(), header.end(), [&](const std::string& h) { return normalize(h) == c; });
        if (it == header.end()) throw input_error("schema", "missing required column '" + c + "'");
        pos.push_back(static_cast<std::size_t>(it - header.begin()));
    }

    std::set<std::string> unknown;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip(line);
        if (line.empty()) continue;
        const auto fields = split(line, table.delimiter);
        if (fields.size() < header.size()) {
            table.rejected.push_back({line_no, "expected " + std::to_string(header.size()) + " fields"});
            continue;
        }
        PlayEvent e;
        e.wall_clock = fields[pos[0]];
        e.action = fields[pos[1]];
        e.first_name = fields[pos[2]];
        e.surname = fields[pos[3]];
        e.x_text = fields[pos[4]];
        e.y_text = fields[pos[5]];
        const auto x = to_double(e.x_text);
        const auto y = to_double(e.y_text);
        if (!x || !y) {
            table.rejected.push_back({line_no, "unparseable coordinate"});
            continue;
        }
        if (std::abs(*x) > 100.0 || std::abs(*y) > 100.0) {
            table.rejected.push_back({line_no, "coordinate outside [-100,100]"});
            continue;
        }
        try {
            parse_minute(e.wall_clock);
        } catch (const Error& err) {
            table.rejected.push_back({line_no, err.what()});
            continue;
        }
        e.coord = {*x, *y};
        if (auto cls = lexicon.lookup(e.action)) {
            e.action_class = *cls;
        } else {
            e.action_class = ActionClass::Other;
            if (unknown.insert(normalize(e.action)).second) {
                table.warnings.push_back("unknown action '" + e.action + "' classified as other");
            }
        }
        table.events.push_back(std::move(e));
    }
    return table;
}

void write_pbp(std::ostream& out, std::span<const PlayEvent> events, char delimiter) {
    for (std::size_t i = 0; i < kPbpColumns.size(); ++i) out << (i ? std::string(1, delimiter) : "") << kPbpColumns[i];
    out << '\n';
    for (const auto& e : events) {
        out << e.wall_clock << delimiter << e.action << delimiter << e.first_name << delimiter << e.surname
            << delimiter << e.x_text << delimiter << e.y_text << '\n';
    }
}

std::int64_t parse_minute(const std::string& wall_clock) {
    int d = 0, mo = 0, y = 0, h = 0, mi = 0;
    char tail = 0;
    const std::string text = normalize(wall_clock);
    bool ok = std::sscanf(text.c_str(), "%d/%d/%d %d:%d%c", &d, &mo, &y, &h, &mi, &tail) == 5;
    if (!ok) ok = std::sscanf(text.c_str(), "%d-%d-%d %d:%d%c", &y, &mo, &d, &h, &mi, &tail) == 5;
    using namespace std::chrono;
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ok || !ymd.ok() || h < 0 || h > 23 || mi < 0 || mi > 59) {
        throw input_error("timestamp", "unparseable wall-clock minute '" + wall_clock + "'");
    }
    const auto days = sys_days{ymd}.time_since_epoch().count();
    return static_cast<std::int64_t>(days) * 1440 + h * 60 + mi;
}

std::string format_minute(std::int64_t minute) {
    using namespace std::chrono;
    const auto days = static_cast<int>(minute >= 0 ? minute / 1440 : (minute - 1439) / 1440);
    const std::int64_t in_day = minute - static_cast<std::int64_t>(days) * 1440;
    const year_month_day ymd{sys_days{std::chrono::days{days}}};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%02u/%02u/%04d %02d:%02d", static_cast<unsigned>(ymd.day()),
                  static_cast<unsigned>(ymd.month()), static_cast<int>(ymd.year()), static_cast<int>(in_day / 60),
                  static_cast<int>(in_day % 60));
    return buf;
}

int nearest_pct_bucket(int makes, int attempts) {
    if (attempts <= 0 || makes < 0 || makes > attempts) {
        throw invariant_error("shooting", "makes must lie in [0, attempts] with attempts > 0");
    }
    static constexpr int kBuckets[] = {0, 25, 33, 50, 67, 100};
    const double pct = 100.0 * makes / attempts;
    int best = kBuckets[0];
    for (int b : kBuckets) {
        if (std::abs(pct - b) < std::abs(pct - best)) best = b;
    }
    return best;
}

std::vector<MinuteBucket> minute_shooting(std::span<const PlayEvent> events) {
    std::map<std::int64_t, MinuteBucket> by_minute;
    for (const auto& e : events) {
        const std::int64_t m = parse_minute(e.wall_clock);
        auto& b = by_minute[m];
        b.minute = m;
        switch (e.action_class) {
            case ActionClass::Make2: ++b.makes_2pt; [[fallthrough]];
            case ActionClass::Miss2: ++b.attempts_2pt; break;
            case ActionClass::Make3: ++b.makes_3pt; [[fallthrough]];
            case ActionClass::Miss3: ++b.attempts_3pt; break;
            case ActionClass::Other: break;
        }
    }
    std::vector<MinuteBucket> out;
    for (auto& [_, b] : by_minute) {
        if (b.attempts() > 0) b.pct_bucket = nearest_pct_bucket(b.makes(), b.attempts());
        if (b.attempts_2pt > 0) b.pct_bucket_2pt = nearest_pct_bucket(b.makes_2pt, b.attempts_2pt);
        if (b.attempts_3pt > 0) b.pct_bucket_3pt = nearest_pct_bucket(b.makes_3pt, b.attempts_3pt);
        out.push_back(b);
    }
    return out;
}

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

std::int64_t ClockMap::minute_of(std::int64_t t_ms) const { return floor_div(t_ms + offset_ms, 60000); }

ClockMap ClockMap::from_samples(std::span<const TrackingSample> samples, std::int64_t extra_minutes) {
    if (samples.empty()) throw input_error("empty_dataset", "cannot derive a clock from no samples");
    // Each sample constrains the offset to [minute*60000 - t, minute*60000 + 60000 - t).
    std::int64_t lo = std::numeric_limits<std::int64_t>::min();
    std::int64_t hi = std::numeric_limits<std::int64_t>::max();
    for (const auto& s : samples) {
        const std::int64_t start = parse_minute(s.wall_clock) * 60000 - s.timestamp_ms;
        lo = std::max(lo, start);
        hi = std::min(hi, start + 59999);
    }
    const std::int64_t offset = lo <= hi ? lo + (hi - lo) / 2 : lo;
    return {offset + extra_minutes * 60000};
}

BucketTable bucket_spacing(std::span<const MinuteBucket> buckets, std::span<const SpacingFrame> frames,
                           const ClockMap& clock, BucketBasis basis) {
    BucketTable table;
    std::map<std::int64_t, int> bucket_of_minute;
    for (const auto& b : buckets) {
        const std::optional<int> v = basis == BucketBasis::Combined   ? b.pct_bucket
                                     : basis == BucketBasis::TwoPoint ? b.pct_bucket_2pt
                                                                      : b.pct_bucket_3pt;
        if (v) bucket_of_minute[b.minute] = *v;
    }
    table.shot_minutes = bucket_of_minute.size();
    if (bucket_of_minute.empty()) return table;

    struct Acc {
        double area = 0.0, dist = 0.0;
        std::size_t frames = 0;
        std::set<std::int64_t> minutes;
    };
    std::map<int, Acc> acc;
    std::set<std::int64_t> frame_minutes;
    std::set<std::int64_t> matched;
    for (const auto& f : frames) {
        const std::int64_t m = clock.minute_of(f.t_ms);
        frame_minutes.insert(m);
        auto it = bucket_of_minute.find(m);
        if (it == bucket_of_minute.end()) continue;
        matched.insert(m);
        if (f.phase != Phase::Attack) continue;
        auto& a = acc[it->second];
        a.area += f.voronoi_area_sum_m2;
        a.dist += f.mean_pairwise_distance_m;
        ++a.frames;
        a.minutes.insert(m);
    }
    if (matched.empty()) {
        throw input_error("alignment", "play-by-play minutes do not overlap the tracking clock");
    }
    table.matched_minutes = matched.size();
    for (const auto& [bucket, a] : acc) {
        const double n = static_cast<double>(a.frames);
        table.rows.push_back({bucket, a.area / n, a.dist / n, a.frames, a.minutes.size()});
    }
    return table;
}

std::string minutes_to_csv(std::span<const MinuteBucket> buckets) {
    std::ostringstream os;
    auto opt = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); };
    os << "minute,attempts_2pt,makes_2pt,attempts_3pt,makes_3pt,pct_bucket,pct_bucket_2pt,pct_bucket_3pt\n";
    for (const auto& b : buckets) {
        os << format_minute(b.minute) << ',' << b.attempts_2pt << ',' << b.makes_2pt << ',' << b.attempts_3pt << ','
           << b.makes_3pt << ',' << opt(b.pct_bucket) << ',' << opt(b.pct_bucket_2pt) << ',' << opt(b.pct_bucket_3pt)
           << '\n';
    }
    return os.str();
}

std::string buckets_to_csv(const BucketTable& table) {
    std::ostringstream os;
    os.precision(10);
    os << "pct_bucket,voronoi_area_m2,avg_distance_m,frame_count,minutes\n";
    for (const auto& r : table.rows) {
        os << r.pct_bucket << ',' << r.mean_voronoi_area_m2 << ',' << r.mean_avg_distance_m << ',' << r.frame_count
           << ',' << r.minutes << '\n';
    }
    return os.str();
}

std::string buckets_to_json(const BucketTable& table) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : table.rows) {
        rows.push_back({{"pct_bucket", r.pct_bucket},
                        {"voronoi_area_m2", r.mean_voronoi_area_m2},
                        {"avg_distance_m", r.mean_avg_distance_m},
                        {"frame_count", r.frame_count},
                        {"minutes", r.minutes}});
    }
    return nlohmann::json{{"rows", rows},
                          {"shot_minutes", table.shot_minutes},
                          {"matched_minutes", table.matched_minutes}}
        .dump();
}

}  // namespace courtlab
