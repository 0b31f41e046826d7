#include "courtlab/service.hpp"

#include <charconv>
#include <cmath>

#include <httplib.h>
#include <json.hpp>

#include "courtlab/error.hpp"
#include "courtlab/heatmap.hpp"

namespace courtlab {

using nlohmann::json;

std::string frame_payload(const Analysis& analysis, const FrameExportOptions& options) {
    if (options.rate_hz == analysis.config.rate_hz) {
        return export_motion_frames(analysis.frames, analysis.config.court, options);
    }
    ResampleOptions ro;
    ro.rate_hz = options.rate_hz;
    ro.max_gap_ms = analysis.config.max_gap_ms;
    auto frames = resample(analysis.samples, ro);
    annotate_phases(frames, analysis.spacing);
    return export_motion_frames(frames, analysis.config.court, options);
}

namespace {

Response error_response(int status, const std::string& code, const std::string& message) {
    return {status, json{{"error", code}, {"message", message}}.dump()};
}

Response ok(std::string body) { return {200, std::move(body)}; }

std::optional<std::int64_t> parse_int(const std::string& text) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
    return v;
}

std::optional<double> parse_real(const std::string& text) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

struct Range {
    std::optional<std::int64_t> from, to;
};

/// Parses from_ms/to_ms; sets `error` on malformed or out-of-session input.
Range parse_range(const QueryParams& q, const Analysis& a, std::optional<Response>& error) {
    Range r;
    for (auto [key, slot] : {std::pair{"from_ms", &r.from}, std::pair{"to_ms", &r.to}}) {
        auto it = q.find(key);
        if (it == q.end()) continue;
        *slot = parse_int(it->second);
        if (!*slot) {
            error = error_response(400, "bad_request", std::string(key) + " must be an integer");
            return r;
        }
    }
    if (r.from && r.to && *r.from > *r.to) {
        error = error_response(400, "bad_request", "from_ms must not exceed to_ms");
        return r;
    }
    if ((r.to && *r.to <= a.session_start_ms()) || (r.from && *r.from > a.session_end_ms())) {
        error = error_response(416, "range_not_satisfiable", "requested range lies outside the session");
    }
    return r;
}

}  // namespace

Service::Service(std::shared_ptr<const Analysis> analysis) : analysis_(std::move(analysis)) {}

Service::~Service() { stop(); }

Response Service::handle(const std::string& path, const QueryParams& query) const {
    try {
        if (path == "/players") return players();
        if (path == "/frames") return frames(query);
        if (path == "/spacing") return spacing(query);
        if (path == "/quintets") return quintets();
        if (path == "/buckets") return buckets();
        if (path == "/court") return court();
        const std::string prefix = "/heatmap/";
        if (path.rfind(prefix, 0) == 0) return heatmap(path.substr(prefix.size()), query);
    } catch (const Error& e) {
        return error_response(e.kind() == ErrorKind::Invariant ? 500 : 400, e.code(), e.what());
    }
    return error_response(404, "not_found", "no such endpoint: " + path);
}

Response Service::players() const {
    json arr = json::array();
    std::map<int, std::size_t> counts;
    for (const auto& s : analysis_->samples) ++counts[s.player_index];
    for (int p : analysis_->roster) {
        arr.push_back({{"player_index", p}, {"tag", analysis_->tags.at(p)}, {"samples", counts[p]}});
    }
    return ok(arr.dump());
}

Response Service::frames(const QueryParams& q) const {
    std::optional<Response> err;
    const Range r = parse_range(q, *analysis_, err);
    if (err) return *err;

    FrameExportOptions opts;
    opts.from_ms = r.from;
    opts.to_ms = r.to;
    opts.rate_hz = analysis_->config.rate_hz;
    if (auto it = q.find("hz"); it != q.end()) {
        auto hz = parse_real(it->second);
        if (!hz || !(*hz > 0.0) || *hz > 1000.0) return error_response(400, "bad_request", "hz must be in (0, 1000]");
        opts.rate_hz = *hz;
    }
    if (auto it = q.find("stride"); it != q.end()) {
        auto stride = parse_int(it->second);
        if (!stride || *stride < 1) return error_response(400, "bad_request", "stride must be a positive integer");
        opts.stride = static_cast<int>(*stride);
    }
    return ok(frame_payload(*analysis_, opts));
}

Response Service::heatmap(const std::string& player_text, const QueryParams& q) const {
    const auto player = parse_int(player_text);
    if (!player) return error_response(400, "bad_request", "player must be an integer index");
    if (std::find(analysis_->roster.begin(), analysis_->roster.end(), *player) == analysis_->roster.end()) {
        return error_response(404, "unknown_player", "no player with index " + player_text);
    }
    std::string mode = "counts";
    if (auto it = q.find("mode"); it != q.end()) mode = it->second;
    const auto samples = analysis_->samples_of(static_cast<int>(*player));
    if (mode == "counts") {
        OccupancyOptions oo{analysis_->config.exclude_bench};
        return ok(occupancy_to_json(occupancy_grid(samples, analysis_->config.grid, oo)));
    }
    if (mode == "kde") {
        std::vector<Point2> pts;
        for (const auto& s : samples) pts.push_back(s.planar());
        KdeOptions ko;
        ko.n = analysis_->config.kde_n;
        const DensityField field = kde2(pts, ko);
        const auto levels = contour_levels(field);
        return ok(density_to_json(field, levels));
    }
    return error_response(400, "bad_request", "mode must be counts or kde");
}

Response Service::spacing(const QueryParams& q) const {
    std::optional<Response> err;
    const Range r = parse_range(q, *analysis_, err);
    if (err) return *err;
    std::vector<SpacingFrame> picked;
    for (const auto& f : analysis_->spacing) {
        if (r.from && f.t_ms < *r.from) continue;
        if (r.to && f.t_ms >= *r.to) continue;
        picked.push_back(f);
    }
    return ok(spacing_to_json(picked));
}

Response Service::quintets() const {
    json segments = json::array(), gaps = json::array();
    if (analysis_->quintets) {
        for (const auto& s : analysis_->quintets->segments) {
            segments.push_back({{"start_ms", s.start_ms},
                                {"end_ms", s.end_ms},
                                {"on_court", s.on_court},
                                {"excluded", s.excluded}});
        }
        for (const auto& g : analysis_->quintets->gaps) {
            gaps.push_back({{"start_ms", g.start_ms}, {"end_ms", g.end_ms}, {"on_court", g.on_court}});
        }
    }
    json doc = {{"segments", segments},
                {"gaps", gaps},
                {"table", json::parse(grouped_to_json(analysis_->by_quintet_phase))},
                {"by_phase", json::parse(grouped_to_json(analysis_->by_phase))}};
    return ok(doc.dump());
}

Response Service::buckets() const {
    if (!analysis_->buckets) return ok(json{{"rows", json::array()}, {"shot_minutes", 0}, {"matched_minutes", 0}}.dump());
    return ok(buckets_to_json(*analysis_->buckets));
}

Response Service::court() const {
    const auto& c = analysis_->config.court;
    const auto& g = analysis_->config.grid;
    json doc = {{"length_m", c.length_m},
                {"width_m", c.width_m},
                {"baskets", {{c.baskets[0].x, c.baskets[0].y}, {c.baskets[1].x, c.baskets[1].y}}},
                {"bench_region", "width < 0"},
                {"attack_direction_first_half", to_string(c.attack_direction_first_half)},
                {"grid",
                 {{"origin", {g.origin.x, g.origin.y}},
                  {"cell_size_m", g.cell_size_m},
                  {"n_rows", g.n_rows},
                  {"n_cols", g.n_cols}}}};
    return ok(doc.dump());
}

void Service::install_routes() {
    if (server_) return;
    server_ = std::make_unique<httplib::Server>();
    const std::string origin = analysis_->config.cors_origin;
    server_->set_default_headers({{"Access-Control-Allow-Origin", origin}});
    server_->Get(R"(/.*)", [this](const httplib::Request& req, httplib::Response& res) {
        QueryParams q;
        for (const auto& [k, v] : req.params) q.emplace(k, v);
        const Response r = handle(req.path, q);
        res.status = r.status;
        res.set_content(r.body, r.content_type);
    });
    server_->Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Methods", "GET, OPTIONS");
        res.status = 204;
    });
}

bool Service::listen(const std::string& host, int port) {
    install_routes();
    return server_->listen(host, port);
}

int Service::bind_any_port(const std::string& host) {
    install_routes();
    return server_->bind_to_any_port(host);
}

bool Service::listen_after_bind() { return server_ && server_->listen_after_bind(); }

void Service::stop() {
    if (server_) server_->stop();
}

}  // namespace courtlab
