// Command-line driver for the courtlab analysis pipeline.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "courtlab/analysis.hpp"
#include "courtlab/config.hpp"
#include "courtlab/error.hpp"
#include "courtlab/frames.hpp"
#include "courtlab/heatmap.hpp"
#include "courtlab/service.hpp"
#include "courtlab/synth.hpp"

using namespace courtlab;
using nlohmann::json;

namespace {

struct GlobalOptions {
    std::string config_path;
    std::string court_preset;
    std::string column_roles;
    std::string session_windows;
    std::optional<double> rate_hz;
    std::string clip;
    std::optional<std::uint64_t> seed;
};

struct IoOptions {
    std::string tracking;
    std::string pbp;
    std::string out;
    std::string format = "csv";
};

void diag(const std::string& level, const std::string& message) {
    std::cerr << json{{level, message}}.dump() << '\n';
}

Config resolve_config(const GlobalOptions& g) {
    Config c;
    if (!g.config_path.empty()) c = load_config(g.config_path);
    if (!g.court_preset.empty()) {
        const auto preset = court_preset(g.court_preset);
        c.court.length_m = preset.court.length_m;
        c.court.width_m = preset.court.width_m;
        c.grid = preset.grid;
    }
    if (!g.column_roles.empty()) {
        if (g.column_roles.find(',') != std::string::npos) {
            std::istringstream in(g.column_roles);
            std::string l, w, h;
            std::getline(in, l, ',');
            std::getline(in, w, ',');
            std::getline(in, h, ',');
            c.roles = {l, w, h};
        } else {
            c.roles = ColumnRoleMap::profile(g.column_roles);
        }
    }
    if (!g.session_windows.empty()) c.windows = SessionWindows::parse(g.session_windows);
    if (g.rate_hz) c.rate_hz = *g.rate_hz;
    if (!g.clip.empty()) c.clip = parse_clip_preset(g.clip);
    if (g.seed) c.synth.seed = *g.seed;
    c.validate();
    return c;
}

std::vector<TrackingSample> load_tracking(const std::string& path, const Config& config) {
    if (path.empty()) throw config_error("argument", "--tracking is required");
    std::ifstream in(path);
    if (!in) throw input_error("io", "cannot open tracking file '" + path + "'");
    const bool jsonl = std::filesystem::path(path).extension() == ".jsonl";
    TrackingTable table = jsonl ? parse_tracking_jsonl(in, config.roles) : parse_tracking(in, config.roles);
    for (const auto& w : table.warnings) diag("warning", w);
    for (const auto& r : table.rejected) diag("warning", "line " + std::to_string(r.line) + " rejected: " + r.reason);
    return std::move(table.samples);
}

std::vector<PlayEvent> load_pbp(const std::string& path, const Config& config) {
    if (path.empty()) return {};
    std::ifstream in(path);
    if (!in) throw input_error("io", "cannot open play-by-play file '" + path + "'");
    PbpTable table = parse_pbp(in, config.lexicon);
    for (const auto& w : table.warnings) diag("warning", w);
    for (const auto& r : table.rejected) diag("warning", "line " + std::to_string(r.line) + " rejected: " + r.reason);
    return std::move(table.events);
}

void emit(const IoOptions& io, const std::string& text) {
    if (io.out.empty() || io.out == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(io.out, std::ios::binary);
    if (!out) throw input_error("io", "cannot write '" + io.out + "'");
    out << text;
}

bool want_json(const IoOptions& io) {
    if (io.format == "json") return true;
    if (io.format == "csv") return false;
    throw config_error("argument", "--format must be csv or json");
}

Analysis run_analysis(const GlobalOptions& g, const IoOptions& io) {
    const Config config = resolve_config(g);
    auto samples = load_tracking(io.tracking, config);
    auto events = load_pbp(io.pbp, config);
    Analysis a = analyze(config, std::move(samples), std::move(events));
    for (const auto& w : a.warnings) diag("warning", w);
    return a;
}

std::string summary_text(const SummaryStats& s) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << "column";
    for (const char* h : {"min", "q1", "median", "mean", "q3", "max", "n"}) os << '\t' << h;
    os << '\n';
    for (const auto& c : s.columns) {
        os << c.name << '\t' << c.min << '\t' << c.q1 << '\t' << c.median << '\t' << c.mean << '\t' << c.q3 << '\t'
           << c.max << '\t' << c.count << '\n';
    }
    os << "\nrecords\t" << s.total_records << '\n';
    for (const auto& [p, n] : s.records_per_player) os << "player " << p << '\t' << n << '\n';
    os << "duration_ms\t" << s.duration_ms << '\n';
    os << "samples_per_second_team\t" << s.samples_per_second_team << '\n';
    os << "samples_per_second_player\t" << s.samples_per_second_player << '\n';
    return os.str();
}

json summary_json(const SummaryStats& s) {
    json cols = json::array();
    for (const auto& c : s.columns) {
        cols.push_back({{"name", c.name}, {"count", c.count}, {"min", c.min}, {"q1", c.q1}, {"median", c.median},
                        {"mean", c.mean}, {"q3", c.q3}, {"max", c.max}});
    }
    json per_player = json::object();
    for (const auto& [p, n] : s.records_per_player) per_player[std::to_string(p)] = n;
    return {{"columns", cols},
            {"total_records", s.total_records},
            {"records_per_player", per_player},
            {"duration_ms", s.duration_ms},
            {"samples_per_second_team", s.samples_per_second_team},
            {"samples_per_second_player", s.samples_per_second_player}};
}

std::vector<TrackingSample> player_samples(const GlobalOptions& g, const IoOptions& io, int player, Config& config) {
    config = resolve_config(g);
    auto samples = load_tracking(io.tracking, config);
    if (config.windows) {
        samples = filter_session(samples, *config.windows);
    }
    std::vector<TrackingSample> mine;
    for (auto& s : samples) {
        if (s.player_index == player) mine.push_back(std::move(s));
    }
    if (mine.empty()) throw input_error("unknown_player", "no samples for player " + std::to_string(player));
    return mine;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("io", "cannot write '" + path.string() + "'");
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"courtlab: team-sport tracking analytics"};
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--config", g.config_path, "JSON configuration document");
    app.add_option("--court-preset", g.court_preset, "default | court15x28");
    app.add_option("--column-roles", g.column_roles, "xyz | yzx | length,width,height column names");
    app.add_option("--session-windows", g.session_windows, "match_start,halftime_start,halftime_end,match_end (ms)");
    app.add_option("--rate-hz", g.rate_hz, "resampling rate");
    app.add_option("--clip", g.clip, "Voronoi clip region: court | bbox");
    app.add_option("--seed", g.seed, "synthetic generator seed");

    IoOptions io;
    auto add_io = [&](CLI::App* sub, bool pbp = false) {
        sub->add_option("--tracking", io.tracking, "tracking log (.tsv or .jsonl)");
        if (pbp) sub->add_option("--pbp", io.pbp, "play-by-play log");
        sub->add_option("-o,--out", io.out, "output file (default stdout)");
        sub->add_option("--format", io.format, "csv | json");
    };

    auto* ingest = app.add_subcommand("ingest", "parse and session-filter a tracking log");
    add_io(ingest);

    auto* summary = app.add_subcommand("summary", "descriptive statistics per column");
    add_io(summary);
    bool summary_raw = false;
    summary->add_flag("--raw", summary_raw, "summarize before session filtering");

    int player = 0;
    bool exclude_bench = false;
    std::string png;
    auto* heat = app.add_subcommand("heatmap", "occupancy counts on the court grid");
    add_io(heat);
    heat->add_option("--player", player, "player index")->required();
    heat->add_flag("--exclude-bench", exclude_bench, "drop samples in the bench region");
    heat->add_flag("--relative", "emit relative frequencies instead of counts");
    heat->add_option("--png", png, "also write a PNG image");

    int kde_n = 0;
    std::string bandwidth, kde_range = "data";
    int levels_k = 10;
    auto* kde = app.add_subcommand("kde", "kernel density field and contour levels");
    add_io(kde);
    kde->add_option("--player", player, "player index")->required();
    kde->add_option("--n", kde_n, "grid resolution per axis");
    kde->add_option("--bandwidth", bandwidth, "hx,hy in meters");
    kde->add_option("--range", kde_range, "data | court");
    kde->add_option("--levels", levels_k, "number of contour levels");
    kde->add_option("--png", png, "also write a PNG image");

    bool with_cells = false;
    auto* spacing = app.add_subcommand("spacing", "per-frame spacing metrics");
    add_io(spacing);
    spacing->add_flag("--cells", with_cells, "include Voronoi polygons (json)");

    auto* phases = app.add_subcommand("phases", "mean spacing in attack and defense");
    add_io(phases);

    auto* quintets = app.add_subcommand("quintets", "quintet segments and per-quintet spacing");
    add_io(quintets);

    std::string basis = "combined";
    bool per_minute = false;
    auto* buckets = app.add_subcommand("buckets", "attack spacing by per-minute shooting bucket");
    add_io(buckets, true);
    buckets->add_option("--basis", basis, "combined | 2pt | 3pt");
    buckets->add_flag("--minutes", per_minute, "emit the per-minute shooting table instead");

    std::optional<std::int64_t> from_ms, to_ms;
    int stride = 1;
    bool jsonl = false;
    std::optional<double> export_hz;
    auto* exportf = app.add_subcommand("export-frames", "motion-chart frame stream");
    add_io(exportf);
    exportf->add_option("--from-ms", from_ms, "first timestamp (inclusive)");
    exportf->add_option("--to-ms", to_ms, "last timestamp (exclusive)");
    exportf->add_option("--stride", stride, "keep every n-th frame");
    exportf->add_option("--hz", export_hz, "frame rate (defaults to --rate-hz)");
    exportf->add_flag("--jsonl", jsonl, "one JSON record per line");

    std::string out_dir = "synthetic";
    auto* synth = app.add_subcommand("synth", "generate a synthetic match with ground truth");
    synth->add_option("--out-dir", out_dir, "output directory");

    std::string host = "127.0.0.1";
    int port = 8080;
    auto* serve = app.add_subcommand("serve", "serve the analysis over HTTP/JSON");
    add_io(serve, true);
    serve->add_option("--host", host, "bind address");
    serve->add_option("--port", port, "bind port");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << json{{"error", "usage"}, {"message", e.what()}}.dump() << '\n';
        return static_cast<int>(ErrorKind::Config);
    }

    try {
        if (ingest->parsed()) {
            const Config config = resolve_config(g);
            std::ifstream in(io.tracking);
            if (!in) throw input_error("io", "cannot open tracking file '" + io.tracking + "'");
            const bool is_jsonl = std::filesystem::path(io.tracking).extension() == ".jsonl";
            TrackingTable table = is_jsonl ? parse_tracking_jsonl(in, config.roles) : parse_tracking(in, config.roles);
            for (const auto& w : table.warnings) diag("warning", w);
            auto kept = config.windows ? filter_session(table.samples, *config.windows) : table.samples;
            json report = {{"records", table.samples.size()},
                           {"rejected", table.rejected.size()},
                           {"retained", kept.size()},
                           {"players", roster_of(table.samples)}};
            if (!io.out.empty()) {
                std::ofstream out(io.out);
                write_tracking_tsv(out, kept, config.roles);
            }
            std::cout << report.dump() << '\n';
        } else if (summary->parsed()) {
            const Config config = resolve_config(g);
            auto samples = load_tracking(io.tracking, config);
            if (config.windows && !summary_raw) samples = filter_session(samples, *config.windows);
            const SummaryStats s = summarize(samples, config.roles);
            emit(io, io.format == "json" ? summary_json(s).dump(2) : summary_text(s));
        } else if (heat->parsed()) {
            Config config;
            const auto mine = player_samples(g, io, player, config);
            const OccupancyGrid grid =
                occupancy_grid(mine, config.grid, OccupancyOptions{exclude_bench || config.exclude_bench});
            if (heat->count("--relative") > 0) {
                const auto rel = relative_frequencies(grid);
                emit(io, json{{"grid", json::parse(occupancy_to_json(grid))["grid"]}, {"values", rel}}.dump());
            } else {
                emit(io, want_json(io) ? occupancy_to_json(grid) : occupancy_to_csv(grid));
            }
            if (!png.empty()) {
                std::vector<double> v(grid.counts.begin(), grid.counts.end());
                write_heatmap_png(png, v, grid.grid.n_rows, grid.grid.n_cols);
            }
        } else if (kde->parsed()) {
            Config config;
            const auto mine = player_samples(g, io, player, config);
            std::vector<Point2> pts;
            for (const auto& s : mine) pts.push_back(s.planar());
            KdeOptions ko;
            ko.n = kde_n > 0 ? kde_n : config.kde_n;
            if (!bandwidth.empty()) {
                const auto comma = bandwidth.find(',');
                if (comma == std::string::npos) throw config_error("argument", "--bandwidth expects hx,hy");
                ko.bandwidths = std::array<double, 2>{std::stod(bandwidth.substr(0, comma)),
                                                      std::stod(bandwidth.substr(comma + 1))};
            }
            if (kde_range == "court") {
                ko.limits = Bounds{0.0, config.court.length_m, 0.0, config.court.width_m};
            } else if (kde_range != "data") {
                throw config_error("argument", "--range must be data or court");
            }
            const DensityField field = kde2(pts, ko);
            const auto levels = contour_levels(field, levels_k);
            emit(io, want_json(io) ? density_to_json(field, levels) : density_to_csv(field));
            if (!png.empty()) write_heatmap_png(png, field.values, static_cast<int>(field.ys.size()),
                                                static_cast<int>(field.xs.size()), 4);
        } else if (spacing->parsed()) {
            const Analysis a = run_analysis(g, io);
            emit(io, want_json(io) ? spacing_to_json(a.spacing, with_cells) : spacing_to_csv(a.spacing));
        } else if (phases->parsed()) {
            const Analysis a = run_analysis(g, io);
            emit(io, want_json(io) ? grouped_to_json(a.by_phase) : grouped_to_csv(a.by_phase));
        } else if (quintets->parsed()) {
            const Analysis a = run_analysis(g, io);
            if (!a.quintets) throw config_error("unsupported_roster", "quintet tables need a six-player roster");
            if (want_json(io)) {
                Service svc(std::make_shared<const Analysis>(a));
                emit(io, svc.handle("/quintets", {}).body);
            } else {
                std::ostringstream os;
                os << "# segments\nstart_ms,end_ms,excluded\n";
                for (const auto& s : a.quintets->segments) os << s.start_ms << ',' << s.end_ms << ',' << s.excluded << '\n';
                os << "# invalid gaps\nstart_ms,end_ms,on_court_count\n";
                for (const auto& s : a.quintets->gaps) os << s.start_ms << ',' << s.end_ms << ',' << s.on_court.size() << '\n';
                os << "# spacing by quintet and phase\n" << grouped_to_csv(a.by_quintet_phase);
                emit(io, os.str());
            }
        } else if (buckets->parsed()) {
            if (io.pbp.empty()) throw config_error("argument", "--pbp is required for buckets");
            const Analysis a = run_analysis(g, io);
            if (per_minute) {
                emit(io, minutes_to_csv(a.minutes));
            } else {
                const BucketBasis b = basis == "combined" ? BucketBasis::Combined
                                      : basis == "2pt"    ? BucketBasis::TwoPoint
                                      : basis == "3pt"    ? BucketBasis::ThreePoint
                                                          : throw config_error("argument", "--basis must be combined, 2pt or 3pt");
                const BucketTable table = bucket_spacing(a.minutes, a.spacing, *a.clock, b);
                emit(io, want_json(io) ? buckets_to_json(table) : buckets_to_csv(table));
            }
        } else if (exportf->parsed()) {
            const Analysis a = run_analysis(g, io);
            FrameExportOptions fo;
            fo.from_ms = from_ms;
            fo.to_ms = to_ms;
            fo.stride = stride;
            fo.rate_hz = export_hz.value_or(a.config.rate_hz);
            fo.format = jsonl ? FrameFormat::JsonLines : FrameFormat::Document;
            emit(io, frame_payload(a, fo));
        } else if (synth->parsed()) {
            const Config config = resolve_config(g);
            const SyntheticMatch m = generate_synthetic(config.synth, config.court);
            std::filesystem::create_directories(out_dir);
            const std::filesystem::path dir(out_dir);
            {
                std::ostringstream os;
                write_tracking_tsv(os, m.samples, config.roles);
                write_text_file(dir / "tracking.tsv", os.str());
            }
            {
                std::ostringstream os;
                write_pbp(os, m.events);
                write_text_file(dir / "pbp.tsv", os.str());
            }
            write_text_file(dir / "truth.json", m.sidecar_json + "\n");
            Config run = config;
            run.windows = m.windows;
            run.court.attack_direction_first_half = config.synth.attack_direction_first_half;
            write_text_file(dir / "config.json", config_to_json(run).dump(2) + "\n");
            std::cout << json{{"tracking_rows", m.samples.size()}, {"pbp_rows", m.events.size()}, {"out_dir", out_dir}}.dump()
                      << '\n';
        } else if (serve->parsed()) {
            auto a = std::make_shared<const Analysis>(run_analysis(g, io));
            Service svc(a);
            diag("info", "serving on http://" + host + ":" + std::to_string(port));
            if (!svc.listen(host, port)) throw config_error("bind", "cannot bind " + host + ":" + std::to_string(port));
        }
    } catch (const Error& e) {
        std::cerr << json{{"error", e.code()}, {"message", e.what()}, {"exit_code", e.exit_code()}}.dump() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "internal"}, {"message", e.what()}, {"exit_code", 4}}.dump() << '\n';
        return static_cast<int>(ErrorKind::Invariant);
    }
    return 0;
}
