#include "courtlab/heatmap.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "courtlab/error.hpp"
#include "courtlab/stats.hpp"

namespace courtlab {

namespace {

void accumulate(OccupancyGrid& g, Point2 p, const OccupancyOptions& options) {
    if (options.exclude_bench && in_bench_region(p)) {
        ++g.excluded_bench;
        return;
    }
    if (auto cell = cell_of(p, g.grid)) {
        ++g.counts[static_cast<std::size_t>(cell->row * g.grid.n_cols + cell->col)];
        ++g.total;
    } else {
        ++g.out_of_grid;
    }
}

OccupancyGrid empty_grid(const GridSpec& grid) {
    grid.validate();
    OccupancyGrid g;
    g.grid = grid;
    g.counts.assign(static_cast<std::size_t>(grid.cell_count()), 0);
    return g;
}

nlohmann::json grid_meta(const GridSpec& grid) {
    return {{"origin", {grid.origin.x, grid.origin.y}},
            {"cell_size_m", grid.cell_size_m},
            {"n_rows", grid.n_rows},
            {"n_cols", grid.n_cols}};
}

nlohmann::json ramp_json() {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& s : heat_ramp()) out.push_back({{"at", s.at}, {"rgb", {s.rgb[0], s.rgb[1], s.rgb[2]}}});
    return out;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

}  // namespace

OccupancyGrid occupancy_grid(std::span<const TrackingSample> samples, const GridSpec& grid,
                             const OccupancyOptions& options) {
    OccupancyGrid g = empty_grid(grid);
    if (!samples.empty()) g.player = samples.front().player_index;
    for (const auto& s : samples) {
        if (s.player_index != g.player) {
            throw input_error("mixed_players", "occupancy grid expects samples of a single player");
        }
        accumulate(g, s.planar(), options);
    }
    return g;
}

OccupancyGrid occupancy_grid(std::span<const Point2> points, const GridSpec& grid, const OccupancyOptions& options) {
    OccupancyGrid g = empty_grid(grid);
    for (const Point2& p : points) accumulate(g, p, options);
    return g;
}

std::vector<double> relative_frequencies(const OccupancyGrid& grid) {
    if (grid.total <= 0) throw input_error("empty_grid", "relative frequencies need at least one in-grid sample");
    std::vector<double> out(grid.counts.size());
    const double total = static_cast<double>(grid.total);
    std::transform(grid.counts.begin(), grid.counts.end(), out.begin(),
                   [&](std::int64_t c) { return static_cast<double>(c) / total; });
    return out;
}

double DensityField::max_value() const {
    return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

double normal_reference_bandwidth(std::span<const double> values) {
    const double sd = stats::sample_stddev(values);
    if (!(sd > 0.0)) throw input_error("degenerate_bandwidth", "zero variance on a KDE axis; supply bandwidths");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double iqr = stats::quantile_sorted(sorted, 0.75) - stats::quantile_sorted(sorted, 0.25);
    const double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
    return 4.0 * 1.06 * spread * std::pow(static_cast<double>(values.size()), -0.2);
}

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    const double step = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = lo + step * i;
    v.back() = hi;
    return v;
}

/// weights[g * m + k] = N(grid[g] - data[k]; 0, sd)
std::vector<double> kernel_matrix(const std::vector<double>& grid, std::span<const double> data, double sd) {
    const std::size_t m = data.size();
    std::vector<double> w(grid.size() * m);
    const double norm = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * sd);
    for (std::size_t g = 0; g < grid.size(); ++g) {
        for (std::size_t k = 0; k < m; ++k) {
            const double z = (grid[g] - data[k]) / sd;
            w[g * m + k] = norm * std::exp(-0.5 * z * z);
        }
    }
    return w;
}

}  // namespace

DensityField kde2(std::span<const Point2> points, const KdeOptions& options) {
    if (points.size() < 2) throw input_error("too_few_samples", "KDE needs at least two samples");
    if (options.n < 2) throw config_error("argument", "KDE grid resolution must be at least 2");

    std::vector<double> px(points.size()), py(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        px[i] = points[i].x;
        py[i] = points[i].y;
    }

    DensityField f;
    if (options.bandwidths) {
        f.hx = (*options.bandwidths)[0];
        f.hy = (*options.bandwidths)[1];
        if (!(f.hx > 0.0) || !(f.hy > 0.0)) throw config_error("argument", "bandwidths must be positive");
    } else {
        f.hx = normal_reference_bandwidth(px);
        f.hy = normal_reference_bandwidth(py);
    }

    Bounds b;
    if (options.limits) {
        b = *options.limits;
    } else {
        auto [xlo, xhi] = std::minmax_element(px.begin(), px.end());
        auto [ylo, yhi] = std::minmax_element(py.begin(), py.end());
        b = {*xlo, *xhi, *ylo, *yhi};
    }
    if (!(b.x_min < b.x_max) || !(b.y_min < b.y_max)) {
        throw input_error("degenerate_range", "KDE evaluation range is empty on one axis");
    }
    f.xs = linspace(b.x_min, b.x_max, options.n);
    f.ys = linspace(b.y_min, b.y_max, options.n);

    const auto wx = kernel_matrix(f.xs, px, f.hx / 4.0);
    const auto wy = kernel_matrix(f.ys, py, f.hy / 4.0);
    const std::size_t m = points.size();
    const std::size_t nx = f.xs.size(), ny = f.ys.size();
    f.values.assign(nx * ny, 0.0);
    for (std::size_t j = 0; j < ny; ++j) {
        const double* rowy = &wy[j * m];
        for (std::size_t i = 0; i < nx; ++i) {
            const double* rowx = &wx[i * m];
            double acc = 0.0;
            for (std::size_t k = 0; k < m; ++k) acc += rowx[k] * rowy[k];
            f.values[j * nx + i] = acc / static_cast<double>(m);
        }
    }
    return f;
}

std::vector<double> contour_levels(const DensityField& field, int k, double floor_eps) {
    if (k < 1) throw config_error("argument", "contour level count must be positive");
    if (field.values.empty()) throw input_error("degenerate_field", "empty density field");
    auto [lo, hi] = std::minmax_element(field.values.begin(), field.values.end());
    const double peak = *hi;
    if (!(peak > *lo)) throw input_error("degenerate_field", "density field is constant");

    std::vector<double> levels;
    levels.reserve(static_cast<std::size_t>(k) + 1);
    for (int i = 0; i < k; ++i) levels.push_back(peak * (k - i) / k);
    levels.push_back(std::min(floor_eps, levels.back() / 2.0));
    return levels;
}

std::vector<ColorStop> heat_ramp() {
    return {{0.0, {255, 255, 255}}, {0.5, {255, 255, 0}}, {1.0, {255, 0, 0}}};
}

std::array<std::uint8_t, 3> ramp_color(const std::vector<ColorStop>& ramp, double t) {
    t = std::clamp(t, 0.0, 1.0);
    for (std::size_t i = 1; i < ramp.size(); ++i) {
        if (t <= ramp[i].at) {
            const auto& a = ramp[i - 1];
            const auto& b = ramp[i];
            const double w = b.at > a.at ? (t - a.at) / (b.at - a.at) : 1.0;
            std::array<std::uint8_t, 3> c{};
            for (std::size_t ch = 0; ch < 3; ++ch) {
                c[ch] = static_cast<std::uint8_t>(std::lround(a.rgb[ch] + w * (b.rgb[ch] - a.rgb[ch])));
            }
            return c;
        }
    }
    return ramp.back().rgb;
}

std::string occupancy_to_json(const OccupancyGrid& g) {
    nlohmann::json x_axis = nlohmann::json::array(), y_axis = nlohmann::json::array();
    for (int c = 0; c < g.grid.n_cols; ++c) x_axis.push_back(g.grid.origin.x + c * g.grid.cell_size_m);
    for (int r = 0; r < g.grid.n_rows; ++r) y_axis.push_back(g.grid.origin.y + r * g.grid.cell_size_m);
    nlohmann::json doc = {{"kind", "occupancy"},
                          {"player", g.player},
                          {"grid", grid_meta(g.grid)},
                          {"x_axis", x_axis},
                          {"y_axis", y_axis},
                          {"values", g.counts},
                          {"total", g.total},
                          {"out_of_grid", g.out_of_grid},
                          {"excluded_bench", g.excluded_bench},
                          {"color_ramp", ramp_json()}};
    return doc.dump();
}

std::string occupancy_to_csv(const OccupancyGrid& g) {
    std::ostringstream os;
    os << "# kind=occupancy player=" << g.player << " origin=" << g.grid.origin.x << ',' << g.grid.origin.y
       << " cell_size_m=" << g.grid.cell_size_m << " n_rows=" << g.grid.n_rows << " n_cols=" << g.grid.n_cols
       << " total=" << g.total << " out_of_grid=" << g.out_of_grid << '\n';
    for (int r = 0; r < g.grid.n_rows; ++r) {
        for (int c = 0; c < g.grid.n_cols; ++c) os << (c ? "," : "") << g.at(r, c);
        os << '\n';
    }
    return os.str();
}

std::string density_to_json(const DensityField& f, std::span<const double> levels) {
    nlohmann::json doc = {{"kind", "density"},
                          {"x_axis", f.xs},
                          {"y_axis", f.ys},
                          {"bandwidths", {f.hx, f.hy}},
                          {"values", f.values},
                          {"color_ramp", ramp_json()}};
    if (!levels.empty()) doc["contour_levels"] = std::vector<double>(levels.begin(), levels.end());
    return doc.dump();
}

std::string density_to_csv(const DensityField& f) {
    std::ostringstream os;
    os << "# kind=density nx=" << f.xs.size() << " ny=" << f.ys.size() << " x_min=" << fmt(f.xs.front())
       << " x_max=" << fmt(f.xs.back()) << " y_min=" << fmt(f.ys.front()) << " y_max=" << fmt(f.ys.back())
       << " hx=" << fmt(f.hx) << " hy=" << fmt(f.hy) << '\n';
    for (std::size_t j = 0; j < f.ys.size(); ++j) {
        for (std::size_t i = 0; i < f.xs.size(); ++i) os << (i ? "," : "") << fmt(f.at(i, j));
        os << '\n';
    }
    return os.str();
}

void write_heatmap_png(const std::string& path, std::span<const double> values, int rows, int cols,
                       int pixels_per_cell) {
    if (rows <= 0 || cols <= 0 || values.size() != static_cast<std::size_t>(rows * cols)) {
        throw invariant_error("png", "matrix shape does not match its values");
    }
    const double peak = *std::max_element(values.begin(), values.end());
    const auto ramp = heat_ramp();
    const int width = cols * pixels_per_cell;
    const int height = rows * pixels_per_cell;

    std::unique_ptr<FILE, int (*)(FILE*)> file(std::fopen(path.c_str(), "wb"), &std::fclose);
    if (!file) throw input_error("io", "cannot open '" + path + "' for writing");

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw invariant_error("png", "libpng initialisation failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw invariant_error("png", "libpng write failed");
    }
    png_init_io(png, file.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    std::vector<png_byte> line(static_cast<std::size_t>(width) * 3);
    for (int y = 0; y < height; ++y) {
        const int r = rows - 1 - y / pixels_per_cell;  // image top = highest row
        for (int x = 0; x < width; ++x) {
            const double v = values[static_cast<std::size_t>(r * cols + x / pixels_per_cell)];
            const auto rgb = ramp_color(ramp, peak > 0.0 ? v / peak : 0.0);
            std::copy(rgb.begin(), rgb.end(), line.begin() + x * 3);
        }
        png_write_row(png, line.data());
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

}  // namespace courtlab
