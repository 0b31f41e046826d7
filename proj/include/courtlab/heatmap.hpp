#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "courtlab/court.hpp"
#include "courtlab/tracking.hpp"

namespace courtlab {

struct OccupancyGrid {
    GridSpec grid;
    std::vector<std::int64_t> counts;  // row-major, n_rows x n_cols
    int player = 0;
    std::int64_t total = 0;            // in-grid samples
    std::int64_t out_of_grid = 0;
    std::int64_t excluded_bench = 0;

    std::int64_t at(int row, int col) const {
        return counts[static_cast<std::size_t>(row * grid.n_cols + col)];
    }
};

struct OccupancyOptions {
    bool exclude_bench = false;
};

/// Counts one player's samples per grid cell. Throws if the samples mix
/// players.
OccupancyGrid occupancy_grid(std::span<const TrackingSample> samples, const GridSpec& grid,
                             const OccupancyOptions& options = {});
OccupancyGrid occupancy_grid(std::span<const Point2> points, const GridSpec& grid,
                             const OccupancyOptions& options = {});

/// Each cell divided by the grid total. Throws on an empty grid.
std::vector<double> relative_frequencies(const OccupancyGrid& grid);

struct Bounds {
    double x_min = 0, x_max = 0, y_min = 0, y_max = 0;
};

/// Gaussian product-kernel density sampled on an nx x ny lattice.
/// `values[j * xs.size() + i]` is the density at (xs[i], ys[j]).
struct DensityField {
    std::vector<double> xs;
    std::vector<double> ys;
    std::vector<double> values;
    double hx = 0.0;  // bandwidths in the normal-reference convention;
    double hy = 0.0;  // the kernel standard deviation is h / 4

    double at(std::size_t i, std::size_t j) const { return values[j * xs.size() + i]; }
    double max_value() const;
};

struct KdeOptions {
    int n = 100;
    std::optional<std::array<double, 2>> bandwidths;
    /// Evaluation rectangle; the data range when unset.
    std::optional<Bounds> limits;
};

/// Normal-reference bandwidth 4 * 1.06 * min(sd, IQR / 1.34) * m^(-1/5).
/// Falls back to sd when the IQR is zero. Throws when sd is zero.
double normal_reference_bandwidth(std::span<const double> values);

DensityField kde2(std::span<const Point2> points, const KdeOptions& options = {});

/// Levels {M, (k-1)M/k, ..., M/k, floor} for peak density M, strictly
/// decreasing. Throws on a constant field.
std::vector<double> contour_levels(const DensityField& field, int k = 10, double floor_eps = 1e-5);

struct ColorStop {
    double at;  // position in [0, 1]
    std::array<std::uint8_t, 3> rgb;
};

/// White (low) through yellow to red (high).
std::vector<ColorStop> heat_ramp();
std::array<std::uint8_t, 3> ramp_color(const std::vector<ColorStop>& ramp, double t);

std::string occupancy_to_json(const OccupancyGrid& grid);
std::string occupancy_to_csv(const OccupancyGrid& grid);
std::string density_to_json(const DensityField& field, std::span<const double> levels = {});
std::string density_to_csv(const DensityField& field);

/// Rasterizes a row-major matrix (row 0 at the bottom) with the heat ramp.
void write_heatmap_png(const std::string& path, std::span<const double> values, int rows, int cols,
                       int pixels_per_cell = 16);

}  // namespace courtlab
