#pragma once

#include <span>
#include <vector>

namespace courtlab::stats {

/// Sample quantile by linear interpolation between order statistics
/// (Hyndman & Fan type 7). `sorted` must be ascending and non-empty.
double quantile_sorted(std::span<const double> sorted, double p);

double mean(std::span<const double> values);

/// Sample standard deviation with the n-1 denominator; 0 for n < 2.
double sample_stddev(std::span<const double> values);

/// Median of an unsorted copy.
double median(std::vector<double> values);

}  // namespace courtlab::stats
