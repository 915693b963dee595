#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace qds {

/// Binning domain for coverage and histograms over the scalar binning value
/// of an environment (arc length / radial behavior / mixture density).
struct CoverageSpec {
    double lo = 0.0;
    double hi = 1.0;
    std::size_t bins = 100;
};

/// Bin index with boundary clamping (same convention as the grid archive).
std::size_t coverage_bin(double value, const CoverageSpec& spec);

/// Fraction of bins containing at least one value.
double coverage(std::span<const double> values, const CoverageSpec& spec);

std::vector<std::uint64_t> behavior_histogram(std::span<const double> values,
                                              const CoverageSpec& spec);

/// Covered bins as a packed bitset (bins/64 + 1 words).
std::vector<std::uint64_t> covered_bins(std::span<const double> values,
                                        const CoverageSpec& spec);
double coverage_of_bins(const std::vector<std::uint64_t>& bits, const CoverageSpec& spec);
std::size_t popcount_bins(const std::vector<std::uint64_t>& bits);

/// Plateau progress of an SSF run. Built from the per-generation plateau
/// indices of max radial behavior over population and archive; progress is
/// cumulative, so a transient loss of the frontier individual does not reset
/// the count.
struct StallReport {
    int last_plateau = -1;      // highest plateau index reached
    std::size_t generations_on_it = 0; // generations since it was first reached
    bool stalled = false;       // no progress for >= threshold generations
};

StallReport ssf_stall_report(std::span<const int> plateau_series,
                             std::size_t threshold = 500);

/// Per-generation batch statistics over runs of one configuration.
struct AggregateSeries {
    std::vector<double> coverage_mean;
    std::vector<double> coverage_std;   // population standard deviation
    std::vector<double> union_coverage; // union of covered bins across runs
};

AggregateSeries aggregate_series(const std::vector<std::vector<double>>& coverage_per_run,
                                 const std::vector<std::vector<std::vector<std::uint64_t>>>& bins_per_run,
                                 const CoverageSpec& spec);

} // namespace qds
