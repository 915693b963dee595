#include "qds/analysis.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qds {

namespace {

void check_spec(const CoverageSpec& spec) {
    if (spec.bins < 1)
        throw std::invalid_argument("coverage: bin count must be >= 1");
    if (!(spec.lo < spec.hi))
        throw std::invalid_argument("coverage: degenerate binning domain");
}

} // namespace

std::size_t coverage_bin(double value, const CoverageSpec& spec) {
    const double width = (spec.hi - spec.lo) / static_cast<double>(spec.bins);
    double idx = std::floor((value - spec.lo) / width);
    if (idx < 0.0)
        idx = 0.0;
    const double last = static_cast<double>(spec.bins - 1);
    if (idx > last)
        idx = last;
    return static_cast<std::size_t>(idx);
}

std::vector<std::uint64_t> covered_bins(std::span<const double> values,
                                        const CoverageSpec& spec) {
    check_spec(spec);
    std::vector<std::uint64_t> bits(spec.bins / 64 + 1, 0);
    for (const double v : values) {
        const std::size_t b = coverage_bin(v, spec);
        bits[b >> 6] |= std::uint64_t{1} << (b & 63);
    }
    return bits;
}

std::size_t popcount_bins(const std::vector<std::uint64_t>& bits) {
    std::size_t n = 0;
    for (const std::uint64_t w : bits)
        n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

double coverage_of_bins(const std::vector<std::uint64_t>& bits, const CoverageSpec& spec) {
    return static_cast<double>(popcount_bins(bits)) / static_cast<double>(spec.bins);
}

double coverage(std::span<const double> values, const CoverageSpec& spec) {
    return coverage_of_bins(covered_bins(values, spec), spec);
}

std::vector<std::uint64_t> behavior_histogram(std::span<const double> values,
                                              const CoverageSpec& spec) {
    check_spec(spec);
    std::vector<std::uint64_t> counts(spec.bins, 0);
    for (const double v : values)
        ++counts[coverage_bin(v, spec)];
    return counts;
}

StallReport ssf_stall_report(std::span<const int> plateau_series, std::size_t threshold) {
    StallReport report;
    if (plateau_series.empty())
        return report;

    int best = plateau_series.front();
    std::size_t first_gen_at_best = 0;
    for (std::size_t g = 1; g < plateau_series.size(); ++g) {
        if (plateau_series[g] > best) {
            best = plateau_series[g];
            first_gen_at_best = g;
        }
    }
    report.last_plateau = best;
    report.generations_on_it = plateau_series.size() - 1 - first_gen_at_best;
    report.stalled = report.generations_on_it >= threshold;
    return report;
}

AggregateSeries aggregate_series(
    const std::vector<std::vector<double>>& coverage_per_run,
    const std::vector<std::vector<std::vector<std::uint64_t>>>& bins_per_run,
    const CoverageSpec& spec) {
    if (coverage_per_run.empty())
        throw std::invalid_argument("aggregate: no runs");
    const std::size_t gens = coverage_per_run.front().size();
    for (const auto& c : coverage_per_run)
        if (c.size() != gens)
            throw std::invalid_argument("aggregate: runs have different series lengths");
    for (const auto& b : bins_per_run)
        if (b.size() != gens)
            throw std::invalid_argument("aggregate: bins series length mismatch");

    const double n = static_cast<double>(coverage_per_run.size());
    AggregateSeries agg;
    agg.coverage_mean.resize(gens);
    agg.coverage_std.resize(gens);
    agg.union_coverage.resize(gens);

    const std::size_t words = spec.bins / 64 + 1;
    std::vector<std::uint64_t> u(words);
    for (std::size_t g = 0; g < gens; ++g) {
        double sum = 0.0;
        for (const auto& c : coverage_per_run)
            sum += c[g];
        const double mean = sum / n;
        double var = 0.0;
        for (const auto& c : coverage_per_run) {
            const double d = c[g] - mean;
            var += d * d;
        }
        agg.coverage_mean[g] = mean;
        agg.coverage_std[g] = std::sqrt(var / n);

        std::fill(u.begin(), u.end(), 0);
        for (const auto& b : bins_per_run)
            for (std::size_t w = 0; w < words; ++w)
                u[w] |= b[g][w];
        agg.union_coverage[g] = coverage_of_bins(u, spec);
    }
    return agg;
}

} // namespace qds
