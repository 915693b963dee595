#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qds/harness/config.hpp"

namespace qds {

/// A run aborted; the batch directory contains a FAILED marker describing
/// the partial results.
struct RunFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BatchOptions {
    std::filesystem::path out_dir;
    std::size_t workers = 0; // 0: hardware concurrency
};

/// Everything the cross-run aggregation needs from one run; built either
/// from an in-memory RunResult or re-read from the run directory, so the
/// stored batch can be re-aggregated reproducibly.
struct RunSummaryData {
    std::uint64_t seed = 0;
    std::vector<double> coverage_series;
    std::vector<double> max_behavior_series;
    std::vector<int> plateau_series; // SSF only
    std::vector<std::vector<std::uint64_t>> bins_series;
    std::vector<double> final_values; // binning values of the final counted set
};

struct BatchAggregate {
    CoverageSpec spec;
    AggregateSeries series;
    std::vector<RunSummaryData> runs;
    bool is_ssf = false;
    std::size_t stall_threshold = 500;
    std::optional<double> split_value; // deceptive: M1

    // derived summaries
    std::vector<double> final_coverage;
    double final_coverage_mean = 0.0;
    double final_coverage_std = 0.0;
    double final_coverage_median = 0.0;
    double union_coverage_final = 0.0;
    std::size_t runs_full_coverage_final = 0;
    std::size_t runs_full_coverage_any = 0;
    std::vector<double> max_behavior_overall;
    std::vector<StallReport> stalls;        // SSF
    double median_final_plateau = 0.0;      // SSF
    std::size_t stalled_runs = 0;           // SSF
    std::vector<std::uint64_t> final_histogram;
    std::size_t runs_above_split = 0;        // deceptive
    std::uint64_t final_values_above_split = 0;
    std::uint64_t final_values_total = 0;
};

/// Executes every seed of the config (possibly across workers), writes one
/// directory per run plus batch-level aggregate files, and returns the run
/// results in seed order.
std::vector<RunResult> run_batch(const ExperimentConfig& config, const BatchOptions& opts);

RunSummaryData summarize_run(const ExperimentConfig& config, const RunResult& result,
                             std::uint64_t seed);

BatchAggregate compute_aggregate(const ExperimentConfig& config,
                                 std::vector<RunSummaryData> runs);

void write_aggregate_files(const std::filesystem::path& batch_dir,
                           const BatchAggregate& agg);

/// Recomputes the aggregate files of a stored batch directory from the
/// per-run files alone (the independent recount path behind the `aggregate`
/// CLI subcommand).
void aggregate_from_disk(const std::filesystem::path& batch_dir);

/// Per-run writers (also used by tests).
void write_run_dir(const std::filesystem::path& run_dir, const ExperimentConfig& config,
                   std::uint64_t seed, const RunResult& result);

std::string format_double(double v);

} // namespace qds
