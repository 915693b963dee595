#pragma once

#include <cstdint>
#include <vector>

#include "qds/algo/config.hpp"
#include "qds/analysis.hpp"
#include "qds/env/environment.hpp"

namespace qds {

struct GenerationRecord {
    std::uint32_t generation = 0;
    double coverage = 0.0;
    double max_behavior = 0.0;
    int plateau_index = -1;        // SSF only; -1 before the first plateau
    std::size_t archive_size = 0;
    double novelty_mean = 0.0;     // meaningless for MAP-Elites
};

struct AnalysisOptions {
    std::size_t bins = 100;
    /// Coverage counts archive and current population by default; restrict
    /// to the archive alone when set.
    bool archive_only = false;
    std::size_t stall_threshold = 500;
};

struct VerifyOptions {
    bool invariants = false;
    std::size_t oracle_interval = 0;
};

/// Full trace of one seeded run: one record per generation (G_max + 1
/// including generation 0), final snapshots, and the covered coverage bins
/// per generation (packed bitsets) for cross-run unions.
struct RunResult {
    std::vector<GenerationRecord> series;
    std::vector<Individual> final_population; // empty for MAP-Elites
    std::vector<Individual> final_archive;
    std::vector<std::vector<std::uint64_t>> covered_bins;
    CoverageSpec coverage_spec;
    bool is_ssf = false;
    bool has_novelty = true; // false for MAP-Elites
    StallReport stall;       // meaningful for SSF runs
    double max_behavior_overall = 0.0;
};

RunResult run(const Environment& env, const AlgorithmConfig& algorithm,
              std::uint64_t seed, std::uint32_t g_max,
              const AnalysisOptions& analysis = {}, const VerifyOptions& verify = {});

} // namespace qds
