#include "qds/algo/run.hpp"

#include <algorithm>

#include "qds/algo/map_elites.hpp"
#include "qds/algo/novelty_search.hpp"
#include "qds/env/ssf.hpp"

namespace qds {

namespace {

struct Recorder {
    const Environment& env;
    AnalysisOptions analysis;
    CoverageSpec spec;
    bool is_ssf;
    RunResult result;

    Recorder(const Environment& env_, const AnalysisOptions& analysis_)
        : env(env_), analysis(analysis_),
          spec{0.0, env_.binning_domain_max(), analysis_.bins},
          is_ssf(dynamic_cast<const SsfEnv*>(&env_) != nullptr) {
        result.coverage_spec = spec;
        result.is_ssf = is_ssf;
    }

    void record(std::uint32_t generation, const std::vector<double>& values,
                std::size_t archive_size, double novelty_mean) {
        GenerationRecord rec;
        rec.generation = generation;
        auto bins = covered_bins(values, spec);
        rec.coverage = coverage_of_bins(bins, spec);
        rec.max_behavior =
            values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
        rec.plateau_index =
            (is_ssf && !values.empty()) ? ssf_plateau_index(rec.max_behavior) : -1;
        rec.archive_size = archive_size;
        rec.novelty_mean = novelty_mean;
        result.series.push_back(rec);
        result.covered_bins.push_back(std::move(bins));
    }

    void finish() {
        result.max_behavior_overall = 0.0;
        for (const auto& rec : result.series)
            result.max_behavior_overall =
                std::max(result.max_behavior_overall, rec.max_behavior);
        if (is_ssf) {
            std::vector<int> plateaus;
            plateaus.reserve(result.series.size());
            for (const auto& rec : result.series)
                plateaus.push_back(rec.plateau_index);
            result.stall = ssf_stall_report(plateaus, analysis.stall_threshold);
        }
    }
};

RunResult run_ns(const Environment& env, const NsConfig& config, std::uint64_t seed,
                 std::uint32_t g_max, const AnalysisOptions& analysis,
                 const VerifyOptions& verify) {
    RandomSource rng(seed);
    NoveltySearch ns(env, config, rng, {verify.invariants, verify.oracle_interval});
    Recorder recorder(env, analysis);

    std::vector<double> values;
    auto gather = [&]() {
        values.clear();
        if (!analysis.archive_only)
            for (const auto& ind : ns.population())
                values.push_back(env.binning_value(ind));
        if (const auto* ua = ns.unstructured_archive())
            for (const auto& ind : ua->members())
                values.push_back(env.binning_value(ind));
        if (const auto* ga = ns.grid_archive())
            for (const std::size_t cell : ga->occupied_cells())
                values.push_back(env.binning_value(*ga->cell(cell)));
    };

    ns.initialize();
    gather();
    recorder.record(0, values, ns.archive_size(), ns.last_novelty_mean());
    for (std::uint32_t g = 1; g <= g_max; ++g) {
        ns.step();
        gather();
        recorder.record(g, values, ns.archive_size(), ns.last_novelty_mean());
    }

    recorder.result.final_population = ns.population();
    recorder.result.final_archive = ns.archive_snapshot();
    recorder.result.has_novelty = true;
    recorder.finish();
    return std::move(recorder.result);
}

RunResult run_map_elites(const Environment& env, const MapElitesConfig& config,
                         std::uint64_t seed, std::uint32_t g_max,
                         const AnalysisOptions& analysis, const VerifyOptions& verify) {
    RandomSource rng(seed);
    MapElites me(env, config, rng, verify.invariants);
    Recorder recorder(env, analysis);

    std::vector<double> values;
    auto gather = [&]() {
        values.clear();
        for (const std::size_t cell : me.grid().occupied_cells())
            values.push_back(env.binning_value(*me.grid().cell(cell)));
    };

    me.initialize();
    gather();
    recorder.record(0, values, me.archive_size(), 0.0);
    for (std::uint32_t g = 1; g <= g_max; ++g) {
        me.step();
        gather();
        recorder.record(g, values, me.archive_size(), 0.0);
    }

    recorder.result.final_archive = me.archive_snapshot();
    recorder.result.has_novelty = false;
    recorder.finish();
    return std::move(recorder.result);
}

} // namespace

RunResult run(const Environment& env, const AlgorithmConfig& algorithm,
              std::uint64_t seed, std::uint32_t g_max, const AnalysisOptions& analysis,
              const VerifyOptions& verify) {
    if (const auto* ns = std::get_if<NsConfig>(&algorithm))
        return run_ns(env, *ns, seed, g_max, analysis, verify);
    return run_map_elites(env, std::get<MapElitesConfig>(algorithm), seed, g_max, analysis,
                          verify);
}

} // namespace qds
