#include "qds/harness/batch.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "qds/env/spiral.hpp"
#include "qds/env/ssf.hpp"
#include "qds/version.hpp"

namespace qds {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

double parse_double(const std::string& s) {
    return std::strtod(s.c_str(), nullptr);
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw RunFailure("cannot write " + path.string());
    out << content;
}

const SpiralEnv* as_spiral(const Environment& env) {
    return dynamic_cast<const SpiralEnv*>(&env);
}

std::string snapshot_csv(const Environment& env, const std::vector<Individual>& inds) {
    const bool spiral = as_spiral(env) != nullptr;
    std::string out = "id,born_at";
    for (std::size_t i = 0; i < env.genotype_dim(); ++i)
        out += ",g" + std::to_string(i);
    for (std::size_t i = 0; i < env.behavior_dim(); ++i)
        out += ",b" + std::to_string(i);
    if (spiral)
        out += ",angle_t,arc_length_s";
    out += "\n";

    for (const auto& ind : inds) {
        out += std::to_string(ind.id) + "," + std::to_string(ind.born_at);
        for (const double g : ind.genotype)
            out += "," + format_double(g);
        for (const double b : ind.behavior)
            out += "," + format_double(b);
        if (spiral) {
            out += "," + format_double(ind.aux.at(0));
            out += "," + format_double(ind.aux.at(1));
        }
        out += "\n";
    }
    return out;
}

std::string series_csv(const RunResult& result) {
    std::string out =
        "generation,coverage,max_behavior,plateau_index,archive_size,"
        "population_novelty_mean\n";
    for (const auto& rec : result.series) {
        out += std::to_string(rec.generation);
        out += "," + format_double(rec.coverage);
        out += "," + format_double(rec.max_behavior);
        out += ",";
        if (result.is_ssf)
            out += std::to_string(rec.plateau_index);
        out += "," + std::to_string(rec.archive_size);
        out += ",";
        if (result.has_novelty)
            out += format_double(rec.novelty_mean);
        out += "\n";
    }
    return out;
}

std::string bins_to_hex(const std::vector<std::uint64_t>& bins) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(bins.size() * 16);
    for (const std::uint64_t word : bins)
        for (int shift = 60; shift >= 0; shift -= 4)
            out += digits[(word >> shift) & 0xF];
    return out;
}

std::vector<std::uint64_t> hex_to_bins(const std::string& hex) {
    std::vector<std::uint64_t> bins(hex.size() / 16, 0);
    for (std::size_t w = 0; w < bins.size(); ++w)
        bins[w] = std::stoull(hex.substr(w * 16, 16), nullptr, 16);
    return bins;
}

std::string bins_csv(const RunResult& result) {
    std::string out = "generation,covered_bins\n";
    for (std::size_t g = 0; g < result.covered_bins.size(); ++g)
        out += std::to_string(g) + "," + bins_to_hex(result.covered_bins[g]) + "\n";
    return out;
}

std::string run_dir_name(std::size_t index, std::uint64_t seed) {
    std::string idx = std::to_string(index);
    while (idx.size() < 3)
        idx.insert(idx.begin(), '0');
    return "run_" + idx + "_seed_" + std::to_string(seed);
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name)
                return i;
        throw RunFailure("csv column missing: " + name);
    }
};

CsvTable read_csv(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw RunFailure("cannot read " + path.string());
    CsvTable table;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            if (comma == std::string::npos) {
                cells.push_back(line.substr(start));
                break;
            }
            cells.push_back(line.substr(start, comma - start));
            start = comma + 1;
        }
        if (first) {
            table.header = std::move(cells);
            first = false;
        } else {
            table.rows.push_back(std::move(cells));
        }
    }
    return table;
}

std::vector<double> final_values_from_result(const ExperimentConfig& config,
                                             const RunResult& result) {
    std::vector<double> values;
    if (!config.analysis.archive_only)
        for (const auto& ind : result.final_population)
            values.push_back(config.env->binning_value(ind));
    for (const auto& ind : result.final_archive)
        values.push_back(config.env->binning_value(ind));
    return values;
}

/// Binning values recovered from a stored snapshot csv: arc length column
/// for the spiral, radial mapping recomputed from the genotype for SSF, the
/// behavior value itself for the deceptive mixture.
void append_final_values_from_csv(const ExperimentConfig& config, const CsvTable& table,
                                  std::vector<double>& values) {
    const std::string env_name = config.resolved["environment"]["name"].get<std::string>();
    if (env_name == "spiral") {
        const std::size_t col = table.column("arc_length_s");
        for (const auto& row : table.rows)
            values.push_back(parse_double(row[col]));
    } else if (env_name == "ssf") {
        std::vector<std::size_t> gcols;
        for (std::size_t i = 0; i < config.env->genotype_dim(); ++i)
            gcols.push_back(table.column("g" + std::to_string(i)));
        for (const auto& row : table.rows) {
            double sq = 0.0;
            for (const std::size_t c : gcols) {
                const double v = parse_double(row[c]);
                sq += v * v;
            }
            const double r = std::sqrt(sq);
            const SsfBand band = ssf_locate_band(r);
            values.push_back(band.index % 2 == 1 ? band.radius : r);
        }
    } else {
        const std::size_t col = table.column("b0");
        for (const auto& row : table.rows)
            values.push_back(parse_double(row[col]));
    }
}

double median(std::vector<double> v) {
    if (v.empty())
        return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace

void write_run_dir(const fs::path& run_dir, const ExperimentConfig& config,
                   std::uint64_t seed, const RunResult& result) {
    fs::create_directories(run_dir);

    json manifest;
    manifest["toolkit_version"] = kVersion;
    manifest["seed"] = seed;
    json resolved = config.resolved;
    resolved["seeds"] = json::array({seed});
    manifest["config"] = std::move(resolved);
    manifest["derived"] = derived_constants(*config.env);
    write_file(run_dir / "manifest.json", manifest.dump(2) + "\n");

    write_file(run_dir / "series.csv", series_csv(result));
    write_file(run_dir / "final_archive.csv", snapshot_csv(*config.env, result.final_archive));
    write_file(run_dir / "final_population.csv",
               snapshot_csv(*config.env, result.final_population));
    write_file(run_dir / "coverage_bins.csv", bins_csv(result));
}

RunSummaryData summarize_run(const ExperimentConfig& config, const RunResult& result,
                             std::uint64_t seed) {
    RunSummaryData data;
    data.seed = seed;
    data.coverage_series.reserve(result.series.size());
    data.max_behavior_series.reserve(result.series.size());
    for (const auto& rec : result.series) {
        data.coverage_series.push_back(rec.coverage);
        data.max_behavior_series.push_back(rec.max_behavior);
        if (result.is_ssf)
            data.plateau_series.push_back(rec.plateau_index);
    }
    data.bins_series = result.covered_bins;
    data.final_values = final_values_from_result(config, result);
    return data;
}

BatchAggregate compute_aggregate(const ExperimentConfig& config,
                                 std::vector<RunSummaryData> runs) {
    if (runs.empty())
        throw RunFailure("aggregate: no runs");

    BatchAggregate agg;
    agg.spec = CoverageSpec{0.0, config.env->binning_domain_max(), config.analysis.bins};
    agg.is_ssf = dynamic_cast<const SsfEnv*>(config.env.get()) != nullptr;
    agg.stall_threshold = config.analysis.stall_threshold;
    if (config.resolved["environment"]["name"].get<std::string>() == "deceptive")
        agg.split_value = derived_constants(*config.env)["m1"].get<double>();

    std::vector<std::vector<double>> coverage_per_run;
    std::vector<std::vector<std::vector<std::uint64_t>>> bins_per_run;
    for (const auto& rd : runs) {
        coverage_per_run.push_back(rd.coverage_series);
        bins_per_run.push_back(rd.bins_series);
    }
    agg.series = aggregate_series(coverage_per_run, bins_per_run, agg.spec);

    agg.final_histogram.assign(agg.spec.bins, 0);
    for (const auto& rd : runs) {
        agg.final_coverage.push_back(rd.coverage_series.back());
        double max_overall = 0.0;
        bool full_any = false;
        for (const double c : rd.coverage_series)
            full_any = full_any || c == 1.0;
        for (const double m : rd.max_behavior_series)
            max_overall = std::max(max_overall, m);
        agg.max_behavior_overall.push_back(max_overall);
        if (rd.coverage_series.back() == 1.0)
            ++agg.runs_full_coverage_final;
        if (full_any)
            ++agg.runs_full_coverage_any;
        if (agg.is_ssf)
            agg.stalls.push_back(ssf_stall_report(rd.plateau_series, agg.stall_threshold));
        const auto hist = behavior_histogram(rd.final_values, agg.spec);
        for (std::size_t b = 0; b < hist.size(); ++b)
            agg.final_histogram[b] += hist[b];
        agg.final_values_total += rd.final_values.size();
        if (agg.split_value) {
            for (const double v : rd.final_values)
                if (v > *agg.split_value)
                    ++agg.final_values_above_split;
            if (max_overall > *agg.split_value)
                ++agg.runs_above_split;
        }
    }

    const double n = static_cast<double>(runs.size());
    double sum = 0.0;
    for (const double c : agg.final_coverage)
        sum += c;
    agg.final_coverage_mean = sum / n;
    double var = 0.0;
    for (const double c : agg.final_coverage) {
        const double d = c - agg.final_coverage_mean;
        var += d * d;
    }
    agg.final_coverage_std = std::sqrt(var / n);
    agg.final_coverage_median = median(agg.final_coverage);
    agg.union_coverage_final = agg.series.union_coverage.back();

    if (agg.is_ssf) {
        std::vector<double> plateaus;
        for (const auto& s : agg.stalls) {
            plateaus.push_back(s.last_plateau);
            if (s.stalled)
                ++agg.stalled_runs;
        }
        agg.median_final_plateau = median(plateaus);
    }

    agg.runs = std::move(runs);
    return agg;
}

void write_aggregate_files(const fs::path& batch_dir, const BatchAggregate& agg) {
    std::string csv = "generation,coverage_mean,coverage_std,union_coverage\n";
    for (std::size_t g = 0; g < agg.series.coverage_mean.size(); ++g) {
        csv += std::to_string(g);
        csv += "," + format_double(agg.series.coverage_mean[g]);
        csv += "," + format_double(agg.series.coverage_std[g]);
        csv += "," + format_double(agg.series.union_coverage[g]);
        csv += "\n";
    }
    write_file(batch_dir / "aggregate.csv", csv);

    json out;
    out["runs"] = agg.runs.size();
    out["generations"] = agg.series.coverage_mean.size();
    out["bins"] = agg.spec.bins;
    out["binning_domain_max"] = agg.spec.hi;
    out["final_coverage_mean"] = agg.final_coverage_mean;
    out["final_coverage_std"] = agg.final_coverage_std;
    out["final_coverage_median"] = agg.final_coverage_median;
    out["union_coverage_final"] = agg.union_coverage_final;
    out["runs_full_coverage_final"] = agg.runs_full_coverage_final;
    out["runs_full_coverage_any"] = agg.runs_full_coverage_any;
    if (agg.is_ssf) {
        out["median_final_plateau"] = agg.median_final_plateau;
        out["stalled_runs"] = agg.stalled_runs;
        out["stall_threshold"] = agg.stall_threshold;
    }
    if (agg.split_value) {
        out["split_value"] = *agg.split_value;
        out["runs_above_split"] = agg.runs_above_split;
        out["final_values_above_split"] = agg.final_values_above_split;
        out["final_values_total"] = agg.final_values_total;
    }
    json per_run = json::array();
    for (std::size_t r = 0; r < agg.runs.size(); ++r) {
        json rj;
        rj["seed"] = agg.runs[r].seed;
        rj["final_coverage"] = agg.final_coverage[r];
        rj["max_behavior_overall"] = agg.max_behavior_overall[r];
        if (agg.is_ssf) {
            rj["last_plateau"] = agg.stalls[r].last_plateau;
            rj["generations_on_last_plateau"] = agg.stalls[r].generations_on_it;
            rj["stalled"] = agg.stalls[r].stalled;
        }
        per_run.push_back(std::move(rj));
    }
    out["per_run"] = std::move(per_run);
    out["final_histogram"] = agg.final_histogram;
    write_file(batch_dir / "aggregate.json", out.dump(2) + "\n");
}

std::vector<RunResult> run_batch(const ExperimentConfig& config, const BatchOptions& opts) {
    const std::size_t n = config.seeds.size();
    fs::create_directories(opts.out_dir);

    std::vector<RunResult> results(n);
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::string first_error;

    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n)
                return;
            {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error.empty())
                    return;
            }
            try {
                RunResult result = run(*config.env, config.algorithm, config.seeds[i],
                                       config.generations, config.analysis, config.verify);
                write_run_dir(opts.out_dir / run_dir_name(i, config.seeds[i]), config,
                              config.seeds[i], result);
                results[i] = std::move(result);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (first_error.empty())
                    first_error = "run " + std::to_string(i) + " (seed " +
                                  std::to_string(config.seeds[i]) + "): " + e.what();
            }
        }
    };

    std::size_t workers = opts.workers > 0 ? opts.workers
                                           : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, n);
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (std::size_t w = 0; w < workers; ++w)
            threads.emplace_back(worker);
        for (auto& t : threads)
            t.join();
    }

    if (!first_error.empty()) {
        write_file(opts.out_dir / "FAILED", first_error + "\n");
        throw RunFailure(first_error);
    }

    std::vector<RunSummaryData> summaries;
    for (std::size_t i = 0; i < n; ++i)
        summaries.push_back(summarize_run(config, results[i], config.seeds[i]));
    write_aggregate_files(opts.out_dir, compute_aggregate(config, std::move(summaries)));
    return results;
}

void aggregate_from_disk(const fs::path& batch_dir) {
    std::vector<fs::path> run_dirs;
    for (const auto& entry : fs::directory_iterator(batch_dir))
        if (entry.is_directory() && entry.path().filename().string().rfind("run_", 0) == 0)
            run_dirs.push_back(entry.path());
    std::sort(run_dirs.begin(), run_dirs.end());
    if (run_dirs.empty())
        throw RunFailure("aggregate: no run directories under " + batch_dir.string());

    std::optional<ExperimentConfig> config;
    json reference_config;
    std::vector<RunSummaryData> summaries;
    for (const auto& dir : run_dirs) {
        std::ifstream in(dir / "manifest.json", std::ios::binary);
        if (!in)
            throw RunFailure("aggregate: missing manifest in " + dir.string());
        json manifest = json::parse(in);

        json cfg_no_seed = manifest["config"];
        cfg_no_seed.erase("seeds");
        if (!config) {
            reference_config = cfg_no_seed;
            config = load_config(manifest);
        } else if (cfg_no_seed != reference_config) {
            throw ConfigError("aggregate: mixed configurations in " + batch_dir.string());
        }

        RunSummaryData data;
        data.seed = manifest["seed"].get<std::uint64_t>();

        const CsvTable series = read_csv(dir / "series.csv");
        const std::size_t cov_col = series.column("coverage");
        const std::size_t max_col = series.column("max_behavior");
        const std::size_t plat_col = series.column("plateau_index");
        const bool is_ssf =
            manifest["config"]["environment"]["name"].get<std::string>() == "ssf";
        for (const auto& row : series.rows) {
            data.coverage_series.push_back(parse_double(row[cov_col]));
            data.max_behavior_series.push_back(parse_double(row[max_col]));
            if (is_ssf)
                data.plateau_series.push_back(static_cast<int>(std::stol(row[plat_col])));
        }

        const CsvTable bins = read_csv(dir / "coverage_bins.csv");
        const std::size_t hex_col = bins.column("covered_bins");
        for (const auto& row : bins.rows)
            data.bins_series.push_back(hex_to_bins(row[hex_col]));

        if (!config->analysis.archive_only)
            append_final_values_from_csv(*config, read_csv(dir / "final_population.csv"),
                                         data.final_values);
        append_final_values_from_csv(*config, read_csv(dir / "final_archive.csv"),
                                     data.final_values);
        summaries.push_back(std::move(data));
    }

    write_aggregate_files(batch_dir, compute_aggregate(*config, std::move(summaries)));
}

} // namespace qds
