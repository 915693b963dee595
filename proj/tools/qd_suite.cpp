#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qds/harness/batch.hpp"
#include "qds/harness/config.hpp"
#include "qds/version.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitRunFailure = 3;

struct RunArgs {
    std::string config_path;
    std::string preset;
    std::string out_dir;
    std::size_t workers = 0;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> runs;
    bool allow_invalid_argmax = false;
};

nlohmann::ordered_json load_doc(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw qds::ConfigError("cannot open config file: " + path);
    try {
        return nlohmann::ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw qds::ConfigError(std::string("config parse error: ") + e.what());
    }
}

qds::ExperimentConfig config_from_args(const RunArgs& args) {
    nlohmann::ordered_json doc = load_doc(args.config_path);
    const bool is_manifest = doc.is_object() && doc.contains("config");
    nlohmann::ordered_json& cfg = is_manifest ? doc["config"] : doc;
    if (args.allow_invalid_argmax && cfg.contains("environment"))
        cfg["environment"]["allow_invalid_argmax"] = true;
    if (args.seed || args.runs) {
        nlohmann::ordered_json seeds;
        seeds["base"] = args.seed.value_or(1);
        seeds["runs"] = args.runs.value_or(1);
        if (is_manifest) {
            cfg["seeds"] = seeds;
            doc.erase("seed");
            doc = cfg; // seed overrides turn a manifest back into a batch config
        } else {
            doc["seeds"] = seeds;
        }
    }
    return qds::load_config(doc);
}

int run_one_batch(const qds::ExperimentConfig& config, const std::filesystem::path& out,
                  std::size_t workers) {
    qds::BatchOptions opts;
    opts.out_dir = out;
    opts.workers = workers;
    const auto results = qds::run_batch(config, opts);
    std::cout << out.string() << ": " << results.size() << " run(s) complete\n";
    return 0;
}

int cmd_run(const RunArgs& args) {
    const std::size_t workers = args.workers;
    if (!args.preset.empty()) {
        const auto batches = qds::make_preset(args.preset, args.seed, args.runs);
        const std::filesystem::path root =
            args.out_dir.empty() ? std::filesystem::path("out") / args.preset
                                 : std::filesystem::path(args.out_dir);
        for (const auto& batch : batches)
            run_one_batch(batch.config, root / batch.name, workers);
        return 0;
    }
    qds::ExperimentConfig config = config_from_args(args);
    std::filesystem::path out = args.out_dir;
    if (out.empty())
        out = config.output.empty() ? "out/batch" : config.output;
    return run_one_batch(config, out, workers);
}

int cmd_validate(const RunArgs& args) {
    qds::ExperimentConfig config = config_from_args(args);
    std::cout << "valid: " << config.seeds.size() << " run(s), "
              << config.generations << " generation(s)\n"
              << config.resolved.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qd-suite: quality-diversity benchmark environments and reference "
                 "algorithms"};
    app.set_version_flag("--version", qds::kVersion);
    app.require_subcommand(1);

    RunArgs args;

    CLI::App* run = app.add_subcommand("run", "execute a batch of seeded runs");
    auto* config_opt = run->add_option("--config", args.config_path,
                                       "configuration document (or stored manifest.json)");
    auto* preset_opt =
        run->add_option("--preset", args.preset, "paper experiment grid")
            ->check(CLI::IsMember(qds::preset_names()));
    run->add_option("--out", args.out_dir, "output directory");
    run->add_option("--workers", args.workers, "parallel run workers (default: cores)");
    std::uint64_t seed_arg = 0;
    auto* seed_opt = run->add_option("--seed", seed_arg, "base seed override");
    std::size_t runs_arg = 0;
    auto* runs_opt = run->add_option("--runs", runs_arg, "run count override");
    run->add_flag("--allow-invalid-argmax", args.allow_invalid_argmax,
                  "downgrade the deceptive argmax validation error to a warning");
    config_opt->excludes(preset_opt);

    CLI::App* validate = app.add_subcommand("validate", "check a configuration document");
    validate->add_option("--config", args.config_path, "configuration document")
        ->required();
    validate->add_flag("--allow-invalid-argmax", args.allow_invalid_argmax);

    std::string batch_dir;
    CLI::App* aggregate =
        app.add_subcommand("aggregate", "recompute aggregate files from stored runs");
    aggregate->add_option("dir", batch_dir, "batch directory")->required();

    CLI11_PARSE(app, argc, argv);

    if (seed_opt->count() > 0)
        args.seed = seed_arg;
    if (runs_opt->count() > 0)
        args.runs = runs_arg;

    try {
        if (run->parsed()) {
            if (args.preset.empty() && args.config_path.empty()) {
                std::cerr << "error: run requires --config or --preset\n";
                return kExitConfigError;
            }
            return cmd_run(args);
        }
        if (validate->parsed())
            return cmd_validate(args);
        if (aggregate->parsed()) {
            qds::aggregate_from_disk(batch_dir);
            std::cout << batch_dir << ": aggregate files rewritten\n";
            return 0;
        }
    } catch (const qds::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "run failure: " << e.what() << "\n";
        return kExitRunFailure;
    }
    return 0;
}
