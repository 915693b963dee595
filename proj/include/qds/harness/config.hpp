#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qds/algo/config.hpp"
#include "qds/algo/run.hpp"
#include "qds/env/environment.hpp"

namespace qds {

/// Configuration-document problem: parse failure, unknown key, or a value
/// that fails validation. The message names the offending key path.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One fully resolved experiment: environment, algorithm, seeds and analysis
/// settings, plus the materialized configuration document (all defaults
/// filled in) that goes into run manifests.
struct ExperimentConfig {
    std::shared_ptr<const Environment> env;
    AlgorithmConfig algorithm;
    std::vector<std::uint64_t> seeds;
    std::uint32_t generations = 1000;
    AnalysisOptions analysis;
    VerifyOptions verify;
    std::string output; // optional default output directory

    nlohmann::ordered_json resolved; // materialized config document
};

/// Parses and validates a configuration document. Unknown keys are errors.
/// Accepts both plain configs and run manifests (documents with a "config"
/// object and a "seed"), so a stored manifest reproduces its run.
ExperimentConfig load_config(const nlohmann::ordered_json& doc);
ExperimentConfig load_config_file(const std::string& path);

/// Environment-derived constants recorded in manifests (arc length of the
/// full curve, the R_i table prefix, M1/M2/saddle).
nlohmann::ordered_json derived_constants(const Environment& env);

/// A preset bundles the sub-batches of one of the paper-scale experiment
/// grids; each sub-batch is an independent ExperimentConfig.
struct PresetBatch {
    std::string name;
    ExperimentConfig config;
};

std::vector<std::string> preset_names();
std::vector<PresetBatch> make_preset(const std::string& name,
                                     std::optional<std::uint64_t> seed_override = {},
                                     std::optional<std::size_t> runs_override = {});

} // namespace qds
