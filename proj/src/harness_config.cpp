#include "qds/harness/config.hpp"

#include <fstream>
#include <set>

#include "qds/env/deceptive.hpp"
#include "qds/env/spiral.hpp"
#include "qds/env/ssf.hpp"

namespace qds {

namespace {

using json = nlohmann::ordered_json;

/// Strict object access: every read marks its key, done() rejects leftovers
/// so typos surface as errors with their full key path.
class ObjectReader {
public:
    ObjectReader(const json& obj, std::string path) : _obj(obj), _path(std::move(path)) {
        if (!obj.is_object())
            throw ConfigError(_path.empty() ? "config document must be an object"
                                            : _path + ": expected an object");
    }

    const json* find(const std::string& key) {
        _seen.insert(key);
        const auto it = _obj.find(key);
        return it == _obj.end() ? nullptr : &it.value();
    }

    template <class T>
    T get(const std::string& key, T fallback) {
        if (const json* j = find(key))
            return convert<T>(*j, key);
        return fallback;
    }

    template <class T>
    T require(const std::string& key) {
        if (const json* j = find(key))
            return convert<T>(*j, key);
        throw ConfigError(join(key) + ": required key missing");
    }

    void done() const {
        for (const auto& item : _obj.items())
            if (!_seen.count(item.key()))
                throw ConfigError(join(item.key()) + ": unknown key");
    }

    std::string join(const std::string& key) const {
        return _path.empty() ? key : _path + "." + key;
    }

    template <class T>
    T convert(const json& j, const std::string& key) const {
        try {
            return j.get<T>();
        } catch (const json::exception&) {
            throw ConfigError(join(key) + ": invalid value");
        }
    }

private:
    const json& _obj;
    std::string _path;
    std::set<std::string> _seen;
};

struct BuiltEnv {
    std::shared_ptr<const Environment> env;
    json resolved;
};

BuiltEnv build_environment(const json& doc) {
    ObjectReader r(doc, "environment");
    const std::string name = r.get<std::string>("name", "spiral");
    json out;
    out["name"] = name;
    BuiltEnv built;

    try {
        if (name == "spiral") {
            SpiralEnv::Params p;
            p.a = r.get("a", 0.01);
            p.alpha = r.get("alpha", 30.0);
            const std::string par = r.get<std::string>("parametrization", "angle");
            if (par == "angle")
                p.parametrization = SpiralEnv::Parametrization::angle;
            else if (par == "arc-length")
                p.parametrization = SpiralEnv::Parametrization::arc_length;
            else
                throw ConfigError("environment.parametrization: must be "
                                  "\"angle\" or \"arc-length\"");
            if (const json* j = r.find("start_angle"))
                p.start_angle = r.convert<double>(*j, "start_angle");
            auto env = std::make_shared<SpiralEnv>(p);
            out["a"] = p.a;
            out["alpha"] = p.alpha;
            out["parametrization"] = par;
            out["start_angle"] = env->start_angle();
            built.env = std::move(env);
        } else if (name == "ssf") {
            SsfEnv::Params p;
            p.order = r.get("order", 1);
            p.max_band_index = r.get("max_band_index", 64);
            const std::string mode = r.get<std::string>("output_mode", "radial-scalar");
            if (mode == "radial-scalar")
                p.output_mode = SsfEnv::OutputMode::radial_scalar;
            else if (mode == "vector-projection")
                p.output_mode = SsfEnv::OutputMode::vector_projection;
            else
                throw ConfigError("environment.output_mode: must be "
                                  "\"radial-scalar\" or \"vector-projection\"");
            out["order"] = p.order;
            out["max_band_index"] = p.max_band_index;
            out["output_mode"] = mode;
            built.env = std::make_shared<SsfEnv>(p);
        } else if (name == "deceptive") {
            DeceptiveEnv::Params p;
            p.side = r.get("side", 600.0);
            p.mu1 = r.get<std::array<double, 2>>("mu1", {150.0, 300.0});
            p.mu2 = r.get<std::array<double, 2>>("mu2", {450.0, 300.0});
            p.var1 = r.get("var1", 70.0);
            p.var2 = r.get("var2", 1e4);
            p.beta = r.get("beta", 1.5 * p.var2 / p.var1);
            p.allow_invalid_argmax = r.get("allow_invalid_argmax", false);
            out["side"] = p.side;
            out["mu1"] = p.mu1;
            out["mu2"] = p.mu2;
            out["var1"] = p.var1;
            out["var2"] = p.var2;
            out["beta"] = p.beta;
            out["allow_invalid_argmax"] = p.allow_invalid_argmax;
            built.env = std::make_shared<DeceptiveEnv>(p);
        } else {
            throw ConfigError("environment.name: unknown environment \"" + name + "\"");
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("environment: ") + e.what());
    }
    r.done();
    built.resolved = std::move(out);
    return built;
}

std::vector<GridDim> default_grid(const Environment& env) {
    if (const auto* spiral = dynamic_cast<const SpiralEnv*>(&env)) {
        const double r = spiral->outer_radius();
        return {GridDim{-r, r, 50}, GridDim{-r, r, 50}};
    }
    if (dynamic_cast<const SsfEnv*>(&env) != nullptr)
        return {GridDim{0.0, ssf_radius(9), 200}};
    return {GridDim{0.0, env.binning_domain_max(), 100}};
}

std::vector<GridDim> parse_grid(const json& arr, const std::string& path,
                                const Environment& env) {
    if (!arr.is_array() || arr.empty())
        throw ConfigError(path + ": expected a non-empty array of dimensions");
    std::vector<GridDim> dims;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        ObjectReader d(arr[i], path + "[" + std::to_string(i) + "]");
        GridDim dim;
        dim.lo = d.require<double>("lo");
        dim.hi = d.require<double>("hi");
        dim.cells = d.require<std::size_t>("cells");
        d.done();
        dims.push_back(dim);
    }
    if (dims.size() != env.behavior_dim())
        throw ConfigError(path + ": dimension count must match the environment's "
                          "behavior dimension");
    return dims;
}

json grid_to_json(const std::vector<GridDim>& dims) {
    json arr = json::array();
    for (const auto& d : dims)
        arr.push_back(json{{"lo", d.lo}, {"hi", d.hi}, {"cells", d.cells}});
    return arr;
}

struct BuiltAlgorithm {
    AlgorithmConfig algorithm;
    json resolved;
};

BuiltAlgorithm build_algorithm(const json& doc, const Environment& env) {
    ObjectReader r(doc, "algorithm");
    const std::string name = r.get<std::string>("name", "ns");
    const double sigma = r.get("sigma", 0.3);
    if (!(sigma > 0.0))
        throw ConfigError("algorithm.sigma: must be positive");

    json out;
    out["name"] = name;
    BuiltAlgorithm built;

    if (name == "ns") {
        NsConfig cfg;
        cfg.sigma = sigma;
        cfg.population_size = r.get<std::size_t>("population", 30);
        cfg.offspring_size = r.get<std::size_t>("offspring", 30);
        cfg.k = r.get("k", 10);
        if (cfg.population_size < 1)
            throw ConfigError("algorithm.population: must be >= 1");
        if (cfg.k < 1)
            throw ConfigError("algorithm.k: must be >= 1");

        const std::string metric = r.get<std::string>("metric", "euclidean");
        if (metric == "euclidean") {
            cfg.metric = DistanceMetric::euclidean();
        } else if (metric == "geodesic-spiral") {
            const auto* spiral = dynamic_cast<const SpiralEnv*>(&env);
            if (spiral == nullptr)
                throw ConfigError(
                    "algorithm.metric: geodesic-spiral requires the spiral environment");
            cfg.metric = DistanceMetric::geodesic_spiral_metric(spiral->params().a);
        } else {
            throw ConfigError("algorithm.metric: must be \"euclidean\" or "
                              "\"geodesic-spiral\"");
        }
        cfg.resample_from_archive = r.get("resample_from_archive", false);

        json arch_out;
        if (const json* arch = r.find("archive")) {
            ObjectReader a(*arch, "algorithm.archive");
            const std::string kind = a.get<std::string>("kind", "none");
            arch_out["kind"] = kind;
            if (kind == "none") {
                cfg.archive.kind = ArchiveSpec::Kind::none;
            } else if (kind == "unstructured") {
                cfg.archive.kind = ArchiveSpec::Kind::unstructured;
                if (const json* ms = a.find("max_size")) {
                    if (ms->is_null())
                        cfg.archive.max_size = std::nullopt; // unlimited
                    else
                        cfg.archive.max_size = a.convert<std::size_t>(*ms, "max_size");
                } else {
                    cfg.archive.max_size = 200;
                }
                if (cfg.archive.max_size && *cfg.archive.max_size < 1)
                    throw ConfigError("algorithm.archive.max_size: must be >= 1");
                arch_out["max_size"] =
                    cfg.archive.max_size ? json(*cfg.archive.max_size) : json(nullptr);
                cfg.archive.add_most_novel = a.get<std::size_t>("add_most_novel", 1);
                cfg.archive.add_random = a.get<std::size_t>("add_random", 1);
                arch_out["add_most_novel"] = cfg.archive.add_most_novel;
                arch_out["add_random"] = cfg.archive.add_random;
            } else if (kind == "grid") {
                cfg.archive.kind = ArchiveSpec::Kind::grid;
                if (const json* g = a.find("grid"))
                    cfg.archive.grid_dims = parse_grid(*g, "algorithm.archive.grid", env);
                else
                    cfg.archive.grid_dims = default_grid(env);
                cfg.archive.replace_at_random = a.get("replace_at_random", false);
                arch_out["grid"] = grid_to_json(cfg.archive.grid_dims);
                arch_out["replace_at_random"] = cfg.archive.replace_at_random;
            } else {
                throw ConfigError("algorithm.archive.kind: must be \"none\", "
                                  "\"unstructured\" or \"grid\"");
            }
            a.done();
        } else {
            arch_out["kind"] = "none";
        }
        if (cfg.resample_from_archive && cfg.archive.kind == ArchiveSpec::Kind::none)
            throw ConfigError("algorithm.resample_from_archive: requires an archive");

        out["population"] = cfg.population_size;
        out["offspring"] = cfg.offspring_size;
        out["k"] = cfg.k;
        out["metric"] = metric;
        out["sigma"] = sigma;
        out["resample_from_archive"] = cfg.resample_from_archive;
        out["archive"] = std::move(arch_out);
        built.algorithm = cfg;
    } else if (name == "map-elites") {
        MapElitesConfig cfg;
        cfg.sigma = sigma;
        cfg.batch_size = r.get<std::size_t>("batch", 30);
        cfg.initial_batch = r.get<std::size_t>("initial_batch", 30);
        if (cfg.batch_size < 1)
            throw ConfigError("algorithm.batch: must be >= 1");
        if (cfg.initial_batch < 1)
            throw ConfigError("algorithm.initial_batch: must be >= 1");
        if (const json* g = r.find("grid"))
            cfg.grid_dims = parse_grid(*g, "algorithm.grid", env);
        else
            cfg.grid_dims = default_grid(env);
        cfg.replace_at_random = r.get("replace_at_random", false);

        out["batch"] = cfg.batch_size;
        out["initial_batch"] = cfg.initial_batch;
        out["sigma"] = sigma;
        out["grid"] = grid_to_json(cfg.grid_dims);
        out["replace_at_random"] = cfg.replace_at_random;
        built.algorithm = cfg;
    } else {
        throw ConfigError("algorithm.name: unknown algorithm \"" + name + "\"");
    }
    r.done();
    built.resolved = std::move(out);
    return built;
}

std::vector<std::uint64_t> build_seeds(const json* doc, json& resolved) {
    std::vector<std::uint64_t> seeds;
    if (doc == nullptr) {
        seeds = {1};
        resolved["seeds"] = json{{"base", 1}, {"runs", 1}};
    } else if (doc->is_array()) {
        for (const auto& s : *doc) {
            if (!s.is_number_unsigned())
                throw ConfigError("seeds: entries must be unsigned integers");
            seeds.push_back(s.get<std::uint64_t>());
        }
        resolved["seeds"] = *doc;
    } else if (doc->is_object()) {
        ObjectReader s(*doc, "seeds");
        const std::uint64_t base = s.get<std::uint64_t>("base", 1);
        const std::size_t runs = s.get<std::size_t>("runs", 1);
        s.done();
        for (std::size_t i = 0; i < runs; ++i)
            seeds.push_back(base + i);
        resolved["seeds"] = json{{"base", base}, {"runs", runs}};
    } else {
        throw ConfigError("seeds: expected an array or a {base, runs} object");
    }
    if (seeds.empty())
        throw ConfigError("seeds: at least one seed is required");
    return seeds;
}

} // namespace

ExperimentConfig load_config(const nlohmann::ordered_json& doc) {
    // A stored manifest carries the resolved config under "config"; accept it
    // directly so one file reproduces its run.
    if (doc.is_object() && doc.contains("config")) {
        ObjectReader m(doc, "");
        const json* inner = m.find("config");
        const std::uint64_t seed = m.require<std::uint64_t>("seed");
        m.find("toolkit_version");
        m.find("derived");
        m.done();
        ExperimentConfig cfg = load_config(*inner);
        cfg.seeds = {seed};
        cfg.resolved["seeds"] = json::array({seed});
        return cfg;
    }

    ObjectReader r(doc, "");
    ExperimentConfig cfg;
    json resolved;

    const json* env_doc = r.find("environment");
    if (env_doc == nullptr)
        throw ConfigError("environment: required key missing");
    BuiltEnv env = build_environment(*env_doc);
    cfg.env = env.env;
    resolved["environment"] = std::move(env.resolved);

    json algo_doc = json::object();
    if (const json* a = r.find("algorithm"))
        algo_doc = *a;
    BuiltAlgorithm algo = build_algorithm(algo_doc, *cfg.env);
    cfg.algorithm = std::move(algo.algorithm);
    resolved["algorithm"] = std::move(algo.resolved);

    const auto generations = r.get<std::int64_t>("generations", 1000);
    if (generations < 0)
        throw ConfigError("generations: must be >= 0");
    cfg.generations = static_cast<std::uint32_t>(generations);
    resolved["generations"] = cfg.generations;

    cfg.seeds = build_seeds(r.find("seeds"), resolved);

    if (const json* an = r.find("analysis")) {
        ObjectReader a(*an, "analysis");
        cfg.analysis.bins = a.get<std::size_t>("bins", 100);
        const std::string cov =
            a.get<std::string>("coverage", "archive_and_population");
        if (cov == "archive_and_population")
            cfg.analysis.archive_only = false;
        else if (cov == "archive_only")
            cfg.analysis.archive_only = true;
        else
            throw ConfigError("analysis.coverage: must be \"archive_and_population\" "
                              "or \"archive_only\"");
        cfg.analysis.stall_threshold = a.get<std::size_t>("stall_threshold", 500);
        a.done();
        if (cfg.analysis.bins < 1)
            throw ConfigError("analysis.bins: must be >= 1");
    }
    resolved["analysis"] =
        json{{"bins", cfg.analysis.bins},
             {"coverage", cfg.analysis.archive_only ? "archive_only"
                                                    : "archive_and_population"},
             {"stall_threshold", cfg.analysis.stall_threshold}};

    if (const json* v = r.find("verify")) {
        ObjectReader a(*v, "verify");
        cfg.verify.invariants = a.get("invariants", false);
        cfg.verify.oracle_interval = a.get<std::size_t>("oracle_interval", 0);
        a.done();
    }
    resolved["verify"] = json{{"invariants", cfg.verify.invariants},
                              {"oracle_interval", cfg.verify.oracle_interval}};

    cfg.output = r.get<std::string>("output", "");
    if (!cfg.output.empty())
        resolved["output"] = cfg.output;

    r.done();
    cfg.resolved = std::move(resolved);
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    nlohmann::ordered_json doc;
    try {
        doc = nlohmann::ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return load_config(doc);
}

nlohmann::ordered_json derived_constants(const Environment& env) {
    nlohmann::ordered_json out;
    if (const auto* spiral = dynamic_cast<const SpiralEnv*>(&env)) {
        out["max_angle"] = spiral->max_angle();
        out["total_arc_length"] = spiral->total_arc_length();
        out["start_angle"] = spiral->start_angle();
        out["start_genotype"] = spiral->start_genotype();
        out["outer_radius"] = spiral->outer_radius();
    } else if (dynamic_cast<const SsfEnv*>(&env) != nullptr) {
        nlohmann::ordered_json radii = nlohmann::ordered_json::array();
        for (int i = 0; i <= 16; ++i)
            radii.push_back(ssf_radius(i));
        out["radii"] = std::move(radii);
    } else if (const auto* dec = dynamic_cast<const DeceptiveEnv*>(&env)) {
        out["m1"] = dec->m1();
        out["m2_total"] = dec->m2_total();
        out["m1_component"] = dec->m1_component();
        out["m2_component"] = dec->m2_component();
        out["x_saddle"] = dec->saddle();
        out["argmax_valid"] = dec->argmax_valid();
    }
    return out;
}

namespace {

json preset_doc(const std::string& env_json, const std::string& algo_json,
                std::uint64_t base_seed, std::size_t runs) {
    json doc;
    doc["environment"] = json::parse(env_json);
    doc["algorithm"] = json::parse(algo_json);
    doc["generations"] = 1000;
    doc["seeds"] = json{{"base", base_seed}, {"runs", runs}};
    return doc;
}

} // namespace

std::vector<std::string> preset_names() {
    return {"fig2", "fig3", "fig5", "fig7", "fig8"};
}

std::vector<PresetBatch> make_preset(const std::string& name,
                                     std::optional<std::uint64_t> seed_override,
                                     std::optional<std::size_t> runs_override) {
    const std::uint64_t base = seed_override.value_or(1000);
    std::vector<PresetBatch> batches;
    auto add = [&](const std::string& sub, const std::string& env,
                   const std::string& algo, std::size_t default_runs) {
        json doc = preset_doc(env, algo, base, runs_override.value_or(default_runs));
        batches.push_back({sub, load_config(doc)});
    };

    const std::string spiral_angle = R"({"name":"spiral","parametrization":"angle"})";
    const std::string spiral_arc = R"({"name":"spiral","parametrization":"arc-length"})";

    if (name == "fig2") {
        // archive-less NS in the four metric x parametrization settings
        add("euclidean_angle", spiral_angle, R"({"name":"ns","metric":"euclidean"})", 20);
        add("euclidean_arclength", spiral_arc, R"({"name":"ns","metric":"euclidean"})", 20);
        add("geodesic_angle", spiral_angle, R"({"name":"ns","metric":"geodesic-spiral"})", 20);
        add("geodesic_arclength", spiral_arc, R"({"name":"ns","metric":"geodesic-spiral"})", 20);
    } else if (name == "fig3") {
        // euclidean metric + angle parametrization, archive variants
        const std::string ns_u100 =
            R"({"name":"ns","archive":{"kind":"unstructured","max_size":100}})";
        const std::string ns_u200 =
            R"({"name":"ns","archive":{"kind":"unstructured","max_size":200}})";
        const std::string ns_u3000 =
            R"({"name":"ns","archive":{"kind":"unstructured","max_size":3000}})";
        const std::string ns_grid = R"({"name":"ns","archive":{"kind":"grid"}})";
        const std::string ns_u200_rs =
            R"({"name":"ns","resample_from_archive":true,"archive":{"kind":"unstructured","max_size":200}})";
        const std::string ns_grid_rs =
            R"({"name":"ns","resample_from_archive":true,"archive":{"kind":"grid"}})";
        add("unstructured100", spiral_angle, ns_u100, 20);
        add("unstructured200", spiral_angle, ns_u200, 20);
        add("unstructured3000", spiral_angle, ns_u3000, 20);
        add("structured", spiral_angle, ns_grid, 20);
        add("unstructured200_resample", spiral_angle, ns_u200_rs, 20);
        add("structured_resample", spiral_angle, ns_grid_rs, 20);
    } else if (name == "fig5") {
        const std::string ssf = R"({"name":"ssf","order":1})";
        add("sigma20", ssf,
            R"({"name":"ns","sigma":20,"archive":{"kind":"unstructured","max_size":200}})", 20);
        add("sigma50", ssf,
            R"({"name":"ns","sigma":50,"archive":{"kind":"unstructured","max_size":200}})", 20);
    } else if (name == "fig7") {
        // sigma as a percentage of sigma_2 = 100
        const std::string dec = R"({"name":"deceptive"})";
        for (const auto& [sub, sigma] :
             std::vector<std::pair<std::string, std::string>>{
                 {"sigma3pct", "3"}, {"sigma5pct", "5"}, {"sigma10pct", "10"}}) {
            add(sub, dec,
                R"({"name":"ns","sigma":)" + sigma +
                    R"(,"archive":{"kind":"unstructured","max_size":200}})",
                40);
        }
    } else if (name == "fig8") {
        const std::string dec = R"({"name":"deceptive"})";
        for (const auto& [sub, sigma] : std::vector<std::pair<std::string, std::string>>{
                 {"sigma5pct", "5"}, {"sigma10pct", "10"}}) {
            add(sub, dec, R"({"name":"map-elites","sigma":)" + sigma + "}", 40);
        }
    } else {
        throw ConfigError("unknown preset \"" + name + "\"");
    }
    return batches;
}

} // namespace qds
