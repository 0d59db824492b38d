#include "sdisde/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "sdisde/logio.hpp"

namespace sdisde {

using json = nlohmann::ordered_json;

namespace {

template <typename T>
std::vector<T> read_list(const json& obj, const char* key, std::vector<T> fallback = {}) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_array()) {
        throw ConfigError(std::string("'") + key + "' must be a list");
    }
    return v.get<std::vector<T>>();
}

ExperimentBlock parse_block(const json& j) {
    ExperimentBlock b;
    b.engine = parse_engine(j.at("engine").get<std::string>());
    b.population_sizes = read_list<std::size_t>(j, "population_sizes");
    b.F = read_list<double>(j, "F");
    b.Cr = read_list<double>(j, "Cr");
    b.crossovers.clear();
    for (const auto& name : read_list<std::string>(j, "crossover", {"bin"})) {
        b.crossovers.push_back(parse_crossover(name));
    }
    for (const auto& name : read_list<std::string>(j, "sdis")) {
        b.sdis.push_back(parse_sdis(name));
    }
    b.functions = read_list<std::string>(j, "functions");
    b.dimensions = read_list<std::size_t>(j, "dimensions");
    b.instances = read_list<std::uint64_t>(j, "instances", {1});
    if (j.contains("shade")) {
        const auto& s = j.at("shade");
        b.shade.memory_size = s.value("memory_size", b.shade.memory_size);
        b.shade.p_max = s.value("p_max", b.shade.p_max);
        b.shade.p_min = s.value("p_min", b.shade.p_min);
        b.shade.archive_rate = s.value("archive_rate", b.shade.archive_rate);
        b.shade.min_population = s.value("min_population", b.shade.min_population);
    }
    b.sdis_options.cotn_sigma_fraction = j.value("cotn_sigma_fraction", b.sdis_options.cotn_sigma_fraction);
    return b;
}

bool is_de(EngineKind k) { return k == EngineKind::DeRand1; }

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string make_run_id(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "r%06zu", index);
    return buf;
}

json manifest_row(const RunOutcome& out, const std::optional<double>& optimum) {
    const auto& rc = out.config;
    const auto& ec = rc.engine;
    json row;
    row["run_id"] = rc.run_id;
    row["run_index"] = rc.run_index;
    row["seed"] = ec.seed;
    row["config_hash"] = rc.config_hash;
    row["status"] = out.ok ? "ok" : "failed";
    if (!out.ok) row["error"] = out.error;
    row["engine"] = std::string(to_string(ec.engine));
    row["sdis"] = std::string(to_string(ec.sdis));
    row["function"] = rc.function.id;
    row["dimension"] = rc.function.dimension;
    row["instance"] = rc.function.instance;
    row["repetition"] = rc.repetition;
    row["population_size"] = ec.population_size;
    if (is_de(ec.engine)) {
        row["F"] = ec.params.F;
        row["Cr"] = ec.params.Cr;
        row["crossover"] = std::string(to_string(ec.params.crossover));
    } else {
        row["F"] = nullptr;
        row["Cr"] = nullptr;
        row["crossover"] = nullptr;
    }
    row["max_evaluations"] = ec.max_evaluations;
    if (optimum) {
        row["optimum_value"] = *optimum;
    } else {
        row["optimum_value"] = nullptr;
    }
    row["log_dir"] = out.log_dir.generic_string();
    json files = json::array();
    if (out.ok) {
        for (const char* f : {kCorrectionsFile, kGenerationsFile, kTrajectoryFile}) {
            files.push_back((out.log_dir / f).generic_string());
        }
    }
    row["files"] = files;
    return row;
}

} // namespace

void ExperimentSpec::validate() const {
    if (blocks.empty()) {
        throw ConfigError("experiment has no configuration blocks");
    }
    if (runs_per_instance == 0) {
        throw ConfigError("runs_per_instance must be positive");
    }
    if (!(budget_multiplier > 0.0)) {
        throw ConfigError("budget_multiplier must be positive");
    }
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const auto& b = blocks[i];
        const std::string where = "block " + std::to_string(i) + ": ";
        auto need = [&](bool nonempty, const char* what) {
            if (!nonempty) throw ConfigError(where + what + " grid is empty");
        };
        need(!b.population_sizes.empty(), "population_sizes");
        need(!b.sdis.empty(), "sdis");
        need(!b.functions.empty(), "functions");
        need(!b.dimensions.empty(), "dimensions");
        need(!b.instances.empty(), "instances");
        if (is_de(b.engine)) {
            need(!b.F.empty(), "F");
            need(!b.Cr.empty(), "Cr");
            need(!b.crossovers.empty(), "crossover");
            for (double f : b.F) {
                if (!(f > 0.0 && f <= 2.0)) throw ConfigError(where + "F value " + std::to_string(f) + " outside (0, 2]");
            }
            for (double cr : b.Cr) {
                if (!(cr >= 0.0 && cr <= 1.0)) throw ConfigError(where + "Cr value " + std::to_string(cr) + " outside [0, 1]");
            }
        }
        for (auto n_pop : b.population_sizes) {
            if (n_pop < kMinPopulation) throw ConfigError(where + "population size below 4");
        }
        const auto ids = function_ids();
        for (const auto& id : b.functions) {
            if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
                throw ConfigError(where + "unknown function id '" + id + "'");
            }
        }
        for (auto n : b.dimensions) {
            if (n == 0) throw ConfigError(where + "dimension must be positive");
        }
    }
}

ExperimentSpec parse_experiment_spec(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("experiment config is not valid JSON: ") + e.what());
    }
    ExperimentSpec spec;
    try {
        spec.master_seed = j.value("master_seed", spec.master_seed);
        spec.runs_per_instance = j.value("runs_per_instance", spec.runs_per_instance);
        spec.budget_multiplier = j.value("budget_multiplier", spec.budget_multiplier);
        spec.record_feasible_trials = j.value("record_feasible_trials", spec.record_feasible_trials);
        spec.output_dir = j.contains("output_dir") ? std::filesystem::path(j.at("output_dir").get<std::string>())
                                                   : default_output_dir();
        for (const auto& block : j.at("experiments")) {
            spec.blocks.push_back(parse_block(block));
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("experiment config: ") + e.what());
    }
    spec.validate();
    return spec;
}

ExperimentSpec load_experiment_spec(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) {
        throw ConfigError("cannot open config " + path.string());
    }
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_experiment_spec(ss.str());
}

std::string config_key(const EngineConfig& e, const FunctionSpec& f) {
    std::ostringstream os;
    os << "engine=" << to_string(e.engine) << ";N=" << e.population_size << ";sdis=" << to_string(e.sdis)
       << ";cotn_sigma=" << format_real(e.sdis_options.cotn_sigma_fraction) << ";budget=" << e.max_evaluations
       << ";function=" << f.id << ";n=" << f.dimension;
    if (is_de(e.engine)) {
        os << ";F=" << format_real(e.params.F) << ";Cr=" << format_real(e.params.Cr)
           << ";crossover=" << to_string(e.params.crossover);
    } else {
        os << ";H=" << e.shade.memory_size << ";p_max=" << format_real(e.shade.p_max)
           << ";p_min=" << format_real(e.shade.p_min) << ";archive=" << format_real(e.shade.archive_rate)
           << ";N_min=" << e.shade.min_population;
    }
    return os.str();
}

std::string config_hash(const EngineConfig& engine, const FunctionSpec& function) {
    return hex64(hash_tag(config_key(engine, function)));
}

std::size_t configuration_count(const ExperimentSpec& spec) {
    std::size_t total = 0;
    for (const auto& b : spec.blocks) {
        std::size_t c = b.population_sizes.size() * b.sdis.size() * b.functions.size() * b.dimensions.size();
        if (is_de(b.engine)) c *= b.F.size() * b.Cr.size() * b.crossovers.size();
        total += c;
    }
    return total;
}

std::vector<RunConfig> expand_runs(const ExperimentSpec& spec) {
    spec.validate();
    std::vector<RunConfig> runs;
    for (const auto& b : spec.blocks) {
        const bool de = is_de(b.engine);
        const std::vector<double> Fs = de ? b.F : std::vector<double>{0.5};
        const std::vector<double> Crs = de ? b.Cr : std::vector<double>{0.5};
        const std::vector<Crossover> xs = de ? b.crossovers : std::vector<Crossover>{Crossover::Bin};
        for (const auto& fid : b.functions)
        for (auto n : b.dimensions)
        for (auto n_pop : b.population_sizes)
        for (auto x : xs)
        for (double cr : Crs)
        for (double f : Fs)
        for (auto kind : b.sdis) {
            EngineConfig ec;
            ec.engine = b.engine;
            ec.params = {f, cr, x};
            ec.population_size = n_pop;
            ec.sdis = kind;
            ec.sdis_options = b.sdis_options;
            ec.shade = b.shade;
            ec.max_evaluations =
                static_cast<std::size_t>(std::llround(spec.budget_multiplier * static_cast<double>(n)));
            ec.recorder.record_feasible_trials = spec.record_feasible_trials;
            for (auto inst : b.instances) {
                for (std::size_t rep = 0; rep < spec.runs_per_instance; ++rep) {
                    RunConfig rc;
                    rc.run_index = runs.size();
                    rc.run_id = make_run_id(rc.run_index);
                    rc.engine = ec;
                    rc.engine.seed = derive_run_seed(spec.master_seed, rc.run_index);
                    rc.function = {fid, n, inst};
                    rc.repetition = rep;
                    rc.config_hash = config_hash(rc.engine, rc.function);
                    runs.push_back(std::move(rc));
                }
            }
        }
    }
    return runs;
}

RunLog execute_run(const RunConfig& run) {
    auto objective = make_function(run.function, derive_stream_seed(run.engine.seed, "objective"));
    return sdisde::run(run.engine, *objective);
}

bool ExperimentResult::all_ok() const {
    return std::all_of(runs.begin(), runs.end(), [](const RunOutcome& r) { return r.ok; });
}

ExperimentResult run_experiment(const ExperimentSpec& spec, std::size_t workers) {
    const auto runs = expand_runs(spec);
    const auto out_dir = spec.output_dir;
    std::filesystem::create_directories(out_dir / kRunsDir);

    ExperimentResult result;
    result.runs.resize(runs.size());
    std::vector<std::optional<double>> optima(runs.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < runs.size(); i = next++) {
            auto& out = result.runs[i];
            out.config = runs[i];
            out.log_dir = std::filesystem::path(kRunsDir) / runs[i].run_id;
            try {
                auto objective = make_function(runs[i].function, derive_stream_seed(runs[i].engine.seed, "objective"));
                optima[i] = objective->optimum_value();
                const RunLog log = sdisde::run(runs[i].engine, *objective);
                write_run_log(out_dir / out.log_dir, log);
                out.ok = true;
            } catch (const std::exception& e) {
                out.ok = false;
                out.error = e.what();
            }
        }
    };
    const std::size_t n_threads = std::max<std::size_t>(1, std::min(workers, runs.size()));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    }

    json manifest;
    manifest["schema_version"] = kLogSchemaVersion;
    manifest["master_seed"] = spec.master_seed;
    manifest["runs_per_instance"] = spec.runs_per_instance;
    manifest["budget_multiplier"] = spec.budget_multiplier;
    manifest["configurations"] = configuration_count(spec);
    json rows = json::array();
    for (std::size_t i = 0; i < result.runs.size(); ++i) {
        rows.push_back(manifest_row(result.runs[i], optima[i]));
    }
    manifest["runs"] = rows;
    result.manifest_path = out_dir / kManifestFile;
    std::ofstream os(result.manifest_path, std::ios::binary);
    if (!os) {
        throw std::runtime_error("cannot write " + result.manifest_path.string());
    }
    os << manifest.dump(2) << '\n';
    return result;
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& dir) {
    std::ifstream is(dir / kManifestFile);
    if (!is) {
        throw SchemaError("no manifest in " + dir.string());
    }
    json j;
    try {
        j = json::parse(is);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("manifest is not valid JSON: ") + e.what());
    }
    if (j.value("schema_version", -1) != kLogSchemaVersion) {
        throw SchemaError("unsupported manifest schema version");
    }
    std::vector<ManifestEntry> out;
    try {
        for (const auto& r : j.at("runs")) {
            ManifestEntry e;
            e.run_id = r.at("run_id").get<std::string>();
            e.seed = r.at("seed").get<std::uint64_t>();
            e.config_hash = r.at("config_hash").get<std::string>();
            e.status = r.at("status").get<std::string>();
            e.error = r.value("error", std::string());
            e.engine = r.at("engine").get<std::string>();
            e.sdis = r.at("sdis").get<std::string>();
            e.function = r.at("function").get<std::string>();
            e.dimension = r.at("dimension").get<std::size_t>();
            e.instance = r.at("instance").get<std::uint64_t>();
            e.repetition = r.at("repetition").get<std::size_t>();
            e.population_size = r.at("population_size").get<std::size_t>();
            if (!r.at("F").is_null()) e.F = r.at("F").get<double>();
            if (!r.at("Cr").is_null()) e.Cr = r.at("Cr").get<double>();
            if (!r.at("crossover").is_null()) e.crossover = r.at("crossover").get<std::string>();
            e.max_evaluations = r.at("max_evaluations").get<std::size_t>();
            if (!r.at("optimum_value").is_null()) e.optimum_value = r.at("optimum_value").get<double>();
            e.log_dir = dir / r.at("log_dir").get<std::string>();
            e.files = r.at("files").get<std::vector<std::string>>();
            out.push_back(std::move(e));
        }
    } catch (const json::exception& e) {
        throw SchemaError(std::string("manifest: ") + e.what());
    }
    return out;
}

std::filesystem::path default_output_dir() {
    if (const char* env = std::getenv("SDISDE_OUT_DIR"); env && *env) {
        return env;
    }
    return "sdisde-out";
}

} // namespace sdisde
