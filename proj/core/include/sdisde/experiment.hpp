#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sdisde/engines.hpp"
#include "sdisde/functions.hpp"

namespace sdisde {

/// One grid of configurations. For SHADE and L-SHADE the F, Cr and
/// crossover grids are ignored.
struct ExperimentBlock {
    EngineKind engine = EngineKind::DeRand1;
    std::vector<std::size_t> population_sizes;
    std::vector<double> F;
    std::vector<double> Cr;
    std::vector<Crossover> crossovers{Crossover::Bin};
    std::vector<SdisKind> sdis;
    std::vector<std::string> functions;
    std::vector<std::size_t> dimensions;
    std::vector<std::uint64_t> instances{1};
    ShadeOptions shade;
    SdisOptions sdis_options;
};

struct ExperimentSpec {
    std::vector<ExperimentBlock> blocks;
    std::size_t runs_per_instance = 1;
    double budget_multiplier = 10000.0; ///< evaluations = multiplier * n
    std::uint64_t master_seed = 0;
    std::filesystem::path output_dir = "sdisde-out";
    bool record_feasible_trials = false;

    /// Throws ConfigError naming the first offending value.
    void validate() const;
};

/// Parses the JSON experiment format (see README).
ExperimentSpec parse_experiment_spec(const std::string& json_text);
ExperimentSpec load_experiment_spec(const std::filesystem::path& path);

/// A single run of the expanded grid.
struct RunConfig {
    std::size_t run_index = 0;
    std::string run_id;         ///< "r" + zero-padded index; also the log directory name
    EngineConfig engine;
    FunctionSpec function;
    std::size_t repetition = 0; ///< 0-based run number within the instance
    std::string config_hash;    ///< identifies the configuration independent of instance and repetition
};

/// Canonical text describing everything that defines a configuration
/// (engine, parameters, SDIS, function, dimension, budget).
std::string config_key(const EngineConfig& engine, const FunctionSpec& function);
/// 16 hex digits of FNV-1a over config_key.
std::string config_hash(const EngineConfig& engine, const FunctionSpec& function);

/// Distinct configurations, i.e. the product of the grid sizes summed over
/// blocks.
std::size_t configuration_count(const ExperimentSpec& spec);

/// Every run in deterministic order; run seeds derive from (master seed,
/// run index).
std::vector<RunConfig> expand_runs(const ExperimentSpec& spec);

/// Executes one run (building its objective) and returns the log.
RunLog execute_run(const RunConfig& run);

struct RunOutcome {
    RunConfig config;
    bool ok = false;
    std::string error;
    std::filesystem::path log_dir; ///< relative to the output directory
};

struct ExperimentResult {
    std::vector<RunOutcome> runs;
    std::filesystem::path manifest_path;

    bool all_ok() const;
};

inline constexpr const char* kManifestFile = "manifest.json";
inline constexpr const char* kRunsDir = "runs";

/// Runs every configuration with `workers` threads, writes each log under
/// <out>/runs/<run_id>/ and an index at <out>/manifest.json. Results do not
/// depend on the worker count. A failing run is recorded in the manifest and
/// does not stop the others.
ExperimentResult run_experiment(const ExperimentSpec& spec, std::size_t workers = 1);

/// A manifest row as read back from disk.
struct ManifestEntry {
    std::string run_id;
    std::uint64_t seed = 0;
    std::string config_hash;
    std::string status;
    std::string error;
    std::string engine;
    std::string sdis;
    std::string function;
    std::size_t dimension = 0;
    std::uint64_t instance = 0;
    std::size_t repetition = 0;
    std::size_t population_size = 0;
    std::optional<double> F;
    std::optional<double> Cr;
    std::optional<std::string> crossover;
    std::size_t max_evaluations = 0;
    std::optional<double> optimum_value;
    std::filesystem::path log_dir; ///< absolute
    std::vector<std::string> files;
};

/// Loads <dir>/manifest.json. Throws SchemaError on an unknown schema
/// version or missing fields.
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& dir);

/// Default output directory: $SDISDE_OUT_DIR if set, else "sdisde-out".
std::filesystem::path default_output_dir();

} // namespace sdisde
