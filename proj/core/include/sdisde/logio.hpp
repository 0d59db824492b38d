#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "sdisde/instruments.hpp"

namespace sdisde {

/// Bumped whenever a column set changes. Readers reject other versions.
inline constexpr int kLogSchemaVersion = 1;

inline constexpr const char* kCorrectionsFile = "corrections.csv";
inline constexpr const char* kGenerationsFile = "generations.csv";
inline constexpr const char* kTrajectoryFile = "trajectory.csv";

inline constexpr const char* kCorrectionsHeader = "eval_index,generation,n_corrected,cosine";
inline constexpr const char* kGenerationsHeader =
    "generation,diversity,infeasible_trials,trials,best_fitness,pop_size,infeasible_components,components,"
    "mutant_components";
inline constexpr const char* kTrajectoryHeader = "eval_index,best_fitness";

/// Unknown column layout or malformed row.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// %.17g; "nan", "inf" and "-inf" for non-finite values.
std::string format_real(double v);
double parse_real(const std::string& text);

void write_corrections_csv(std::ostream& os, const RunLog& log);
void write_generations_csv(std::ostream& os, const RunLog& log);
void write_trajectory_csv(std::ostream& os, const RunLog& log);

/// Writes the three CSV files into `dir` (created if missing).
void write_run_log(const std::filesystem::path& dir, const RunLog& log);

/// Reads a directory written by write_run_log. The summary is rebuilt from
/// the generation records.
RunLog read_run_log(const std::filesystem::path& dir);

void read_corrections_csv(std::istream& is, RunLog& log);
void read_generations_csv(std::istream& is, RunLog& log);
void read_trajectory_csv(std::istream& is, RunLog& log);

/// Recomputes RunLog::summary from generations and trajectory.
void rebuild_summary(RunLog& log);

} // namespace sdisde
