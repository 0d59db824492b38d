#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "sdisde/experiment.hpp"

namespace sdisde::cli {

/// How analysis commands pool runs.
enum class GroupBy { Sdis, Engine, Function, Config };

GroupBy parse_group_by(const std::string& text);
std::string group_label(const ManifestEntry& entry, GroupBy by);

/// Successful runs of an experiment directory; failed rows are skipped.
std::vector<ManifestEntry> completed_runs(const std::filesystem::path& dir);

void write_ecdf_cs(std::ostream& os, const std::filesystem::path& dir, GroupBy by, std::size_t grid_points);
void write_ecdf_target(std::ostream& os, const std::filesystem::path& dir, GroupBy by,
                       const std::vector<double>& targets);
void write_ert(std::ostream& os, const std::filesystem::path& dir, GroupBy by, double precision);
void write_pois(std::ostream& os, const std::filesystem::path& dir, std::size_t window, bool trace);
void write_diversity(std::ostream& os, const std::filesystem::path& dir, GroupBy by);

/// Evaluates the closed-form predictions and randomized inequality checks;
/// returns the number of checks that found a counterexample.
std::size_t write_theory_check(std::ostream& os, std::size_t samples, std::uint64_t seed);

/// Entry point shared by the executable and the tests.
/// Exit codes: 0 success, 1 usage or input error, 2 some runs failed.
int main(int argc, char** argv);

} // namespace sdisde::cli
