#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sdisde/instruments.hpp"

namespace sdisde {

/// Returned by ert() when no run reached the target.
inline constexpr double kErtUnreached = std::numeric_limits<double>::infinity();

/// Expected running time: sum_i min(t_i, budget) / #{i : t_i finite}.
/// An empty optional is a run that never reached the target.
/// Throws ConfigError for an empty input.
double ert(std::span<const std::optional<std::size_t>> hitting_times, std::size_t budget);

/// First evaluation at which best-so-far minus optimum is <= precision.
std::optional<std::size_t> hitting_time(std::span<const TrajectoryPoint> trajectory, double optimum_value,
                                        double precision);

/// `count` targets spaced evenly in log10 between hi and lo, largest first.
std::vector<double> log_targets(double lo = 1e-8, double hi = 1e2, std::size_t count = 51);

struct RunTrajectory {
    std::vector<TrajectoryPoint> points;
    double optimum_value = 0.0;
};

/// Step function of the fraction of (run, target) pairs solved against
/// evaluations, one point per evaluation count at which the fraction
/// increases. Runs from several functions aggregate by pooling their pairs.
std::vector<std::pair<std::size_t, double>> fixed_target_ecdf(std::span<const RunTrajectory> runs,
                                                              std::span<const double> targets);

/// Value of a step curve from fixed_target_ecdf at `evaluations`.
double ecdf_value_at(std::span<const std::pair<std::size_t, double>> curve, std::size_t evaluations);

} // namespace sdisde
