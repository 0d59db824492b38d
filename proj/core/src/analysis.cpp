#include "sdisde/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "sdisde/errors.hpp"

namespace sdisde {

double ert(std::span<const std::optional<std::size_t>> hitting_times, std::size_t budget) {
    if (hitting_times.empty()) {
        throw ConfigError("ert: no runs");
    }
    double total = 0.0;
    std::size_t successes = 0;
    for (const auto& t : hitting_times) {
        if (t) {
            ++successes;
            total += static_cast<double>(std::min(*t, budget));
        } else {
            total += static_cast<double>(budget);
        }
    }
    return successes == 0 ? kErtUnreached : total / static_cast<double>(successes);
}

std::optional<std::size_t> hitting_time(std::span<const TrajectoryPoint> trajectory, double optimum_value,
                                        double precision) {
    for (const auto& p : trajectory) {
        if (p.best_fitness - optimum_value <= precision) {
            return p.eval_index;
        }
    }
    return std::nullopt;
}

std::vector<double> log_targets(double lo, double hi, std::size_t count) {
    if (!(lo > 0.0 && hi > lo) || count < 2) {
        throw ConfigError("log_targets: need 0 < lo < hi and at least two targets");
    }
    const double top = std::log10(hi);
    const double bottom = std::log10(lo);
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double e = top + (bottom - top) * static_cast<double>(i) / static_cast<double>(count - 1);
        out.push_back(std::pow(10.0, e));
    }
    return out;
}

std::vector<std::pair<std::size_t, double>> fixed_target_ecdf(std::span<const RunTrajectory> runs,
                                                              std::span<const double> targets) {
    if (runs.empty() || targets.empty()) {
        return {};
    }
    std::map<std::size_t, std::size_t> hits;
    for (const auto& run : runs) {
        for (double target : targets) {
            if (auto t = hitting_time(run.points, run.optimum_value, target)) {
                ++hits[*t];
            }
        }
    }
    const double pairs = static_cast<double>(runs.size() * targets.size());
    std::vector<std::pair<std::size_t, double>> curve;
    std::size_t cumulative = 0;
    for (const auto& [evals, count] : hits) {
        cumulative += count;
        curve.emplace_back(evals, static_cast<double>(cumulative) / pairs);
    }
    return curve;
}

double ecdf_value_at(std::span<const std::pair<std::size_t, double>> curve, std::size_t evaluations) {
    double value = 0.0;
    for (const auto& [evals, frac] : curve) {
        if (evals > evaluations) break;
        value = frac;
    }
    return value;
}

} // namespace sdisde
