#include "sdisde/instruments.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

namespace sdisde {

std::vector<double> RunLog::cosines() const {
    std::vector<double> out;
    for (const auto& rec : corrections) {
        if (rec.cosine) out.push_back(*rec.cosine);
    }
    return out;
}

void RunRecorder::note_fitness(std::size_t eval_index, double fitness) {
    if (!best_ || fitness < *best_) {
        best_ = fitness;
        log_.trajectory.push_back({eval_index, fitness});
    }
    last_eval_ = std::max(last_eval_, eval_index);
}

void RunRecorder::on_initial_evaluation(std::size_t eval_index, double fitness) {
    note_fitness(eval_index, fitness);
}

void RunRecorder::on_trial(const TrialEvent& ev) {
    note_fitness(ev.eval_index, ev.fitness);
    ++pending_.trials;
    pending_.components += ev.trial.size();
    pending_.mutant_components += ev.mutant_components;
    pending_.infeasible_components += ev.n_corrected;
    if (ev.n_corrected > 0) {
        ++pending_.infeasible_trials;
    }
    if (ev.n_corrected > 0 || options_.record_feasible_trials) {
        log_.corrections.push_back({ev.eval_index, ev.generation, ev.n_corrected, ev.cosine});
    }
}

void RunRecorder::on_generation(const GenerationEvent& ev) {
    pending_.generation = ev.generation;
    pending_.pop_size = ev.population.size();
    pending_.best_fitness = best_.value_or(std::nan(""));
    pending_.diversity = options_.sample_diversity && ev.population.size() >= 2
                             ? diversity(ev.population, ev.domain)
                             : std::nan("");
    auto& s = log_.summary;
    s.total_trials += pending_.trials;
    s.infeasible_trials += pending_.infeasible_trials;
    s.total_infeasible_components += pending_.infeasible_components;
    s.total_components_generated += pending_.components;
    s.evaluations = ev.evaluations_used;
    log_.generations.push_back(pending_);
    pending_ = GenRecord{};
}

RunLog RunRecorder::finish() {
    auto& s = log_.summary;
    s.final_pois = s.total_trials > 0
                       ? static_cast<double>(s.infeasible_trials) / static_cast<double>(s.total_trials)
                       : 0.0;
    s.best_fitness = best_.value_or(std::nan(""));
    s.evaluations = std::max(s.evaluations, last_eval_);
    RunLog out = std::move(log_);
    log_ = RunLog{};
    best_.reset();
    last_eval_ = 0;
    return out;
}

double diversity(const Population& pop, const BoxDomain& domain, bool sample) {
    const std::size_t n_pop = pop.size();
    if (n_pop < 2) {
        throw UndefinedInput("diversity needs at least two members");
    }
    const std::size_t n = domain.dim();
    const double divisor = static_cast<double>(sample ? n_pop - 1 : n_pop);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double mean = 0.0;
        for (const auto& m : pop.members) {
            if (m.position.size() != n) {
                throw ContractViolation("diversity: member dimension mismatch");
            }
            mean += m.position[i];
        }
        mean /= static_cast<double>(n_pop);
        double ss = 0.0;
        for (const auto& m : pop.members) {
            const double d = m.position[i] - mean;
            ss += d * d;
        }
        total += std::sqrt(ss / divisor);
    }
    return total / static_cast<double>(n);
}

std::vector<std::pair<std::size_t, double>> windowed_pois(const RunLog& log, std::size_t window) {
    if (window == 0) {
        throw ConfigError("window must be at least 1");
    }
    std::vector<std::pair<std::size_t, double>> out;
    std::deque<double> recent;
    double sum = 0.0;
    for (const auto& g : log.generations) {
        if (g.trials == 0) continue;
        const double frac = static_cast<double>(g.infeasible_trials) / static_cast<double>(g.trials);
        recent.push_back(frac);
        sum += frac;
        if (recent.size() > window) {
            sum -= recent.front();
            recent.pop_front();
        }
        out.emplace_back(g.generation, sum / static_cast<double>(recent.size()));
    }
    return out;
}

std::vector<std::pair<std::size_t, double>> cumulative_pois(const RunLog& log) {
    std::vector<std::pair<std::size_t, double>> out;
    std::size_t infeasible = 0, trials = 0;
    for (const auto& g : log.generations) {
        if (g.trials == 0) continue;
        infeasible += g.infeasible_trials;
        trials += g.trials;
        out.emplace_back(g.generation, static_cast<double>(infeasible) / static_cast<double>(trials));
    }
    return out;
}

namespace {

template <typename Denominator>
double component_rate(const RunLog& log, std::size_t horizon, Denominator denom) {
    std::size_t recorded = 0;
    std::size_t bad = 0, total = 0;
    for (const auto& g : log.generations) {
        if (g.generation == 0 || g.generation > horizon) continue;
        ++recorded;
        bad += g.infeasible_components;
        total += denom(g);
    }
    if (recorded < horizon) {
        throw ConfigError("violation_frequency: only " + std::to_string(recorded) + " generations recorded, need " +
                          std::to_string(horizon));
    }
    return total > 0 ? static_cast<double>(bad) / static_cast<double>(total) : 0.0;
}

} // namespace

double violation_frequency(const RunLog& log, std::size_t horizon_generations) {
    return component_rate(log, horizon_generations, [](const GenRecord& g) { return g.components; });
}

double mutant_violation_frequency(const RunLog& log, std::size_t horizon_generations) {
    return component_rate(log, horizon_generations, [](const GenRecord& g) { return g.mutant_components; });
}

std::vector<std::pair<double, double>> cs_ecdf(std::span<const double> values, std::span<const double> grid) {
    if (values.empty()) {
        throw UndefinedInput("cs_ecdf: no values");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    std::vector<std::pair<double, double>> out;
    out.reserve(grid.size());
    for (double x : grid) {
        const auto count = std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin();
        out.emplace_back(x, static_cast<double>(count) / n);
    }
    return out;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
    std::vector<double> out;
    if (n == 0) return out;
    if (n == 1) return {lo};
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    return out;
}

} // namespace sdisde
