#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sdisde/core.hpp"

namespace sdisde {

/// One evaluated trial vector.
struct CorrectionRecord {
    std::size_t eval_index = 0;   ///< 1-based index of the evaluation
    std::size_t generation = 0;
    std::size_t n_corrected = 0;  ///< infeasible components repaired
    std::optional<double> cosine; ///< set only for corrected trials with non-zero directions

    friend bool operator==(const CorrectionRecord&, const CorrectionRecord&) = default;
};

/// State at the end of a generation. Generation 0 is the evaluated initial
/// population and has no trials.
struct GenRecord {
    std::size_t generation = 0;
    double diversity = 0.0;
    std::size_t infeasible_trials = 0;
    std::size_t trials = 0;
    std::size_t infeasible_components = 0;
    std::size_t components = 0;        ///< trials * n
    std::size_t mutant_components = 0; ///< trial components taken from the mutant
    double best_fitness = 0.0;
    std::size_t pop_size = 0;

    friend bool operator==(const GenRecord&, const GenRecord&) = default;
};

/// Best-so-far fitness after an improving evaluation.
struct TrajectoryPoint {
    std::size_t eval_index = 0;
    double best_fitness = 0.0;

    friend bool operator==(const TrajectoryPoint&, const TrajectoryPoint&) = default;
};

struct RunSummary {
    std::size_t total_trials = 0;
    std::size_t infeasible_trials = 0;
    std::size_t total_infeasible_components = 0;
    std::size_t total_components_generated = 0;
    std::size_t evaluations = 0;
    double final_pois = 0.0;
    double best_fitness = 0.0;

    friend bool operator==(const RunSummary&, const RunSummary&) = default;
};

struct RunLog {
    /// Trials in evaluation order. Feasible trials are kept only when the
    /// recorder is asked to (see RecorderOptions).
    std::vector<CorrectionRecord> corrections;
    std::vector<GenRecord> generations;
    std::vector<TrajectoryPoint> trajectory;
    RunSummary summary;

    /// All recorded cosine values.
    std::vector<double> cosines() const;
};

/// Event emitted by an engine after each trial is evaluated.
struct TrialEvent {
    std::size_t eval_index;
    std::size_t generation;
    std::span<const double> target;
    std::span<const double> trial;     ///< before repair
    std::span<const double> corrected; ///< after repair, the evaluated point
    std::size_t n_corrected;
    std::size_t mutant_components;
    std::optional<double> cosine;
    double fitness;
    bool accepted;
};

struct GenerationEvent {
    std::size_t generation;
    const Population& population;
    const BoxDomain& domain;
    std::size_t evaluations_used;
};

/// Receives engine notifications.
class Observer {
public:
    virtual ~Observer() = default;
    virtual void on_initial_evaluation(std::size_t /*eval_index*/, double /*fitness*/) {}
    virtual void on_trial(const TrialEvent&) {}
    virtual void on_generation(const GenerationEvent&) {}
};

struct RecorderOptions {
    bool record_feasible_trials = false;
    bool sample_diversity = true;
};

/// Builds a RunLog from engine events.
class RunRecorder final : public Observer {
public:
    explicit RunRecorder(RecorderOptions options = {}) : options_(options) {}

    void on_initial_evaluation(std::size_t eval_index, double fitness) override;
    void on_trial(const TrialEvent& ev) override;
    void on_generation(const GenerationEvent& ev) override;

    /// Finalises the summary and hands the log over.
    RunLog finish();

private:
    void note_fitness(std::size_t eval_index, double fitness);

    RecorderOptions options_;
    RunLog log_;
    GenRecord pending_;
    std::optional<double> best_;
    std::size_t last_eval_ = 0;
};

/// Mean over dimensions of the per-dimension population standard deviation
/// (divisor N, or N - 1 when `sample` is set). Throws UndefinedInput for
/// fewer than two members.
double diversity(const Population& pop, const BoxDomain& domain, bool sample = false);

/// (generation, fraction) where fraction is the mean per-generation
/// infeasible-trial rate over the last `window` generations that had trials.
std::vector<std::pair<std::size_t, double>> windowed_pois(const RunLog& log, std::size_t window = 10);

/// (generation, infeasible trials so far / trials so far).
std::vector<std::pair<std::size_t, double>> cumulative_pois(const RunLog& log);

/// Infeasible components over all generated components, for generations
/// 1..horizon. Throws ConfigError if fewer generations were recorded.
double violation_frequency(const RunLog& log, std::size_t horizon_generations);

/// Same count, but divided by the components inherited from the mutant
/// (an estimate of the per-component violation probability).
double mutant_violation_frequency(const RunLog& log, std::size_t horizon_generations);

/// Empirical CDF of `values` evaluated at every grid point:
/// (x, fraction of values <= x). Throws UndefinedInput for empty values.
std::vector<std::pair<double, double>> cs_ecdf(std::span<const double> values, std::span<const double> grid);

/// n evenly spaced points on [lo, hi].
std::vector<double> linear_grid(double lo, double hi, std::size_t n);

} // namespace sdisde
