#include "sdisde/engines.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <string>

namespace sdisde {

namespace {

void notify_trial(StepContext& ctx, const TrialEvent& ev) {
    for (auto* obs : ctx.observers) obs->on_trial(ev);
}

struct EvaluatedTrial {
    Individual candidate;
    std::size_t n_corrected;
};

// Repair, evaluate and report one trial. The caller decides on replacement.
EvaluatedTrial evaluate_trial(StepContext& ctx, const Individual& target, const Vector& trial,
                              const CrossoverMask& mask, std::size_t generation) {
    const auto& domain = ctx.objective.domain();
    auto outcome = apply_sdis(ctx.sdis, trial, target.position, domain, ctx.sdis_rng, ctx.sdis_options);
    ctx.budget.charge();
    const double f = ctx.objective.evaluate(outcome.corrected);
    const bool accepted = f <= *target.fitness;
    const auto mutant_components = static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true));
    notify_trial(ctx, TrialEvent{ctx.budget.used(), generation, target.position, trial, outcome.corrected,
                                 outcome.n_corrected, mutant_components, outcome.cosine, f, accepted});
    return {Individual{std::move(outcome.corrected), f}, outcome.n_corrected};
}

std::size_t default_memory_size(const EngineConfig& config) {
    if (config.shade.memory_size > 0) return config.shade.memory_size;
    return config.engine == EngineKind::LShade ? 6 : config.population_size;
}

std::size_t archive_capacity_for(double rate, std::size_t n_pop) {
    return static_cast<std::size_t>(std::lround(rate * static_cast<double>(n_pop)));
}

} // namespace

std::string_view to_string(EngineKind kind) noexcept {
    switch (kind) {
    case EngineKind::DeRand1: return "de_rand1";
    case EngineKind::Shade: return "shade";
    case EngineKind::LShade: return "lshade";
    }
    return "?";
}

EngineKind parse_engine(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    std::erase_if(lower, [](char c) { return c == '-' || c == '_' || c == '/'; });
    if (lower == "derand1" || lower == "de") return EngineKind::DeRand1;
    if (lower == "shade") return EngineKind::Shade;
    if (lower == "lshade") return EngineKind::LShade;
    throw ConfigError("unknown engine '" + std::string(name) + "'");
}

void EngineConfig::validate() const {
    if (population_size < kMinPopulation) {
        throw ConfigError("population size must be at least 4");
    }
    if (max_evaluations < population_size) {
        throw ConfigError("budget of " + std::to_string(max_evaluations) +
                          " evaluations cannot cover the initial population of " + std::to_string(population_size));
    }
    if (engine == EngineKind::DeRand1) {
        params.validate();
    } else {
        if (!(shade.p_max > 0.0 && shade.p_max <= 1.0) || shade.p_min < 0.0 || shade.p_min > 1.0) {
            throw ConfigError("pbest fractions must lie in (0, 1]");
        }
        if (shade.archive_rate < 0.0) {
            throw ConfigError("archive rate must be non-negative");
        }
        if (engine == EngineKind::LShade &&
            (shade.min_population < kMinPopulation || shade.min_population > population_size)) {
            throw ConfigError("L-SHADE minimum population must lie in [4, N_init]");
        }
    }
    if (!(sdis_options.cotn_sigma_fraction > 0.0)) {
        throw ConfigError("COTN sigma fraction must be positive");
    }
}

ShadeState make_shade_state(std::size_t memory_size, std::size_t archive_capacity, double p_min, double p_max) {
    if (memory_size == 0) {
        throw ConfigError("SHADE memory size must be positive");
    }
    ShadeState state;
    state.memory_F.assign(memory_size, 0.5);
    state.memory_Cr.assign(memory_size, 0.5);
    state.archive_capacity = archive_capacity;
    state.p_min = p_min;
    state.p_max = p_max;
    return state;
}

ShadeParameters sample_shade_parameters(const ShadeState& state, RngStream& rng) {
    const std::size_t r = rng.uniform_index(state.memory_F.size());
    double F = rng.cauchy(state.memory_F[r], state.f_scale);
    while (F <= 0.0) {
        F = rng.cauchy(state.memory_F[r], state.f_scale);
    }
    F = std::min(F, 1.0);
    const double Cr = std::clamp(rng.normal(state.memory_Cr[r], state.cr_scale), 0.0, 1.0);
    const double p = state.p_min < state.p_max ? rng.uniform(state.p_min, state.p_max) : state.p_min;
    return {F, Cr, p};
}

double weighted_lehmer_mean(std::span<const double> values, std::span<const double> weights) {
    if (values.size() != weights.size() || values.empty()) {
        throw ContractViolation("weighted_lehmer_mean: need equal, non-empty inputs");
    }
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        num += weights[i] * values[i] * values[i];
        den += weights[i] * values[i];
    }
    if (den == 0.0) {
        throw UndefinedInput("weighted_lehmer_mean: zero denominator");
    }
    return num / den;
}

double weighted_arithmetic_mean(std::span<const double> values, std::span<const double> weights) {
    if (values.size() != weights.size() || values.empty()) {
        throw ContractViolation("weighted_arithmetic_mean: need equal, non-empty inputs");
    }
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        num += weights[i] * values[i];
        den += weights[i];
    }
    if (den == 0.0) {
        throw UndefinedInput("weighted_arithmetic_mean: zero total weight");
    }
    return num / den;
}

void update_memory(ShadeState& state, std::span<const double> successful_F, std::span<const double> successful_Cr,
                   std::span<const double> improvements) {
    if (successful_F.empty()) {
        return;
    }
    if (successful_F.size() != successful_Cr.size() || successful_F.size() != improvements.size()) {
        throw ContractViolation("update_memory: success lists differ in length");
    }
    state.memory_F[state.memory_index] = weighted_lehmer_mean(successful_F, improvements);
    state.memory_Cr[state.memory_index] = weighted_arithmetic_mean(successful_Cr, improvements);
    state.memory_index = (state.memory_index + 1) % state.memory_F.size();
}

void archive_insert(ShadeState& state, Individual parent, RngStream& rng) {
    if (state.archive_capacity == 0) {
        return;
    }
    if (state.archive.size() < state.archive_capacity) {
        state.archive.push_back(std::move(parent));
    } else {
        state.archive[rng.uniform_index(state.archive.size())] = std::move(parent);
    }
}

std::size_t de_step(const DeParams& params, Population& pop, StepContext& ctx) {
    const Population snapshot = pop;
    const std::size_t generation = pop.generation + 1;
    const std::size_t n = ctx.objective.dim();
    std::size_t trials = 0;
    for (std::size_t i = 0; i < snapshot.size() && !ctx.budget.exhausted(); ++i) {
        const auto& target = snapshot[i];
        const Vector mutant = mutate_rand1(snapshot, i, params.F, ctx.algorithm_rng);
        const auto mask = crossover_mask(params.crossover, n, params.Cr, ctx.algorithm_rng);
        const Vector trial = apply_mask(target.position, mutant, mask);
        auto result = evaluate_trial(ctx, target, trial, mask, generation);
        ++trials;
        if (*result.candidate.fitness <= *target.fitness) {
            pop[i] = std::move(result.candidate);
        }
    }
    pop.generation = generation;
    return trials;
}

std::size_t shade_step(ShadeState& state, Population& pop, StepContext& ctx) {
    const Population snapshot = pop;
    const auto ranked = rank_by_fitness(snapshot);
    const std::size_t generation = pop.generation + 1;
    const std::size_t n = ctx.objective.dim();

    std::vector<double> good_F, good_Cr, improvement;
    std::vector<Individual> replaced;
    std::size_t trials = 0;
    for (std::size_t i = 0; i < snapshot.size() && !ctx.budget.exhausted(); ++i) {
        const auto& target = snapshot[i];
        const auto prm = sample_shade_parameters(state, ctx.algorithm_rng);
        const Vector mutant =
            mutate_current_to_pbest1(snapshot, ranked, state.archive, i, prm.F, prm.p, ctx.algorithm_rng);
        const auto mask = binomial_mask(n, prm.Cr, ctx.algorithm_rng);
        const Vector trial = apply_mask(target.position, mutant, mask);
        auto result = evaluate_trial(ctx, target, trial, mask, generation);
        ++trials;
        const double f = *result.candidate.fitness;
        if (f < *target.fitness) {
            good_F.push_back(prm.F);
            good_Cr.push_back(prm.Cr);
            improvement.push_back(*target.fitness - f);
            replaced.push_back(target);
        }
        if (f <= *target.fitness) {
            pop[i] = std::move(result.candidate);
        }
    }
    for (auto& parent : replaced) {
        archive_insert(state, std::move(parent), ctx.algorithm_rng);
    }
    update_memory(state, good_F, good_Cr, improvement);
    pop.generation = generation;
    return trials;
}

std::size_t lshade_target_size(std::size_t used, std::size_t max_evaluations, std::size_t initial_size,
                               std::size_t min_size) {
    const double progress =
        std::clamp(static_cast<double>(used) / static_cast<double>(max_evaluations), 0.0, 1.0);
    const double size = static_cast<double>(min_size) +
                        static_cast<double>(initial_size - min_size) * (1.0 - progress);
    return static_cast<std::size_t>(std::lround(size));
}

void lshade_resize(Population& pop, ShadeState& state, const Budget& budget, std::size_t initial_size,
                   std::size_t min_size, double archive_rate, RngStream& rng) {
    const std::size_t target = lshade_target_size(budget.used(), budget.max_evaluations(), initial_size, min_size);
    if (pop.size() > target) {
        auto ranked = rank_by_fitness(pop);
        ranked.resize(target);
        std::sort(ranked.begin(), ranked.end());
        std::vector<Individual> kept;
        kept.reserve(target);
        for (auto idx : ranked) kept.push_back(std::move(pop.members[idx]));
        pop.members = std::move(kept);
    }
    state.archive_capacity = archive_capacity_for(archive_rate, pop.size());
    while (state.archive.size() > state.archive_capacity) {
        const std::size_t victim = rng.uniform_index(state.archive.size());
        state.archive[victim] = std::move(state.archive.back());
        state.archive.pop_back();
    }
}

RunLog run(const EngineConfig& config, ObjectiveFunction& objective, std::span<Observer* const> observers) {
    config.validate();

    RunRecorder recorder(config.recorder);
    std::vector<Observer*> all_observers{&recorder};
    all_observers.insert(all_observers.end(), observers.begin(), observers.end());

    RngStream algorithm_rng(derive_stream_seed(config.seed, "algorithm"));
    RngStream sdis_rng(derive_stream_seed(config.seed, "sdis"));
    Budget budget(config.max_evaluations);
    const auto& domain = objective.domain();

    Population pop = init_population(config.population_size, domain, algorithm_rng);
    for (auto& member : pop.members) {
        budget.charge();
        member.fitness = objective.evaluate(member.position);
        for (auto* obs : all_observers) obs->on_initial_evaluation(budget.used(), *member.fitness);
    }
    auto notify_generation = [&] {
        const GenerationEvent ev{pop.generation, pop, domain, budget.used()};
        for (auto* obs : all_observers) obs->on_generation(ev);
    };
    notify_generation();

    StepContext ctx{objective, budget, config.sdis, config.sdis_options, algorithm_rng, sdis_rng, all_observers};

    if (config.engine == EngineKind::DeRand1) {
        while (!budget.exhausted()) {
            de_step(config.params, pop, ctx);
            notify_generation();
        }
    } else {
        const std::size_t n_init = config.population_size;
        const bool default_p_min = config.shade.p_min <= 0.0;
        const double p_min = default_p_min ? 2.0 / static_cast<double>(n_init) : config.shade.p_min;
        ShadeState state = make_shade_state(default_memory_size(config),
                                            archive_capacity_for(config.shade.archive_rate, n_init), p_min,
                                            config.shade.p_max);
        state.f_scale = config.shade.f_scale;
        state.cr_scale = config.shade.cr_scale;
        while (!budget.exhausted()) {
            shade_step(state, pop, ctx);
            if (config.engine == EngineKind::LShade) {
                lshade_resize(pop, state, budget, n_init, config.shade.min_population, config.shade.archive_rate,
                              algorithm_rng);
                if (default_p_min) state.p_min = 2.0 / static_cast<double>(pop.size());
            }
            notify_generation();
        }
    }
    return recorder.finish();
}

} // namespace sdisde
