#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "sdisde/core.hpp"
#include "sdisde/functions.hpp"
#include "sdisde/instruments.hpp"
#include "sdisde/sdis.hpp"
#include "sdisde/variation.hpp"

namespace sdisde {

enum class EngineKind { DeRand1, Shade, LShade };

std::string_view to_string(EngineKind kind) noexcept;
EngineKind parse_engine(std::string_view name);

/// Knobs for SHADE and L-SHADE. Zero means "use the engine default".
struct ShadeOptions {
    std::size_t memory_size = 0;  ///< H; defaults to N for SHADE and 6 for L-SHADE
    double p_max = 0.2;
    double p_min = 0.0;           ///< defaults to 2 / N (current N)
    double archive_rate = 1.0;    ///< archive capacity = round(rate * N)
    std::size_t min_population = kMinPopulation;
    double f_scale = 0.1;         ///< Cauchy scale around memory_F
    double cr_scale = 0.1;        ///< normal stddev around memory_Cr
};

struct EngineConfig {
    EngineKind engine = EngineKind::DeRand1;
    DeParams params;               ///< DE/rand/1 only
    std::size_t population_size = 100; ///< initial size for L-SHADE
    SdisKind sdis = SdisKind::SAT;
    SdisOptions sdis_options;
    std::size_t max_evaluations = 0;
    std::uint64_t seed = 0;
    ShadeOptions shade;
    RecorderOptions recorder;

    /// Throws ConfigError on inconsistent settings.
    void validate() const;
};

/// Success-history state shared by SHADE and L-SHADE.
struct ShadeState {
    std::vector<double> memory_F;
    std::vector<double> memory_Cr;
    std::size_t memory_index = 0;
    std::vector<Individual> archive;
    std::size_t archive_capacity = 0;
    double p_min = 0.0;
    double p_max = 0.2;
    double f_scale = 0.1;
    double cr_scale = 0.1;
};

/// Memory of size H with every entry at 0.5, empty archive.
ShadeState make_shade_state(std::size_t memory_size, std::size_t archive_capacity, double p_min, double p_max);

struct ShadeParameters {
    double F;
    double Cr;
    double p;
};

/// Per-individual draw: r uniform in memory, F ~ Cauchy(M_F[r], s) redrawn
/// while <= 0 and capped at 1, Cr ~ N(M_Cr[r], s) clipped to [0, 1],
/// p ~ U(p_min, p_max).
ShadeParameters sample_shade_parameters(const ShadeState& state, RngStream& rng);

/// sum(w x^2) / sum(w x).
double weighted_lehmer_mean(std::span<const double> values, std::span<const double> weights);
double weighted_arithmetic_mean(std::span<const double> values, std::span<const double> weights);

/// Writes the improvement-weighted means of the successful parameters into
/// the current memory slot and advances the cursor. A no-op when there were
/// no successes.
void update_memory(ShadeState& state, std::span<const double> successful_F, std::span<const double> successful_Cr,
                   std::span<const double> improvements);

/// Adds a replaced parent; evicts a uniformly chosen entry on overflow.
void archive_insert(ShadeState& state, Individual parent, RngStream& rng);

/// Everything a generation step needs besides the population.
struct StepContext {
    ObjectiveFunction& objective;
    Budget& budget;
    SdisKind sdis;
    SdisOptions sdis_options;
    RngStream& algorithm_rng;
    RngStream& sdis_rng;
    std::span<Observer* const> observers;
};

/// One synchronous DE/rand/1/{bin,exp} generation: all trials are built from
/// the generation-start population, a trial replaces its target when its
/// fitness is <= the target's. Stops early when the budget runs out.
/// Returns the number of trials evaluated.
std::size_t de_step(const DeParams& params, Population& pop, StepContext& ctx);

/// One SHADE generation (current-to-pbest/1/bin with success-history
/// adaptation of F and Cr).
std::size_t shade_step(ShadeState& state, Population& pop, StepContext& ctx);

/// round(N_min + (N_init - N_min) * (1 - used / max)).
std::size_t lshade_target_size(std::size_t used, std::size_t max_evaluations, std::size_t initial_size,
                               std::size_t min_size);

/// Removes the worst members down to the target size and trims the archive
/// to the new capacity.
void lshade_resize(Population& pop, ShadeState& state, const Budget& budget, std::size_t initial_size,
                   std::size_t min_size, double archive_rate, RngStream& rng);

/// Full run until the evaluation budget is exhausted.
RunLog run(const EngineConfig& config, ObjectiveFunction& objective, std::span<Observer* const> observers = {});

} // namespace sdisde
