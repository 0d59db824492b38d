#pragma once

#include <span>
#include <string_view>

#include "sdisde/core.hpp"

namespace sdisde {

enum class Crossover { Bin, Exp };

std::string_view to_string(Crossover c) noexcept;
Crossover parse_crossover(std::string_view name);

/// Classic DE control parameters: scale factor F in (0, 2], crossover rate
/// Cr in [0, 1].
struct DeParams {
    double F = 0.5;
    double Cr = 0.9;
    Crossover crossover = Crossover::Bin;

    /// Throws ConfigError when out of range.
    void validate() const;
};

/// x_r1 + F (x_r2 - x_r3) with r1, r2, r3 mutually distinct and distinct from
/// the target.
Vector mutate_rand1(const Population& pop, std::size_t target_index, double F, RngStream& rng);

/// x_i + F (x_pbest - x_i) + F (x_r1 - x~_r2).
///
/// `ranked` lists population indices best-first (see rank_by_fitness). pbest
/// is uniform among the ceil(p N) best, r1 is drawn from the population and
/// x~_r2 from population + archive; r1 and r2 differ from i and from each
/// other.
Vector mutate_current_to_pbest1(const Population& pop, std::span<const std::size_t> ranked,
                                std::span<const Individual> archive, std::size_t target_index, double F, double p,
                                RngStream& rng);

/// Per-component flag: true where the trial takes the mutant component.
using CrossoverMask = std::vector<bool>;

/// j_rand uniform, then component i is taken when u_i < Cr or i == j_rand.
CrossoverMask binomial_mask(std::size_t n, double Cr, RngStream& rng);
CrossoverMask exponential_mask(std::size_t n, double Cr, RngStream& rng);
CrossoverMask crossover_mask(Crossover kind, std::size_t n, double Cr, RngStream& rng);

Vector apply_mask(std::span<const double> target, std::span<const double> mutant, const CrossoverMask& mask);

Vector crossover_bin(std::span<const double> target, std::span<const double> mutant, double Cr, RngStream& rng);

/// Copies one circularly contiguous run of mutant components starting at a
/// uniform index; the run continues while successive draws are < Cr.
Vector crossover_exp(std::span<const double> target, std::span<const double> mutant, double Cr, RngStream& rng);

Vector crossover(Crossover kind, std::span<const double> target, std::span<const double> mutant, double Cr,
                 RngStream& rng);

} // namespace sdisde
