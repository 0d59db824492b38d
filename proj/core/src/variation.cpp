#include "sdisde/variation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace sdisde {

std::string_view to_string(Crossover c) noexcept {
    return c == Crossover::Bin ? "bin" : "exp";
}

Crossover parse_crossover(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (lower == "bin") return Crossover::Bin;
    if (lower == "exp") return Crossover::Exp;
    throw ConfigError("unknown crossover '" + std::string(name) + "'");
}

void DeParams::validate() const {
    if (!(F > 0.0 && F <= 2.0)) {
        throw ConfigError("scale factor F must lie in (0, 2], got " + std::to_string(F));
    }
    if (!(Cr >= 0.0 && Cr <= 1.0)) {
        throw ConfigError("crossover rate Cr must lie in [0, 1], got " + std::to_string(Cr));
    }
}

Vector mutate_rand1(const Population& pop, std::size_t target_index, double F, RngStream& rng) {
    const std::size_t n_pop = pop.size();
    if (n_pop < kMinPopulation) {
        throw ConfigError("rand/1 mutation needs at least 4 members");
    }
    std::size_t r1, r2, r3;
    do { r1 = rng.uniform_index(n_pop); } while (r1 == target_index);
    do { r2 = rng.uniform_index(n_pop); } while (r2 == target_index || r2 == r1);
    do { r3 = rng.uniform_index(n_pop); } while (r3 == target_index || r3 == r1 || r3 == r2);

    const auto& base = pop[r1].position;
    const auto& left = pop[r2].position;
    const auto& right = pop[r3].position;
    Vector mutant(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        mutant[i] = base[i] + F * (left[i] - right[i]);
    }
    return mutant;
}

Vector mutate_current_to_pbest1(const Population& pop, std::span<const std::size_t> ranked,
                                std::span<const Individual> archive, std::size_t target_index, double F, double p,
                                RngStream& rng) {
    const std::size_t n_pop = pop.size();
    if (!(p > 0.0 && p <= 1.0)) {
        throw ConfigError("pbest fraction p must lie in (0, 1]");
    }
    if (n_pop < 3 || ranked.size() != n_pop) {
        throw ConfigError("current-to-pbest/1 needs a ranked population of at least 3");
    }
    const auto n_best = std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(p * static_cast<double>(n_pop))),
                                                1, n_pop);
    const std::size_t pbest = ranked[rng.uniform_index(n_best)];

    std::size_t r1;
    do { r1 = rng.uniform_index(n_pop); } while (r1 == target_index);
    const std::size_t pool = n_pop + archive.size();
    std::size_t r2;
    do { r2 = rng.uniform_index(pool); } while (r2 == target_index || r2 == r1);

    const auto& x = pop[target_index].position;
    const auto& best = pop[pbest].position;
    const auto& a = pop[r1].position;
    const auto& b = r2 < n_pop ? pop[r2].position : archive[r2 - n_pop].position;
    Vector mutant(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        mutant[i] = x[i] + F * (best[i] - x[i]) + F * (a[i] - b[i]);
    }
    return mutant;
}

CrossoverMask binomial_mask(std::size_t n, double Cr, RngStream& rng) {
    CrossoverMask mask(n, false);
    const std::size_t j_rand = rng.uniform_index(n);
    for (std::size_t i = 0; i < n; ++i) {
        mask[i] = rng.uniform() < Cr || i == j_rand;
    }
    return mask;
}

CrossoverMask exponential_mask(std::size_t n, double Cr, RngStream& rng) {
    CrossoverMask mask(n, false);
    std::size_t j = rng.uniform_index(n);
    std::size_t copied = 0;
    do {
        mask[j] = true;
        j = (j + 1) % n;
        ++copied;
    } while (copied < n && rng.uniform() < Cr);
    return mask;
}

CrossoverMask crossover_mask(Crossover kind, std::size_t n, double Cr, RngStream& rng) {
    if (n == 0) {
        throw ContractViolation("crossover: empty vectors");
    }
    return kind == Crossover::Bin ? binomial_mask(n, Cr, rng) : exponential_mask(n, Cr, rng);
}

Vector apply_mask(std::span<const double> target, std::span<const double> mutant, const CrossoverMask& mask) {
    if (target.size() != mutant.size() || mask.size() != target.size()) {
        throw ContractViolation("crossover: length mismatch");
    }
    Vector trial(target.begin(), target.end());
    for (std::size_t i = 0; i < trial.size(); ++i) {
        if (mask[i]) trial[i] = mutant[i];
    }
    return trial;
}

Vector crossover(Crossover kind, std::span<const double> target, std::span<const double> mutant, double Cr,
                 RngStream& rng) {
    if (target.size() != mutant.size()) {
        throw ContractViolation("crossover: length mismatch");
    }
    return apply_mask(target, mutant, crossover_mask(kind, target.size(), Cr, rng));
}

Vector crossover_bin(std::span<const double> target, std::span<const double> mutant, double Cr, RngStream& rng) {
    return crossover(Crossover::Bin, target, mutant, Cr, rng);
}

Vector crossover_exp(std::span<const double> target, std::span<const double> mutant, double Cr, RngStream& rng) {
    return crossover(Crossover::Exp, target, mutant, Cr, rng);
}

} // namespace sdisde
