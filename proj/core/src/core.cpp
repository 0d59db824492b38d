#include "sdisde/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace sdisde {

BoxDomain::BoxDomain(Vector lower, Vector upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.empty()) {
        throw ConfigError("BoxDomain: dimensionality must be at least 1");
    }
    if (lower_.size() != upper_.size()) {
        throw ConfigError("BoxDomain: lower and upper bounds differ in length");
    }
    for (std::size_t i = 0; i < lower_.size(); ++i) {
        if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i]) || !(lower_[i] < upper_[i])) {
            throw ConfigError("BoxDomain: need finite a_i < b_i at index " + std::to_string(i));
        }
    }
}

BoxDomain BoxDomain::hypercube(std::size_t n, double lo, double hi) {
    return BoxDomain(Vector(n, lo), Vector(n, hi));
}

void require_dimension(std::span<const double> x, const BoxDomain& domain) {
    if (x.size() != domain.dim()) {
        throw ContractViolation("vector has length " + std::to_string(x.size()) + ", domain has dimension " +
                                std::to_string(domain.dim()));
    }
}

bool is_feasible(std::span<const double> x, const BoxDomain& domain) {
    require_dimension(x, domain);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] >= domain.lower(i) && x[i] <= domain.upper(i))) {
            return false;
        }
    }
    return true;
}

std::vector<Violation> infeasible_components(std::span<const double> x, const BoxDomain& domain) {
    require_dimension(x, domain);
    std::vector<Violation> out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < domain.lower(i)) {
            out.push_back({i, BoundSide::Lower});
        } else if (x[i] > domain.upper(i)) {
            out.push_back({i, BoundSide::Upper});
        }
    }
    return out;
}

Population init_population(std::size_t n_members, const BoxDomain& domain, RngStream& rng) {
    if (n_members < kMinPopulation) {
        throw ConfigError("population size must be at least 4, got " + std::to_string(n_members));
    }
    Population pop;
    pop.members.resize(n_members);
    for (auto& member : pop.members) {
        member.position.resize(domain.dim());
        for (std::size_t i = 0; i < domain.dim(); ++i) {
            // uniform() < 1, so the draw never reaches the upper bound.
            member.position[i] = rng.uniform(domain.lower(i), domain.upper(i));
        }
    }
    return pop;
}

std::vector<std::size_t> rank_by_fitness(const Population& pop) {
    std::vector<std::size_t> order(pop.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (const auto& m : pop.members) {
        if (!m.fitness) {
            throw ContractViolation("rank_by_fitness: unevaluated member");
        }
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
        return *pop.members[l].fitness < *pop.members[r].fitness;
    });
    return order;
}

Budget::Budget(std::size_t max_evaluations) : max_(max_evaluations) {
    if (max_evaluations == 0) {
        throw ConfigError("budget must allow at least one evaluation");
    }
}

void Budget::charge() {
    if (exhausted()) {
        throw ContractViolation("evaluation budget exhausted");
    }
    ++used_;
}

} // namespace sdisde
