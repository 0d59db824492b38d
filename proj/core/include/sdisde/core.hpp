#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "sdisde/errors.hpp"
#include "sdisde/rng.hpp"

namespace sdisde {

using Vector = std::vector<double>;

/// Axis-aligned box D = [a_1,b_1] x ... x [a_n,b_n]. Bounds are closed.
class BoxDomain {
public:
    BoxDomain(Vector lower, Vector upper);

    /// [lo, hi]^n
    static BoxDomain hypercube(std::size_t n, double lo, double hi);

    std::size_t dim() const noexcept { return lower_.size(); }
    double lower(std::size_t i) const { return lower_[i]; }
    double upper(std::size_t i) const { return upper_[i]; }
    double width(std::size_t i) const { return upper_[i] - lower_[i]; }
    std::span<const double> lower() const noexcept { return lower_; }
    std::span<const double> upper() const noexcept { return upper_; }

    friend bool operator==(const BoxDomain&, const BoxDomain&) = default;

private:
    Vector lower_;
    Vector upper_;
};

enum class BoundSide { Lower, Upper };

struct Violation {
    std::size_t index;
    BoundSide side;

    friend bool operator==(const Violation&, const Violation&) = default;
};

bool is_feasible(std::span<const double> x, const BoxDomain& domain);

/// Every component outside its interval, in index order.
std::vector<Violation> infeasible_components(std::span<const double> x, const BoxDomain& domain);

struct Individual {
    Vector position;
    std::optional<double> fitness;
};

struct Population {
    std::vector<Individual> members;
    std::size_t generation = 0;

    std::size_t size() const noexcept { return members.size(); }
    const Individual& operator[](std::size_t i) const { return members[i]; }
    Individual& operator[](std::size_t i) { return members[i]; }
};

inline constexpr std::size_t kMinPopulation = 4;

/// N members drawn i.i.d. uniformly on the domain; fitness unset.
Population init_population(std::size_t n_members, const BoxDomain& domain, RngStream& rng);

/// Indices of `pop` ordered by ascending fitness (ties by index).
/// Every member must be evaluated.
std::vector<std::size_t> rank_by_fitness(const Population& pop);

/// Fitness-evaluation counter with a hard cap.
class Budget {
public:
    explicit Budget(std::size_t max_evaluations);

    std::size_t max_evaluations() const noexcept { return max_; }
    std::size_t used() const noexcept { return used_; }
    std::size_t remaining() const noexcept { return max_ - used_; }
    bool exhausted() const noexcept { return used_ >= max_; }

    /// Account for one evaluation. Throws ContractViolation when exhausted.
    void charge();

private:
    std::size_t max_;
    std::size_t used_ = 0;
};

void require_dimension(std::span<const double> x, const BoxDomain& domain);

} // namespace sdisde
