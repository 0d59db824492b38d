#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sdisde/core.hpp"

namespace sdisde {

/// Box-constrained objective to be minimised. Implementations may only be
/// called with feasible points.
class ObjectiveFunction {
public:
    virtual ~ObjectiveFunction() = default;

    virtual std::string_view id() const noexcept = 0;
    virtual const BoxDomain& domain() const noexcept = 0;
    std::size_t dim() const noexcept { return domain().dim(); }

    virtual double evaluate(std::span<const double> x) = 0;

    /// Global minimiser and its value, when known.
    virtual std::optional<Vector> optimum() const { return std::nullopt; }
    virtual std::optional<double> optimum_value() const { return std::nullopt; }
};

/// f0: every call returns a fresh U(0,1) value regardless of x. Domain is
/// [0,1]^n.
class RandomObjective final : public ObjectiveFunction {
public:
    RandomObjective(std::size_t n, std::uint64_t seed);

    std::string_view id() const noexcept override { return "f0"; }
    const BoxDomain& domain() const noexcept override { return domain_; }
    double evaluate(std::span<const double> x) override;

private:
    BoxDomain domain_;
    RngStream rng_;
};

/// Constant objective on [0,1]^n: removes selection pressure entirely, so
/// every trial is accepted.
class FlatObjective final : public ObjectiveFunction {
public:
    explicit FlatObjective(std::size_t n, double value = 0.0);

    std::string_view id() const noexcept override { return "flat"; }
    const BoxDomain& domain() const noexcept override { return domain_; }
    double evaluate(std::span<const double> x) override;

private:
    BoxDomain domain_;
    double value_;
};

/// Built-in deterministic functions on [-5, 5]^n, each shifted by an
/// instance-dependent vector s so that f(s) = 0 is the minimum.
enum class SuiteFunction { Sphere, Ellipsoidal, LinearSlope, Rosenbrock, Rastrigin, Katsuura };

std::string_view to_string(SuiteFunction f) noexcept;

class ShiftedFunction final : public ObjectiveFunction {
public:
    /// shift must lie in the domain [-5,5]^n. For LinearSlope every entry of
    /// the shift must be +5 or -5.
    ShiftedFunction(SuiteFunction kind, Vector shift);

    std::string_view id() const noexcept override { return to_string(kind_); }
    const BoxDomain& domain() const noexcept override { return domain_; }
    double evaluate(std::span<const double> x) override;
    std::optional<Vector> optimum() const override { return shift_; }
    std::optional<double> optimum_value() const override { return 0.0; }

    SuiteFunction kind() const noexcept { return kind_; }
    const Vector& shift() const noexcept { return shift_; }

private:
    SuiteFunction kind_;
    BoxDomain domain_;
    Vector shift_;
};

inline constexpr double kSuiteLower = -5.0;
inline constexpr double kSuiteUpper = 5.0;

struct FunctionSpec {
    std::string id;            ///< "f0", "flat" or a suite id such as "sphere"
    std::size_t dimension = 0;
    std::uint64_t instance = 1;
};

/// Known ids, in a stable order.
std::vector<std::string> function_ids();

/// Builds a function. `stream_seed` drives f0's draws and is ignored by the
/// deterministic functions, whose shift depends only on (id, instance).
/// Throws ConfigError for unknown ids or unsupported dimensions.
std::unique_ptr<ObjectiveFunction> make_function(const FunctionSpec& spec, std::uint64_t stream_seed);

/// The shift used for (kind, n, instance): uniform in [-4,4]^n, or a random
/// sign pattern scaled to +-5 for the linear slope.
Vector instance_shift(SuiteFunction kind, std::size_t n, std::uint64_t instance);

} // namespace sdisde
