#include "sdisde/functions.hpp"

#include <cmath>
#include <numbers>

namespace sdisde {

namespace {

struct SuiteEntry {
    SuiteFunction kind;
    std::string_view name;
};

constexpr SuiteEntry kSuite[] = {
    {SuiteFunction::Sphere, "sphere"},           {SuiteFunction::Ellipsoidal, "ellipsoidal"},
    {SuiteFunction::LinearSlope, "linear_slope"}, {SuiteFunction::Rosenbrock, "rosenbrock"},
    {SuiteFunction::Rastrigin, "rastrigin"},     {SuiteFunction::Katsuura, "katsuura"},
};

double sphere(std::span<const double> y) {
    double s = 0.0;
    for (double v : y) s += v * v;
    return s;
}

double ellipsoidal(std::span<const double> y) {
    const std::size_t n = y.size();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double exponent = n > 1 ? 6.0 * static_cast<double>(i) / static_cast<double>(n - 1) : 0.0;
        s += std::pow(10.0, exponent) * y[i] * y[i];
    }
    return s;
}

// y = x - s + 1 puts the minimiser (1, ..., 1) of the classic form at s.
double rosenbrock(std::span<const double> y) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < y.size(); ++i) {
        const double a = y[i] + 1.0;
        const double b = y[i + 1] + 1.0;
        s += 100.0 * (b - a * a) * (b - a * a) + (a - 1.0) * (a - 1.0);
    }
    return s;
}

double rastrigin(std::span<const double> y) {
    double s = 10.0 * static_cast<double>(y.size());
    for (double v : y) s += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v);
    return s;
}

double katsuura(std::span<const double> y) {
    const double n = static_cast<double>(y.size());
    const double exponent = 10.0 / std::pow(n, 1.2);
    double prod = 1.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        double inner = 0.0;
        double scale = 2.0;
        for (int j = 1; j <= 32; ++j, scale *= 2.0) {
            const double t = scale * y[i];
            inner += std::abs(t - std::nearbyint(t)) / scale;
        }
        prod *= std::pow(1.0 + static_cast<double>(i + 1) * inner, exponent);
    }
    return 10.0 / (n * n) * (prod - 1.0);
}

} // namespace

RandomObjective::RandomObjective(std::size_t n, std::uint64_t seed)
    : domain_(BoxDomain::hypercube(n, 0.0, 1.0)), rng_(seed) {}

double RandomObjective::evaluate(std::span<const double> x) {
    require_dimension(x, domain_);
    return rng_.uniform();
}

FlatObjective::FlatObjective(std::size_t n, double value)
    : domain_(BoxDomain::hypercube(n, 0.0, 1.0)), value_(value) {}

double FlatObjective::evaluate(std::span<const double> x) {
    require_dimension(x, domain_);
    return value_;
}

std::string_view to_string(SuiteFunction f) noexcept {
    for (const auto& e : kSuite) {
        if (e.kind == f) return e.name;
    }
    return "?";
}

ShiftedFunction::ShiftedFunction(SuiteFunction kind, Vector shift)
    : kind_(kind), domain_(BoxDomain::hypercube(shift.size(), kSuiteLower, kSuiteUpper)), shift_(std::move(shift)) {
    if (!is_feasible(shift_, domain_)) {
        throw ConfigError("function shift lies outside the domain");
    }
    if (kind_ == SuiteFunction::LinearSlope) {
        for (double s : shift_) {
            if (std::abs(s) != kSuiteUpper) {
                throw ConfigError("linear_slope shift entries must be +-5");
            }
        }
    }
    if (kind_ == SuiteFunction::Rosenbrock && shift_.size() < 2) {
        throw ConfigError("rosenbrock needs dimension >= 2");
    }
}

double ShiftedFunction::evaluate(std::span<const double> x) {
    require_dimension(x, domain_);
    if (kind_ == SuiteFunction::LinearSlope) {
        double f = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            f += 5.0 * std::abs(shift_[i]) - shift_[i] * x[i];
        }
        return f;
    }
    Vector y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        y[i] = x[i] - shift_[i];
    }
    switch (kind_) {
    case SuiteFunction::Sphere: return sphere(y);
    case SuiteFunction::Ellipsoidal: return ellipsoidal(y);
    case SuiteFunction::Rosenbrock: return rosenbrock(y);
    case SuiteFunction::Rastrigin: return rastrigin(y);
    case SuiteFunction::Katsuura: return katsuura(y);
    case SuiteFunction::LinearSlope: break;
    }
    return 0.0;
}

Vector instance_shift(SuiteFunction kind, std::size_t n, std::uint64_t instance) {
    RngStream rng(derive_stream_seed(instance, to_string(kind)));
    Vector shift(n);
    for (auto& s : shift) {
        if (kind == SuiteFunction::LinearSlope) {
            s = rng.uniform() < 0.5 ? kSuiteLower : kSuiteUpper;
        } else {
            s = rng.uniform(-4.0, 4.0);
        }
    }
    return shift;
}

std::vector<std::string> function_ids() {
    std::vector<std::string> ids{"f0", "flat"};
    for (const auto& e : kSuite) ids.emplace_back(e.name);
    return ids;
}

std::unique_ptr<ObjectiveFunction> make_function(const FunctionSpec& spec, std::uint64_t stream_seed) {
    if (spec.dimension == 0) {
        throw ConfigError("function dimension must be positive");
    }
    if (spec.id == "f0") {
        return std::make_unique<RandomObjective>(spec.dimension, stream_seed);
    }
    if (spec.id == "flat") {
        return std::make_unique<FlatObjective>(spec.dimension);
    }
    for (const auto& e : kSuite) {
        if (spec.id == e.name) {
            return std::make_unique<ShiftedFunction>(e.kind, instance_shift(e.kind, spec.dimension, spec.instance));
        }
    }
    throw ConfigError("unknown function id '" + spec.id + "'");
}

} // namespace sdisde
