#pragma once

#include <stdexcept>
#include <string>

namespace sdisde {

/// A caller broke a documented precondition (dimension mismatch, repairing a
/// feasible component, ...).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Invalid user-facing configuration: population too small, F <= 0, unknown
/// function id and so on.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The quantity is mathematically undefined for the given input
/// (cosine of a zero vector, diversity of a single member).
class UndefinedInput : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

} // namespace sdisde
