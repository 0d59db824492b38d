#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>

#include "sdisde/core.hpp"

namespace sdisde {

/// Component-wise repair strategies for out-of-bounds trial components.
enum class SdisKind {
    COTN, ///< complete one-sided truncated normal
    HVB,  ///< halfway to the violated bound, measured from the target
    MIR,  ///< mirror across the violated bound
    SAT,  ///< saturate onto the violated bound
    TOR,  ///< toroidal wrap-around
    UNI,  ///< uniform resample inside the interval
};

inline constexpr std::array<SdisKind, 6> kAllSdis = {SdisKind::COTN, SdisKind::HVB, SdisKind::MIR,
                                                      SdisKind::SAT,  SdisKind::TOR, SdisKind::UNI};

std::string_view to_string(SdisKind kind) noexcept;
/// Case-insensitive. Throws ConfigError for unknown names.
SdisKind parse_sdis(std::string_view name);

/// COTN samples |N(0, sigma)| away from the violated bound, truncated to the
/// interval; sigma = cotn_sigma_fraction * (b - a).
struct SdisOptions {
    double cotn_sigma_fraction = 1.0 / 3.0;
};

/// Repair one infeasible component z (target component x, interval [a, b]).
/// Throws ContractViolation if z is already inside [a, b] or x is not.
double correct_component(SdisKind kind, double z, double x, double a, double b, RngStream& rng,
                         const SdisOptions& options = {});

struct CorrectionOutcome {
    Vector corrected;
    std::size_t n_corrected = 0;
    /// CS(trial - target, corrected - target); only for infeasible trials
    /// with both directions non-zero.
    std::optional<double> cosine;
};

CorrectionOutcome apply_sdis(SdisKind kind, std::span<const double> trial, std::span<const double> target,
                             const BoxDomain& domain, RngStream& rng, const SdisOptions& options = {});

/// v1.v2 / (|v1| |v2|), clamped to [-1, 1]. Throws UndefinedInput on a zero
/// vector.
double cosine_similarity(std::span<const double> v1, std::span<const double> v2);

} // namespace sdisde
