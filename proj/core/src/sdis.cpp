#include "sdisde/sdis.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace sdisde {

namespace {

constexpr int kMaxReflections = 10;

double mirror(double z, double a, double b) {
    for (int i = 0; i < kMaxReflections && (z < a || z > b); ++i) {
        z = z > b ? 2.0 * b - z : 2.0 * a - z;
    }
    return std::clamp(z, a, b);
}

double wrap(double z, double a, double b) {
    for (int i = 0; i < kMaxReflections && (z < a || z > b); ++i) {
        z = z > b ? a + (z - b) : b - (a - z);
    }
    if (z < a || z > b) {
        // Only reachable for excursions beyond ten domain widths.
        const double w = b - a;
        z = a + std::fmod(std::fmod(z - a, w) + w, w);
    }
    return std::clamp(z, a, b);
}

double truncated_normal_from_bound(double bound, bool upper, double a, double b, double sigma, RngStream& rng) {
    const double w = b - a;
    double offset = std::abs(rng.normal()) * sigma;
    while (offset > w) {
        offset = std::abs(rng.normal()) * sigma;
    }
    return upper ? std::max(a, bound - offset) : std::min(b, bound + offset);
}

} // namespace

std::string_view to_string(SdisKind kind) noexcept {
    switch (kind) {
    case SdisKind::COTN: return "COTN";
    case SdisKind::HVB: return "HVB";
    case SdisKind::MIR: return "MIR";
    case SdisKind::SAT: return "SAT";
    case SdisKind::TOR: return "TOR";
    case SdisKind::UNI: return "UNI";
    }
    return "?";
}

SdisKind parse_sdis(std::string_view name) {
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
    for (auto kind : kAllSdis) {
        if (upper == to_string(kind)) {
            return kind;
        }
    }
    throw ConfigError("unknown SDIS '" + std::string(name) + "'");
}

double correct_component(SdisKind kind, double z, double x, double a, double b, RngStream& rng,
                         const SdisOptions& options) {
    if (z >= a && z <= b) {
        throw ContractViolation("correct_component called on a feasible component");
    }
    if (!(x >= a && x <= b)) {
        throw ContractViolation("correct_component: target component is infeasible");
    }
    const bool upper = z > b;
    const double bound = upper ? b : a;
    switch (kind) {
    case SdisKind::SAT: return bound;
    case SdisKind::MIR: return mirror(z, a, b);
    case SdisKind::TOR: return wrap(z, a, b);
    case SdisKind::UNI: return rng.uniform(a, b);
    case SdisKind::HVB: return 0.5 * (x + bound);
    case SdisKind::COTN:
        if (!(options.cotn_sigma_fraction > 0.0) || !std::isfinite(options.cotn_sigma_fraction)) {
            throw ConfigError("COTN sigma fraction must be positive and finite");
        }
        return truncated_normal_from_bound(bound, upper, a, b, options.cotn_sigma_fraction * (b - a), rng);
    }
    throw ContractViolation("correct_component: unknown kind");
}

CorrectionOutcome apply_sdis(SdisKind kind, std::span<const double> trial, std::span<const double> target,
                             const BoxDomain& domain, RngStream& rng, const SdisOptions& options) {
    require_dimension(trial, domain);
    require_dimension(target, domain);

    CorrectionOutcome out;
    out.corrected.assign(trial.begin(), trial.end());
    for (std::size_t i = 0; i < trial.size(); ++i) {
        const double a = domain.lower(i);
        const double b = domain.upper(i);
        if (trial[i] < a || trial[i] > b) {
            out.corrected[i] = correct_component(kind, trial[i], target[i], a, b, rng, options);
            ++out.n_corrected;
        }
    }
    if (out.n_corrected == 0) {
        return out;
    }

    double dot = 0.0, norm_d = 0.0, norm_dc = 0.0;
    for (std::size_t i = 0; i < trial.size(); ++i) {
        const double d = trial[i] - target[i];
        const double dc = out.corrected[i] - target[i];
        dot += d * dc;
        norm_d += d * d;
        norm_dc += dc * dc;
    }
    if (norm_d > 0.0 && norm_dc > 0.0) {
        out.cosine = std::clamp(dot / (std::sqrt(norm_d) * std::sqrt(norm_dc)), -1.0, 1.0);
    }
    return out;
}

double cosine_similarity(std::span<const double> v1, std::span<const double> v2) {
    if (v1.size() != v2.size()) {
        throw ContractViolation("cosine_similarity: length mismatch");
    }
    double dot = 0.0, n1 = 0.0, n2 = 0.0;
    for (std::size_t i = 0; i < v1.size(); ++i) {
        dot += v1[i] * v2[i];
        n1 += v1[i] * v1[i];
        n2 += v2[i] * v2[i];
    }
    if (n1 == 0.0 || n2 == 0.0) {
        throw UndefinedInput("cosine_similarity: zero vector");
    }
    return std::clamp(dot / (std::sqrt(n1) * std::sqrt(n2)), -1.0, 1.0);
}

} // namespace sdisde
