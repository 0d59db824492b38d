#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sdisde/core.hpp"
#include "sdisde/sdis.hpp"
#include "sdisde/variation.hpp"

namespace sdisde::theory {

/// Probability that a trial component comes from the mutant.
/// bin: Cr (1 - 1/n) + 1/n; exp: (1 - Cr^n) / (n (1 - Cr)), 1 at Cr = 1.
double mutation_probability(Crossover kind, double Cr, std::size_t n);

struct ViolationSeries {
    std::vector<double> p_v;   ///< p_v(1), ..., p_v(generations)
    double fixed_point = 0.0;  ///< iterated until |step| < 1e-12
    std::size_t iterations_to_converge = 0;
};

/// Violation probability under saturation with a flat objective:
/// p(g+1) = p/2 + (1-p) (p^2 F/4 + (1-p^2) F/3), p(1) = F/3.
/// Accepts F in [0, 1]; throws ConfigError otherwise.
ViolationSeries violation_recursion(double F, std::size_t generations);

/// Expected squared distance between a trial and its repaired version:
/// p_m p_v sum(delta_i^2).
double expected_correction_distance(double p_m, double p_v, std::span<const double> deltas);

struct Prediction {
    double value = 0.0;
    /// False when the inputs lie outside the range the closed form was
    /// derived for; the value is still returned.
    bool within_validity = true;
};

/// Variance of mirror-repaired components on [0,1] for a uniform population:
/// F^2/10 - F/4 + 1/4, derived for F in [0.5, 1].
Prediction mirror_corrected_variance(double F);

/// Toroidal repairs are mirror repairs reflected about the midpoint, so the
/// variance is the same.
inline Prediction toroidal_corrected_variance(double F) { return mirror_corrected_variance(F); }

inline constexpr double kSaturatedVarianceUnit = 0.25;
inline constexpr double kUniformVarianceUnit = 1.0 / 12.0;

/// Infeasible rand/1 mutants below 0 for a uniform population on [0,1]:
/// density (F+z)^2 / (2F^2) on [-F, 0), mean -F/4, variance 3F^2/80.
double infeasible_below_density(double z, double F);
double infeasible_below_mean(double F);
double infeasible_variance(double F);

struct SdisMoments {
    double mean = 0.0;
    double variance = 0.0;
};

/// Mean and variance of repaired values for kinds with closed forms
/// (UNI, SAT, MIR, TOR) on [a, b] given the population mean. nullopt for
/// COTN and HVB.
std::optional<SdisMoments> sdis_moments(SdisKind kind, double F, double a, double b, double pop_mean);

/// Repair contribution to the expected trial-population variance:
/// p_m p_v (1 - p_m p_v) (N-1)/N (mean_pop - mean_sdis)^2
///   + p_m p_v (1 - (1 - p_m p_v)/N) var_sdis.
double beta_term(double p_m, double p_v, std::size_t N, double sdis_mean, double sdis_var, double pop_mean);

// ---------------------------------------------------------------------------
// Randomised checks of the cosine propositions.

enum class Verdict { Holds, Violated, PreconditionUnmet };

enum class SkipReason {
    None,
    DimensionMismatch,
    TargetInfeasible,
    NoInfeasibleComponent,
    ExcursionTooLarge,   ///< an infeasible component lies beyond half a width
    DifferentQuadrant,
    NotExactlyOneInfeasible,
    NormConditionUnmet,
    RepairNotInterior,
    ZeroDirection,
};

std::string_view to_string(SkipReason reason) noexcept;

struct CheckResult {
    Verdict verdict = Verdict::PreconditionUnmet;
    SkipReason reason = SkipReason::None;
    double lhs = 0.0; ///< the cosine claimed to be larger
    double rhs = 0.0;
};

/// Mirror versus toroidal: when every infeasible component lies within half a
/// width of its bound and, for every i, (c_M(z_i) - mid_i)(x_i - mid_i) >= 0,
/// the claim is cos(d, d_M) >= cos(d, d_T).
CheckResult check_mirror_vs_toroidal(std::span<const double> target, std::span<const double> trial,
                                     const BoxDomain& domain);

/// The two lemmas behind the mirror/toroidal claim under the same
/// preconditions: d.d_M >= d.d_T and |d_M| <= |d_T|.
struct MirrorLemmas {
    Verdict verdict = Verdict::PreconditionUnmet;
    SkipReason reason = SkipReason::None;
    bool inner_product_ordered = false;
    bool norm_ordered = false;
    double inner_mirror = 0.0;
};
MirrorLemmas check_mirror_lemmas(std::span<const double> target, std::span<const double> trial,
                                 const BoxDomain& domain);

/// Saturation versus an interior repair value: exactly one infeasible
/// component k, |d|^2 >= 2 (z_k - x_k)(z_k - bound_k) (with signs for a lower
/// violation) and repaired value strictly inside (a_k, b_k); the claim is
/// cos(d, d_SAT) >= cos(d, d_C).
CheckResult check_saturation_vs_interior(std::span<const double> target, std::span<const double> trial,
                                         double repaired_value, const BoxDomain& domain);

/// Monte-Carlo estimate of P(X <= Y) for independent X, Y given by their
/// inverse CDFs.
template <typename QuantileX, typename QuantileY>
double probability_x_le_y(QuantileX&& quantile_x, QuantileY&& quantile_y, std::size_t n_draws, RngStream& rng) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n_draws; ++i) {
        const double x = quantile_x(rng.uniform());
        const double y = quantile_y(rng.uniform());
        if (x <= y) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(n_draws);
}

/// A target and binomial trial in [0,1]^n as DE/rand/1 would produce them
/// over a uniform population: n uniform in [1, max_dim], Cr uniform.
struct DirectionInstance {
    Vector target;
    Vector trial;
};
DirectionInstance sample_de_instance(RngStream& rng, double F, std::size_t max_dim = 8);

/// Tolerance used for the inequality verdicts.
inline constexpr double kCheckTolerance = 1e-12;

} // namespace sdisde::theory
