#include "sdisde/theory.hpp"

#include <cmath>
#include <string>

namespace sdisde::theory {

double mutation_probability(Crossover kind, double Cr, std::size_t n) {
    if (n == 0 || !(Cr >= 0.0 && Cr <= 1.0)) {
        throw ConfigError("mutation_probability: need n >= 1 and Cr in [0, 1]");
    }
    const double nd = static_cast<double>(n);
    if (kind == Crossover::Bin) {
        return Cr * (1.0 - 1.0 / nd) + 1.0 / nd;
    }
    if (Cr == 1.0) {
        return 1.0;
    }
    return (1.0 - std::pow(Cr, nd)) / (nd * (1.0 - Cr));
}

ViolationSeries violation_recursion(double F, std::size_t generations) {
    if (!(F >= 0.0 && F <= 1.0)) {
        throw ConfigError("violation_recursion: F must lie in [0, 1]");
    }
    auto step = [F](double p) {
        return p / 2.0 + (1.0 - p) * (p * p * F / 4.0 + (1.0 - p * p) * F / 3.0);
    };
    ViolationSeries out;
    double p = F / 3.0;
    for (std::size_t g = 0; g < generations; ++g) {
        out.p_v.push_back(p);
        p = step(p);
    }
    double q = F / 3.0;
    constexpr std::size_t kMaxIterations = 1'000'000;
    for (std::size_t it = 1; it <= kMaxIterations; ++it) {
        const double next = step(q);
        const bool converged = std::abs(next - q) < 1e-12;
        q = next;
        if (converged) {
            out.iterations_to_converge = it;
            break;
        }
    }
    out.fixed_point = q;
    return out;
}

double expected_correction_distance(double p_m, double p_v, std::span<const double> deltas) {
    if (!(p_m >= 0.0 && p_m <= 1.0 && p_v >= 0.0 && p_v <= 1.0)) {
        throw ConfigError("expected_correction_distance: probabilities must lie in [0, 1]");
    }
    double sum = 0.0;
    for (double d : deltas) sum += d * d;
    return p_m * p_v * sum;
}

Prediction mirror_corrected_variance(double F) {
    return {F * F / 10.0 - F / 4.0 + 0.25, F >= 0.5 && F <= 1.0};
}

double infeasible_below_density(double z, double F) {
    if (z < -F || z >= 0.0) return 0.0;
    return (F + z) * (F + z) / (2.0 * F * F);
}

double infeasible_below_mean(double F) { return -F / 4.0; }

double infeasible_variance(double F) { return 3.0 * F * F / 80.0; }

std::optional<SdisMoments> sdis_moments(SdisKind kind, double F, double a, double b, double pop_mean) {
    const double w = b - a;
    const double mid = 0.5 * (a + b);
    switch (kind) {
    case SdisKind::UNI: return SdisMoments{mid, w * w / 12.0};
    case SdisKind::SAT: return SdisMoments{mid, w * w / 4.0};
    case SdisKind::MIR: return SdisMoments{(a + b) - pop_mean, w * w * mirror_corrected_variance(F).value};
    case SdisKind::TOR: return SdisMoments{pop_mean, w * w * mirror_corrected_variance(F).value};
    case SdisKind::COTN:
    case SdisKind::HVB: return std::nullopt;
    }
    return std::nullopt;
}

double beta_term(double p_m, double p_v, std::size_t N, double sdis_mean, double sdis_var, double pop_mean) {
    if (N < 2) {
        throw ConfigError("beta_term: N must be at least 2");
    }
    const double q = p_m * p_v;
    const double nd = static_cast<double>(N);
    const double gap = pop_mean - sdis_mean;
    return q * (1.0 - q) * (nd - 1.0) / nd * gap * gap + q * (1.0 - (1.0 - q) / nd) * sdis_var;
}

std::string_view to_string(SkipReason reason) noexcept {
    switch (reason) {
    case SkipReason::None: return "none";
    case SkipReason::DimensionMismatch: return "dimension_mismatch";
    case SkipReason::TargetInfeasible: return "target_infeasible";
    case SkipReason::NoInfeasibleComponent: return "no_infeasible_component";
    case SkipReason::ExcursionTooLarge: return "excursion_too_large";
    case SkipReason::DifferentQuadrant: return "different_quadrant";
    case SkipReason::NotExactlyOneInfeasible: return "not_exactly_one_infeasible";
    case SkipReason::NormConditionUnmet: return "norm_condition_unmet";
    case SkipReason::RepairNotInterior: return "repair_not_interior";
    case SkipReason::ZeroDirection: return "zero_direction";
    }
    return "?";
}

namespace {

struct MirrorSetup {
    SkipReason reason = SkipReason::None;
    Vector d, d_mirror, d_torus;
};

MirrorSetup mirror_setup(std::span<const double> x, std::span<const double> z, const BoxDomain& domain) {
    MirrorSetup s;
    if (x.size() != domain.dim() || z.size() != domain.dim()) {
        s.reason = SkipReason::DimensionMismatch;
        return s;
    }
    if (!is_feasible(x, domain)) {
        s.reason = SkipReason::TargetInfeasible;
        return s;
    }
    const std::size_t n = x.size();
    s.d.resize(n);
    s.d_mirror.resize(n);
    s.d_torus.resize(n);
    bool any_infeasible = false;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = domain.lower(i), b = domain.upper(i), w = b - a, mid = 0.5 * (a + b);
        double c_mirror = z[i], c_torus = z[i];
        if (z[i] > b || z[i] < a) {
            any_infeasible = true;
            if (z[i] > b + 0.5 * w || z[i] < a - 0.5 * w) {
                s.reason = SkipReason::ExcursionTooLarge;
                return s;
            }
            c_mirror = z[i] > b ? 2.0 * b - z[i] : 2.0 * a - z[i];
            c_torus = z[i] > b ? a + (z[i] - b) : b - (a - z[i]);
        }
        if ((c_mirror - mid) * (x[i] - mid) < 0.0) {
            s.reason = SkipReason::DifferentQuadrant;
            return s;
        }
        s.d[i] = z[i] - x[i];
        s.d_mirror[i] = c_mirror - x[i];
        s.d_torus[i] = c_torus - x[i];
    }
    if (!any_infeasible) {
        s.reason = SkipReason::NoInfeasibleComponent;
    }
    return s;
}

double dot(std::span<const double> u, std::span<const double> v) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
}

bool is_zero(std::span<const double> v) {
    for (double e : v) {
        if (e != 0.0) return false;
    }
    return true;
}

} // namespace

CheckResult check_mirror_vs_toroidal(std::span<const double> target, std::span<const double> trial,
                                     const BoxDomain& domain) {
    const auto s = mirror_setup(target, trial, domain);
    if (s.reason != SkipReason::None) {
        return {Verdict::PreconditionUnmet, s.reason};
    }
    if (is_zero(s.d) || is_zero(s.d_mirror) || is_zero(s.d_torus)) {
        return {Verdict::PreconditionUnmet, SkipReason::ZeroDirection};
    }
    const double cm = cosine_similarity(s.d, s.d_mirror);
    const double ct = cosine_similarity(s.d, s.d_torus);
    return {cm >= ct - kCheckTolerance ? Verdict::Holds : Verdict::Violated, SkipReason::None, cm, ct};
}

MirrorLemmas check_mirror_lemmas(std::span<const double> target, std::span<const double> trial,
                                 const BoxDomain& domain) {
    const auto s = mirror_setup(target, trial, domain);
    MirrorLemmas out;
    if (s.reason != SkipReason::None) {
        out.reason = s.reason;
        return out;
    }
    const double scale = 1.0 + dot(s.d, s.d);
    out.inner_mirror = dot(s.d, s.d_mirror);
    out.inner_product_ordered = out.inner_mirror >= dot(s.d, s.d_torus) - kCheckTolerance * scale;
    out.norm_ordered = dot(s.d_mirror, s.d_mirror) <= dot(s.d_torus, s.d_torus) + kCheckTolerance * scale;
    out.verdict = out.inner_product_ordered && out.norm_ordered ? Verdict::Holds : Verdict::Violated;
    return out;
}

CheckResult check_saturation_vs_interior(std::span<const double> target, std::span<const double> trial,
                                         double repaired_value, const BoxDomain& domain) {
    if (target.size() != domain.dim() || trial.size() != domain.dim()) {
        return {Verdict::PreconditionUnmet, SkipReason::DimensionMismatch};
    }
    if (!is_feasible(target, domain)) {
        return {Verdict::PreconditionUnmet, SkipReason::TargetInfeasible};
    }
    const auto bad = infeasible_components(trial, domain);
    if (bad.size() != 1) {
        return {Verdict::PreconditionUnmet,
                bad.empty() ? SkipReason::NoInfeasibleComponent : SkipReason::NotExactlyOneInfeasible};
    }
    const std::size_t k = bad.front().index;
    const double a = domain.lower(k), b = domain.upper(k);
    if (!(repaired_value > a && repaired_value < b)) {
        return {Verdict::PreconditionUnmet, SkipReason::RepairNotInterior};
    }
    const double bound = bad.front().side == BoundSide::Upper ? b : a;

    Vector d(trial.size()), d_sat(trial.size()), d_other(trial.size());
    for (std::size_t i = 0; i < trial.size(); ++i) {
        d[i] = trial[i] - target[i];
        d_sat[i] = d[i];
        d_other[i] = d[i];
    }
    d_sat[k] = bound - target[k];
    d_other[k] = repaired_value - target[k];
    if (dot(d, d) < 2.0 * (trial[k] - target[k]) * (trial[k] - bound)) {
        return {Verdict::PreconditionUnmet, SkipReason::NormConditionUnmet};
    }
    if (is_zero(d_sat) || is_zero(d_other)) {
        return {Verdict::PreconditionUnmet, SkipReason::ZeroDirection};
    }
    const double cs = cosine_similarity(d, d_sat);
    const double co = cosine_similarity(d, d_other);
    return {cs >= co - kCheckTolerance ? Verdict::Holds : Verdict::Violated, SkipReason::None, cs, co};
}

DirectionInstance sample_de_instance(RngStream& rng, double F, std::size_t max_dim) {
    if (max_dim == 0) throw ConfigError("sample_de_instance: max_dim must be positive");
    const std::size_t n = 1 + rng.uniform_index(max_dim);
    const double Cr = rng.uniform();
    DirectionInstance in;
    in.target.resize(n);
    in.trial.resize(n);
    const std::size_t j = rng.uniform_index(n);
    for (std::size_t i = 0; i < n; ++i) {
        in.target[i] = rng.uniform();
        const double mutant = rng.uniform() + F * (rng.uniform() - rng.uniform());
        in.trial[i] = (i == j || rng.uniform() < Cr) ? mutant : in.target[i];
    }
    return in;
}

} // namespace sdisde::theory
