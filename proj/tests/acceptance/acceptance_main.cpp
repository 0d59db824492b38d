// Acceptance suite: one line per criterion, non-zero exit if any fails.
//
//   sdisde_acceptance            run everything
//   sdisde_acceptance 4 5        run selected criteria

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sdisde/analysis.hpp"
#include "sdisde/engines.hpp"
#include "sdisde/functions.hpp"
#include "sdisde/instruments.hpp"
#include "sdisde/logio.hpp"
#include "sdisde/sdis.hpp"
#include "sdisde/theory.hpp"

using namespace sdisde;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void check(bool ok, const std::string& what) {
        if (!ok) pass = false;
        notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    }
    void info(const std::string& what) { notes.push_back("     " + what); }
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

constexpr std::array<double, 5> kFGrid = {0.05, 0.285, 0.52, 0.755, 0.99};

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
    std::size_t count = 0;
};

MeanSe mean_se(const std::vector<double>& v) {
    MeanSe out;
    out.count = v.size();
    if (v.empty()) return out;
    out.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - out.mean) * (x - out.mean);
    const double var = v.size() > 1 ? ss / static_cast<double>(v.size() - 1) : 0.0;
    out.se = std::sqrt(var / static_cast<double>(v.size()));
    return out;
}

double slope(const std::vector<double>& y) {
    const double n = static_cast<double>(y.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double x = static_cast<double>(i);
        sx += x;
        sy += y[i];
        sxx += x * x;
        sxy += x * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

RunLog run_on(EngineConfig cfg, const FunctionSpec& fspec) {
    auto f = make_function(fspec, derive_stream_seed(cfg.seed, "objective"));
    return run(cfg, *f);
}

// ---------------------------------------------------------------------------

Outcome ac1_violation_bounds() {
    Outcome o;
    const std::size_t n = 30, N = 100, gens = 100, runs = 10;
    for (double F : kFGrid) {
        for (auto kind : kAllSdis) {
            double sum = 0.0;
            for (std::size_t r = 0; r < runs; ++r) {
                EngineConfig cfg;
                cfg.engine = EngineKind::DeRand1;
                cfg.params = {F, 0.52, Crossover::Bin};
                cfg.population_size = N;
                cfg.sdis = kind;
                cfg.max_evaluations = N + gens * N;
                cfg.seed = derive_run_seed(1001, r);
                sum += mutant_violation_frequency(run_on(cfg, {"f0", n, 1}), gens);
            }
            const double freq = sum / static_cast<double>(runs);
            const double lo = F / 3.0 - 0.02, hi = 2.0 * F / 3.0 + 0.02;
            const std::string label = fmt("F=%.3f %-4s p_v=%.4f in [%.4f, %.4f]", F,
                                          std::string(to_string(kind)).c_str(), freq, lo, hi);
            if (kind == SdisKind::COTN) {
                o.check(freq <= hi, label + " (COTN: upper bound only)");
            } else if (kind == SdisKind::HVB) {
                o.info(label + " (HVB: not part of the criterion)");
            } else {
                o.check(freq >= lo && freq <= hi, label);
            }
        }
    }
    return o;
}

Outcome ac2_recursion_vs_simulation() {
    Outcome o;
    const std::size_t N = 100000, gens = 200;
    for (double F : {0.25, 0.5, 0.75, 1.0}) {
        const double predicted = theory::violation_recursion(F, gens).fixed_point;
        EngineConfig cfg;
        cfg.engine = EngineKind::DeRand1;
        cfg.params = {F, 1.0, Crossover::Bin};
        cfg.population_size = N;
        cfg.sdis = SdisKind::SAT;
        cfg.max_evaluations = N + gens * N;
        cfg.seed = derive_run_seed(1002, static_cast<std::uint64_t>(F * 100));
        cfg.recorder.sample_diversity = false;
        FlatObjective flat(1);
        const RunLog log = run(cfg, flat);
        // Stationary estimate: second half of the run.
        std::size_t bad = 0, total = 0;
        for (const auto& g : log.generations) {
            if (g.generation > gens / 2) {
                bad += g.infeasible_components;
                total += g.mutant_components;
            }
        }
        const double simulated = static_cast<double>(bad) / static_cast<double>(total);
        o.check(std::abs(simulated - predicted) <= 0.01,
                fmt("F=%.2f fixed point %.4f, simulated %.4f, |diff| %.4f <= 0.01", F, predicted, simulated,
                    std::abs(simulated - predicted)));
    }
    return o;
}

Outcome ac3_mirror_variance() {
    Outcome o;
    const std::size_t draws = 1'000'000;
    for (double F : {0.5, 0.75, 1.0}) {
        RngStream rng(derive_run_seed(1003, static_cast<std::uint64_t>(F * 100)));
        std::vector<double> mir, tor;
        for (std::size_t i = 0; i < draws; ++i) {
            const double z = rng.uniform() + F * (rng.uniform() - rng.uniform());
            if (z >= 0.0 && z <= 1.0) continue;
            const double x = rng.uniform();
            mir.push_back(correct_component(SdisKind::MIR, z, x, 0.0, 1.0, rng));
            tor.push_back(correct_component(SdisKind::TOR, z, x, 0.0, 1.0, rng));
        }
        auto variance = [](const std::vector<double>& v) {
            const double m = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
            double ss = 0.0;
            for (double x : v) ss += (x - m) * (x - m);
            return ss / static_cast<double>(v.size() - 1);
        };
        const double predicted = theory::mirror_corrected_variance(F).value;
        const double vm = variance(mir), vt = variance(tor);
        o.check(std::abs(vm - predicted) <= 0.005,
                fmt("F=%.2f mirror variance %.5f vs %.5f (%zu repaired)", F, vm, predicted, mir.size()));
        o.check(std::abs(vt - vm) <= 0.005, fmt("F=%.2f toroidal variance %.5f vs mirror %.5f", F, vt, vm));
    }
    return o;
}

struct F0Batch {
    std::map<SdisKind, std::vector<double>> cosines;
    std::map<SdisKind, std::vector<double>> diversity; // mean over runs per generation
};

const F0Batch& f0_batch() {
    static const F0Batch batch = [] {
        F0Batch b;
        const std::size_t n = 30, N = 100, runs = 10;
        for (auto kind : kAllSdis) {
            std::vector<std::vector<double>> traces;
            for (std::size_t r = 0; r < runs; ++r) {
                EngineConfig cfg;
                cfg.engine = EngineKind::DeRand1;
                cfg.params = {0.52, 0.52, Crossover::Bin};
                cfg.population_size = N;
                cfg.sdis = kind;
                cfg.max_evaluations = 1000 * n;
                cfg.seed = derive_run_seed(1004, r);
                const RunLog log = run_on(cfg, {"f0", n, 1});
                auto cs = log.cosines();
                b.cosines[kind].insert(b.cosines[kind].end(), cs.begin(), cs.end());
                std::vector<double> trace;
                for (const auto& g : log.generations) trace.push_back(g.diversity);
                traces.push_back(std::move(trace));
            }
            std::size_t len = traces.front().size();
            for (const auto& t : traces) len = std::min(len, t.size());
            std::vector<double> mean(len, 0.0);
            for (const auto& t : traces) {
                for (std::size_t g = 0; g < len; ++g) mean[g] += t[g] / static_cast<double>(runs);
            }
            b.diversity[kind] = std::move(mean);
        }
        return b;
    }();
    return batch;
}

Outcome ac4_disruptiveness_order() {
    Outcome o;
    const auto& b = f0_batch();
    std::map<SdisKind, MeanSe> stats;
    for (auto kind : kAllSdis) {
        stats[kind] = mean_se(b.cosines.at(kind));
        auto sorted = b.cosines.at(kind);
        std::sort(sorted.begin(), sorted.end());
        o.info(fmt("%-4s mean cosine %.5f (se %.6f, median %.5f, %zu corrections)",
                   std::string(to_string(kind)).c_str(), stats[kind].mean, stats[kind].se,
                   sorted[sorted.size() / 2], stats[kind].count));
    }
    auto separated = [&](SdisKind hi, SdisKind lo) {
        const double gap = stats[hi].mean - stats[lo].mean;
        const double se = std::sqrt(stats[hi].se * stats[hi].se + stats[lo].se * stats[lo].se);
        o.check(gap > 2.0 * se, fmt("%s > %s by %.5f, 2 pooled se = %.5f", std::string(to_string(hi)).c_str(),
                                    std::string(to_string(lo)).c_str(), gap, 2.0 * se));
    };
    separated(SdisKind::SAT, SdisKind::HVB);
    separated(SdisKind::HVB, SdisKind::MIR);
    separated(SdisKind::HVB, SdisKind::COTN);
    separated(SdisKind::MIR, SdisKind::UNI);
    separated(SdisKind::COTN, SdisKind::UNI);
    separated(SdisKind::UNI, SdisKind::TOR);
    o.info(fmt("MIR ~ COTN: |diff| = %.5f (no ordering asserted)",
               std::abs(stats[SdisKind::MIR].mean - stats[SdisKind::COTN].mean)));
    const auto& sat = b.cosines.at(SdisKind::SAT);
    const auto non_positive = std::count_if(sat.begin(), sat.end(), [](double c) { return !(c > 0.0); });
    o.check(non_positive == 0, fmt("every SAT cosine > 0 (%zu of %zu non-positive)",
                                   static_cast<std::size_t>(non_positive), sat.size()));
    return o;
}

Outcome ac5_diversity_regimes() {
    Outcome o;
    const auto& b = f0_batch();
    const double sat_end = b.diversity.at(SdisKind::SAT).back();
    for (auto kind : kAllSdis) {
        o.info(fmt("%-4s diversity gen0 %.4f gen20 %.4f end %.4f", std::string(to_string(kind)).c_str(),
                   b.diversity.at(kind).front(), b.diversity.at(kind)[20], b.diversity.at(kind).back()));
        if (kind == SdisKind::SAT) continue;
        o.check(sat_end > b.diversity.at(kind).back(),
                fmt("SAT end diversity %.4f > %s %.4f", sat_end, std::string(to_string(kind)).c_str(),
                    b.diversity.at(kind).back()));
    }
    const auto& mir = b.diversity.at(SdisKind::MIR);
    const auto& tor = b.diversity.at(SdisKind::TOR);
    double worst = 0.0;
    for (std::size_t g = 21; g < std::min(mir.size(), tor.size()); ++g) {
        worst = std::max(worst, std::abs(mir[g] - tor[g]) / tor[g]);
    }
    o.check(worst < 0.05, fmt("MIR vs TOR max relative gap after gen 20: %.4f < 0.05", worst));
    for (auto kind : {SdisKind::COTN, SdisKind::UNI, SdisKind::HVB}) {
        const double s = slope(b.diversity.at(kind));
        o.check(s <= 0.0, fmt("%s diversity trend slope %.3e <= 0", std::string(to_string(kind)).c_str(), s));
    }
    return o;
}

Outcome ac6_propositions() {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    const std::size_t wanted = 100'000;
    const auto unit = [](std::size_t n) { return BoxDomain::hypercube(n, 0.0, 1.0); };
    {
        RngStream rng(1006);
        std::size_t checked = 0, violated = 0, lemma_violations = 0, violated_negative_inner = 0;
        while (checked < wanted) {
            const double F = rng.uniform(0.01, 0.5);
            const auto in = theory::sample_de_instance(rng, F);
            const auto d = unit(in.target.size());
            const auto res = theory::check_mirror_vs_toroidal(in.target, in.trial, d);
            if (res.verdict == theory::Verdict::PreconditionUnmet) continue;
            ++checked;
            const auto lemmas = theory::check_mirror_lemmas(in.target, in.trial, d);
            if (lemmas.verdict != theory::Verdict::Holds) ++lemma_violations;
            if (res.verdict == theory::Verdict::Violated) {
                ++violated;
                if (lemmas.inner_mirror < 0.0) ++violated_negative_inner;
            }
        }
        o.check(lemma_violations == 0,
                fmt("mirror/toroidal lemmas (d.d_M >= d.d_T, |d_M| <= |d_T|): %zu violations in %zu",
                    lemma_violations, checked));
        o.check(violated == 0, fmt("cos(d,d_M) >= cos(d,d_T): %zu violations in %zu (%zu with d.d_M < 0)",
                                   violated, checked, violated_negative_inner));
    }
    {
        RngStream rng(2006);
        RngStream repair_rng(3006);
        std::size_t checked = 0, violated = 0;
        while (checked < wanted) {
            const double F = rng.uniform(0.05, 1.0);
            const auto in = theory::sample_de_instance(rng, F);
            const auto d = unit(in.target.size());
            const auto bad = infeasible_components(in.trial, d);
            if (bad.size() != 1) continue;
            const std::size_t k = bad.front().index;
            std::vector<double> repairs;
            for (auto kind : {SdisKind::MIR, SdisKind::TOR, SdisKind::UNI, SdisKind::COTN, SdisKind::HVB}) {
                repairs.push_back(correct_component(kind, in.trial[k], in.target[k], 0.0, 1.0, repair_rng));
            }
            repairs.push_back(repair_rng.uniform());
            bool any = false;
            for (double c : repairs) {
                const auto res = theory::check_saturation_vs_interior(in.target, in.trial, c, d);
                if (res.verdict == theory::Verdict::PreconditionUnmet) continue;
                any = true;
                if (res.verdict == theory::Verdict::Violated) ++violated;
            }
            if (any) ++checked;
        }
        o.check(violated == 0, fmt("cos(d,d_SAT) >= cos(d,d_C), one infeasible component: %zu violations in %zu",
                                   violated, checked));
    }
    {
        RngStream rng(4006);
        // F_X(x) = x^2 (X = sqrt(U)) is dominated by F_Y(x) = x (Y = U).
        const double p = theory::probability_x_le_y([](double u) { return u; },
                                                    [](double u) { return std::sqrt(u); }, wanted, rng);
        o.check(p >= 0.5, fmt("P(Y <= X) = %.4f >= 0.5 (analytic 2/3)", p));
        // Two cosine-like laws on [-1, 1]: X = 2U^2 - 1 has the larger CDF.
        const double q = theory::probability_x_le_y([](double u) { return 2.0 * u * u - 1.0; },
                                                    [](double u) { return 2.0 * u - 1.0; }, wanted, rng);
        o.check(q >= 0.5, fmt("P(X <= Y) = %.4f >= 0.5 for X = 2U^2 - 1, Y = 2U - 1", q));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.check(secs <= 60.0, fmt("runtime %.1f s <= 60 s", secs));
    return o;
}

std::map<SdisKind, double> lshade_ert(const char* function, std::size_t n, std::size_t budget_factor,
                                      std::size_t runs, double precision, std::map<SdisKind, double>* pois,
                                      std::uint64_t seed_base) {
    std::map<SdisKind, double> out;
    for (auto kind : kAllSdis) {
        std::vector<std::optional<std::size_t>> hits;
        double pois_sum = 0.0;
        for (std::size_t r = 0; r < runs; ++r) {
            EngineConfig cfg;
            cfg.engine = EngineKind::LShade;
            cfg.population_size = 18 * n;
            cfg.sdis = kind;
            cfg.max_evaluations = budget_factor * n;
            cfg.seed = derive_run_seed(seed_base, r);
            cfg.recorder.sample_diversity = false;
            const FunctionSpec fs{function, n, 1 + r % 5};
            const RunLog log = run_on(cfg, fs);
            hits.push_back(hitting_time(log.trajectory, 0.0, precision));
            pois_sum += log.summary.final_pois;
        }
        out[kind] = ert(hits, budget_factor * n);
        if (pois) (*pois)[kind] = pois_sum / static_cast<double>(runs);
    }
    return out;
}

Outcome ac7_linear_slope() {
    Outcome o;
    const auto erts = lshade_ert("linear_slope", 5, 10000, 10, 1e-8, nullptr, 1007);
    // HVB is an extension for the SHADE family; the reference ranking covers
    // the other five strategies.
    std::vector<std::pair<double, SdisKind>> ranked;
    for (auto [kind, v] : erts) {
        const bool extension = kind == SdisKind::HVB;
        if (!extension) ranked.emplace_back(v, kind);
        o.info(fmt("%-4s ERT(1e-8) = %.1f%s", std::string(to_string(kind)).c_str(), v,
                   extension ? " (not ranked)" : ""));
    }
    std::sort(ranked.begin(), ranked.end());
    o.check(ranked[0].second == SdisKind::SAT && ranked[0].first < ranked[1].first,
            fmt("SAT has the strictly lowest ERT (best: %s)", std::string(to_string(ranked[0].second)).c_str()));
    o.check(ranked[1].second == SdisKind::MIR && ranked[1].first < ranked[2].first,
            fmt("MIR ranks second (second: %s)", std::string(to_string(ranked[1].second)).c_str()));
    return o;
}

Outcome ac8_pois_dimension() {
    Outcome o;
    std::map<SdisKind, double> p5, p30;
    lshade_ert("katsuura", 5, 2000, 5, 1e-8, &p5, 1008);
    lshade_ert("katsuura", 30, 2000, 5, 1e-8, &p30, 2008);
    double best30 = 0.0;
    for (auto kind : kAllSdis) {
        o.check(p30[kind] > p5[kind], fmt("%-4s final POIS n=30 %.4f > n=5 %.4f",
                                          std::string(to_string(kind)).c_str(), p30[kind], p5[kind]));
        best30 = std::max(best30, p30[kind]);
    }
    o.check(best30 > 0.5, fmt("max final POIS at n=30 = %.4f > 0.5", best30));
    return o;
}

class InvariantProbe final : public Observer {
public:
    bool feasible = true;
    bool evaluated = true;

    void on_generation(const GenerationEvent& ev) override {
        for (const auto& m : ev.population.members) {
            if (!is_feasible(m.position, ev.domain)) feasible = false;
            if (!m.fitness) evaluated = false;
        }
    }
};

class TrialFeasibility final : public Observer {
public:
    explicit TrialFeasibility(const BoxDomain& d) : domain_(d) {}
    bool ok = true;
    void on_trial(const TrialEvent& ev) override {
        if (!is_feasible(ev.corrected, domain_)) ok = false;
    }

private:
    const BoxDomain& domain_;
};

std::string serialise(const RunLog& log) {
    std::ostringstream os;
    write_corrections_csv(os, log);
    write_generations_csv(os, log);
    write_trajectory_csv(os, log);
    return os.str();
}

Outcome ac9_engine_invariants() {
    Outcome o;
    RngStream rng(1009);
    const std::vector<std::string> ids = {"f0", "flat", "sphere", "ellipsoidal", "linear_slope", "rosenbrock",
                                          "rastrigin", "katsuura"};
    std::size_t monotone_fail = 0, feasibility_fail = 0, budget_fail = 0, replay_fail = 0;
    for (std::size_t c = 0; c < 100; ++c) {
        EngineConfig cfg;
        cfg.engine = static_cast<EngineKind>(rng.uniform_index(3));
        cfg.params = {rng.uniform(0.05, 1.0), rng.uniform(), rng.uniform() < 0.5 ? Crossover::Bin : Crossover::Exp};
        cfg.population_size = 4 + rng.uniform_index(27);
        cfg.sdis = kAllSdis[rng.uniform_index(kAllSdis.size())];
        cfg.max_evaluations = cfg.population_size * (1 + rng.uniform_index(40)) + rng.uniform_index(7);
        cfg.seed = rng.next_u64();
        cfg.recorder.record_feasible_trials = rng.uniform() < 0.5;
        FunctionSpec fs{ids[rng.uniform_index(ids.size())], 2 + rng.uniform_index(9), 1 + rng.uniform_index(5)};

        auto f1 = make_function(fs, derive_stream_seed(cfg.seed, "objective"));
        InvariantProbe probe;
        TrialFeasibility trials_ok(f1->domain());
        std::vector<Observer*> obs{&probe, &trials_ok};
        const RunLog a = run(cfg, *f1, obs);
        const RunLog b = run_on(cfg, fs);

        bool monotone = true;
        for (std::size_t i = 1; i < a.trajectory.size(); ++i) {
            if (a.trajectory[i].best_fitness > a.trajectory[i - 1].best_fitness) monotone = false;
        }
        for (std::size_t i = 1; i < a.generations.size(); ++i) {
            if (a.generations[i].best_fitness > a.generations[i - 1].best_fitness) monotone = false;
        }
        if (!monotone) ++monotone_fail;
        if (!probe.feasible || !probe.evaluated || !trials_ok.ok) ++feasibility_fail;
        if (a.summary.evaluations != cfg.max_evaluations ||
            cfg.population_size + a.summary.total_trials != cfg.max_evaluations) {
            ++budget_fail;
        }
        if (serialise(a) != serialise(b)) ++replay_fail;
    }
    o.check(monotone_fail == 0, fmt("best-so-far monotone: %zu failures / 100", monotone_fail));
    o.check(feasibility_fail == 0, fmt("feasibility closure: %zu failures / 100", feasibility_fail));
    o.check(budget_fail == 0, fmt("budget exactness: %zu failures / 100", budget_fail));
    o.check(replay_fail == 0, fmt("deterministic replay of CSV logs: %zu failures / 100", replay_fail));
    return o;
}

Outcome ac10_ert_cases() {
    Outcome o;
    using T = std::optional<std::size_t>;
    {
        std::vector<T> h(5, T{100});
        o.check(ert(h, 1000) == 100.0, fmt("5 runs hitting at 100 -> %.1f == 100", ert(h, 1000)));
    }
    {
        std::vector<T> h{T{100}, std::nullopt};
        o.check(ert(h, 1000) == 1100.0, fmt("runs {100, inf}, B=1000 -> %.1f == 1100", ert(h, 1000)));
    }
    {
        std::vector<T> h{std::nullopt, std::nullopt, std::nullopt};
        o.check(std::isinf(ert(h, 1000)) && ert(h, 1000) == kErtUnreached, "no hits -> infinite sentinel");
    }
    {
        std::vector<T> h{T{200}, T{400}, std::nullopt, T{600}};
        // (200 + 400 + 1000 + 600) / 3
        o.check(std::abs(ert(h, 1000) - 2200.0 / 3.0) < 1e-12, fmt("mixed -> %.6f == 733.333333", ert(h, 1000)));
    }
    {
        std::vector<T> h{T{1500}};
        o.check(ert(h, 1000) == 1000.0, "hitting time capped at the budget");
    }
    return o;
}

struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> fn;
};

} // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all = {
        {1, "violation-probability bounds on f0", ac1_violation_bounds},
        {2, "violation recursion fixed point vs SAT simulation", ac2_recursion_vs_simulation},
        {3, "mirror/toroidal corrected variance", ac3_mirror_variance},
        {4, "disruptiveness ordering on f0", ac4_disruptiveness_order},
        {5, "diversity regimes on f0", ac5_diversity_regimes},
        {6, "cosine and ECDF propositions", ac6_propositions},
        {7, "linear slope ERT ranking (L-SHADE)", ac7_linear_slope},
        {8, "POIS grows with dimension (L-SHADE, katsuura)", ac8_pois_dimension},
        {9, "engine invariants over 100 random configs", ac9_engine_invariants},
        {10, "ERT hand-computed cases", ac10_ert_cases},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg.rfind("AC", 0) == 0) arg = arg.substr(2);
        const int id = std::atoi(arg.c_str());
        if (id < 1 || id > static_cast<int>(all.size()) || arg != std::to_string(id)) {
            std::fprintf(stderr, "unknown criterion '%s' (expected 1-%zu or AC1-AC%zu)\n", argv[i], all.size(),
                         all.size());
            return 2;
        }
        selected.insert(id);
    }

    int failures = 0;
    for (const auto& c : all) {
        if (!selected.empty() && !selected.count(c.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.fn();
        } catch (const std::exception& e) {
            o.check(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        for (const auto& note : o.notes) std::printf("        %s\n", note.c_str());
        std::printf("[%s] AC%-2d %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.title, secs);
        std::fflush(stdout);
        if (!o.pass) ++failures;
    }
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
