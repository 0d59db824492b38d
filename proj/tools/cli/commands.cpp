#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "sdisde/analysis.hpp"
#include "sdisde/errors.hpp"
#include "sdisde/instruments.hpp"
#include "sdisde/logio.hpp"
#include "sdisde/theory.hpp"

namespace sdisde::cli {

namespace fs = std::filesystem;

GroupBy parse_group_by(const std::string& text) {
    if (text == "sdis") return GroupBy::Sdis;
    if (text == "engine") return GroupBy::Engine;
    if (text == "function") return GroupBy::Function;
    if (text == "config") return GroupBy::Config;
    throw ConfigError("unknown grouping '" + text + "' (expected sdis, engine, function or config)");
}

std::string group_label(const ManifestEntry& e, GroupBy by) {
    switch (by) {
    case GroupBy::Sdis: return e.sdis;
    case GroupBy::Engine: return e.engine + "/" + e.sdis;
    case GroupBy::Function: return e.function + "-" + std::to_string(e.dimension) + "/" + e.sdis;
    case GroupBy::Config: return e.config_hash;
    }
    return {};
}

std::vector<ManifestEntry> completed_runs(const fs::path& dir) {
    auto all = read_manifest(dir);
    std::vector<ManifestEntry> ok;
    std::size_t skipped = 0;
    for (auto& e : all) {
        if (e.status == "ok") {
            ok.push_back(std::move(e));
        } else {
            ++skipped;
        }
    }
    if (skipped > 0) std::cerr << "note: skipping " << skipped << " failed run(s)\n";
    return ok;
}

namespace {

// Groups in first-seen order so output follows the manifest.
template <class T>
class Grouped {
public:
    T& at(const std::string& key) {
        auto it = index_.find(key);
        if (it == index_.end()) {
            index_.emplace(key, items_.size());
            items_.emplace_back(key, T{});
            return items_.back().second;
        }
        return items_[it->second].second;
    }
    auto begin() const { return items_.begin(); }
    auto end() const { return items_.end(); }

private:
    std::map<std::string, std::size_t> index_;
    std::vector<std::pair<std::string, T>> items_;
};

std::string short_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

void write_ecdf_cs(std::ostream& os, const fs::path& dir, GroupBy by, std::size_t grid_points) {
    Grouped<std::vector<double>> groups;
    for (const auto& e : completed_runs(dir)) {
        const RunLog log = read_run_log(e.log_dir);
        auto cs = log.cosines();
        auto& bucket = groups.at(group_label(e, by));
        bucket.insert(bucket.end(), cs.begin(), cs.end());
    }
    const auto grid = linear_grid(-1.0, 1.0, grid_points);
    os << "group,x,fraction,count\n";
    for (const auto& [key, values] : groups) {
        if (values.empty()) {
            std::cerr << "note: group " << key << " has no corrections\n";
            continue;
        }
        for (const auto& [x, frac] : cs_ecdf(values, grid)) {
            os << csv_field(key) << ',' << format_real(x) << ',' << format_real(frac) << ',' << values.size()
               << '\n';
        }
    }
}

void write_ecdf_target(std::ostream& os, const fs::path& dir, GroupBy by, const std::vector<double>& targets) {
    Grouped<std::vector<RunTrajectory>> groups;
    std::size_t no_optimum = 0;
    for (const auto& e : completed_runs(dir)) {
        if (!e.optimum_value) {
            ++no_optimum;
            continue;
        }
        RunLog log = read_run_log(e.log_dir);
        groups.at(group_label(e, by)).push_back({std::move(log.trajectory), *e.optimum_value});
    }
    if (no_optimum > 0) std::cerr << "note: " << no_optimum << " run(s) without a known optimum skipped\n";
    os << "group,evaluations,fraction\n";
    for (const auto& [key, runs] : groups) {
        for (const auto& [evals, frac] : fixed_target_ecdf(runs, targets)) {
            os << csv_field(key) << ',' << evals << ',' << format_real(frac) << '\n';
        }
    }
}

void write_ert(std::ostream& os, const fs::path& dir, GroupBy by, double precision) {
    struct Cell {
        std::string function;
        std::size_t dimension = 0;
        std::string group;
        std::size_t budget = 0;
        std::vector<std::optional<std::size_t>> hits;
    };
    Grouped<Cell> cells;
    for (const auto& e : completed_runs(dir)) {
        if (!e.optimum_value) continue;
        const std::string problem = e.function + "-" + std::to_string(e.dimension);
        const std::string group = group_label(e, by);
        Cell& c = cells.at(problem + "|" + group);
        c.function = e.function;
        c.dimension = e.dimension;
        c.group = group;
        c.budget = std::max(c.budget, e.max_evaluations);
        const RunLog log = read_run_log(e.log_dir);
        c.hits.push_back(hitting_time(log.trajectory, *e.optimum_value, precision));
    }

    // Rank groups within each problem; ties share the lower rank.
    std::map<std::string, std::vector<double>> per_problem;
    std::vector<double> values;
    for (const auto& [key, c] : cells) {
        values.push_back(ert(c.hits, c.budget));
        per_problem[c.function + "-" + std::to_string(c.dimension)].push_back(values.back());
    }
    os << "function,dimension,group,runs,successes,ert,rank\n";
    std::size_t i = 0;
    for (const auto& [key, c] : cells) {
        const double v = values[i++];
        const auto& peers = per_problem[c.function + "-" + std::to_string(c.dimension)];
        const auto rank = 1 + std::count_if(peers.begin(), peers.end(), [v](double p) { return p < v; });
        const auto successes = std::count_if(c.hits.begin(), c.hits.end(), [](const auto& h) { return h.has_value(); });
        os << csv_field(c.function) << ',' << c.dimension << ',' << csv_field(c.group) << ',' << c.hits.size() << ','
           << successes << ',' << format_real(v) << ',' << rank << '\n';
    }
}

void write_pois(std::ostream& os, const fs::path& dir, std::size_t window, bool trace) {
    if (window == 0) throw ConfigError("pois: window must be positive");
    const auto runs = completed_runs(dir);
    if (trace) {
        os << "run_id,sdis,function,dimension,generation,windowed_pois,cumulative_pois\n";
    } else {
        os << "run_id,sdis,function,dimension,final_pois,last_window_pois\n";
    }
    for (const auto& e : runs) {
        const RunLog log = read_run_log(e.log_dir);
        const auto win = windowed_pois(log, window);
        const std::string prefix =
            csv_field(e.run_id) + ',' + e.sdis + ',' + csv_field(e.function) + ',' + std::to_string(e.dimension);
        if (trace) {
            const auto cum = cumulative_pois(log);
            for (std::size_t g = 0; g < win.size(); ++g) {
                os << prefix << ',' << win[g].first << ',' << format_real(win[g].second) << ','
                   << format_real(cum[g].second) << '\n';
            }
        } else {
            const std::string last = win.empty() ? std::string() : format_real(win.back().second);
            os << prefix << ',' << format_real(log.summary.final_pois) << ',' << last << '\n';
        }
    }
}

void write_diversity(std::ostream& os, const fs::path& dir, GroupBy by) {
    struct Acc {
        std::vector<double> sum;
        std::vector<double> sum_sq;
        std::vector<std::size_t> count;
    };
    Grouped<Acc> groups;
    for (const auto& e : completed_runs(dir)) {
        const RunLog log = read_run_log(e.log_dir);
        Acc& a = groups.at(group_label(e, by));
        for (const auto& g : log.generations) {
            if (g.generation >= a.sum.size()) {
                a.sum.resize(g.generation + 1, 0.0);
                a.sum_sq.resize(g.generation + 1, 0.0);
                a.count.resize(g.generation + 1, 0);
            }
            a.sum[g.generation] += g.diversity;
            a.sum_sq[g.generation] += g.diversity * g.diversity;
            ++a.count[g.generation];
        }
    }
    os << "group,generation,runs,mean_diversity,sd_diversity\n";
    for (const auto& [key, a] : groups) {
        for (std::size_t g = 0; g < a.sum.size(); ++g) {
            if (a.count[g] == 0) continue;
            const double n = static_cast<double>(a.count[g]);
            const double mean = a.sum[g] / n;
            const double var = a.count[g] > 1 ? std::max(0.0, (a.sum_sq[g] - n * mean * mean) / (n - 1.0)) : 0.0;
            os << csv_field(key) << ',' << g << ',' << a.count[g] << ',' << format_real(mean) << ','
               << format_real(std::sqrt(var)) << '\n';
        }
    }
}

std::size_t write_theory_check(std::ostream& os, std::size_t samples, std::uint64_t seed) {
    if (samples == 0) throw ConfigError("theory-check: samples must be positive");
    os << "check,parameter,value,reference,verdict\n";
    std::size_t violated = 0;
    auto row = [&os](const std::string& check, const std::string& param, double value, double reference,
                     const std::string& verdict) {
        os << check << ',' << param << ',' << format_real(value) << ',' << format_real(reference) << ',' << verdict
           << '\n';
    };

    const std::vector<double> f_grid = {0.05, 0.285, 0.52, 0.755, 0.99};
    for (double F : f_grid) {
        const auto series = theory::violation_recursion(F, 1000);
        const double fp = series.fixed_point;
        const bool inside = fp >= F / 3.0 - 1e-12 && fp <= 2.0 * F / 3.0 + 1e-12;
        row("violation_fixed_point", "F=" + short_real(F), fp, F / 3.0, inside ? "holds" : "violated");
        if (!inside) ++violated;
    }

    RngStream rng(seed);
    for (double F : {0.5, 0.75, 1.0}) {
        const auto predicted = theory::mirror_corrected_variance(F);
        double sum = 0.0, sum_sq = 0.0;
        std::size_t k = 0;
        for (std::size_t i = 0; i < samples; ++i) {
            const double z = rng.uniform() + F * (rng.uniform() - rng.uniform());
            if (z >= 0.0 && z <= 1.0) continue;
            const double c = correct_component(SdisKind::MIR, z, rng.uniform(), 0.0, 1.0, rng);
            sum += c;
            sum_sq += c * c;
            ++k;
        }
        const double n = static_cast<double>(k);
        const double var = k > 1 ? (sum_sq - sum * sum / n) / (n - 1.0) : 0.0;
        row("mirror_variance", "F=" + short_real(F), var, predicted.value, "estimate");
    }

    auto count_verdicts = [&](const std::string& name, auto&& check) {
        std::size_t checked = 0, bad = 0, attempts = 0;
        while (checked < samples && attempts < 1000 * samples) {
            ++attempts;
            const auto v = check();
            if (v == theory::Verdict::PreconditionUnmet) continue;
            ++checked;
            if (v == theory::Verdict::Violated) ++bad;
        }
        row(name, "instances=" + std::to_string(checked), static_cast<double>(bad), 0.0,
            bad == 0 ? "holds" : "violated");
        if (bad > 0) ++violated;
    };

    count_verdicts("mirror_vs_toroidal_cosine", [&] {
        const auto in = theory::sample_de_instance(rng, rng.uniform(0.01, 0.5));
        return theory::check_mirror_vs_toroidal(in.target, in.trial, BoxDomain::hypercube(in.target.size(), 0.0, 1.0))
            .verdict;
    });
    count_verdicts("mirror_lemmas", [&] {
        const auto in = theory::sample_de_instance(rng, rng.uniform(0.01, 0.5));
        return theory::check_mirror_lemmas(in.target, in.trial, BoxDomain::hypercube(in.target.size(), 0.0, 1.0))
            .verdict;
    });
    count_verdicts("saturation_vs_interior_cosine", [&] {
        const auto in = theory::sample_de_instance(rng, rng.uniform(0.05, 1.0));
        const auto d = BoxDomain::hypercube(in.target.size(), 0.0, 1.0);
        return theory::check_saturation_vs_interior(in.target, in.trial, rng.uniform(), d).verdict;
    });

    const double p = theory::probability_x_le_y([](double u) { return u; }, [](double u) { return std::sqrt(u); },
                                                samples, rng);
    row("ecdf_dominance", "X=U,Y=sqrt(U)", p, 2.0 / 3.0, p >= 0.5 ? "holds" : "violated");
    if (p < 0.5) ++violated;
    return violated;
}

namespace {

std::unique_ptr<std::ostream> open_output(const std::string& path, std::ostream*& sink) {
    if (path.empty() || path == "-") {
        sink = &std::cout;
        return nullptr;
    }
    auto f = std::make_unique<std::ofstream>(path);
    if (!*f) throw ConfigError("cannot write " + path);
    sink = f.get();
    return f;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sdisde: differential evolution experiments with swappable infeasibility repair"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::size_t workers = 1;
    std::optional<std::uint64_t> seed;
    auto* run_cmd = app.add_subcommand("run", "Run an experiment grid and write logs plus manifest.json");
    run_cmd->add_option("--config", config_path, "Experiment file (JSON)")->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--out", out_dir, "Output directory (default: $SDISDE_OUT_DIR or ./sdisde-out)");
    run_cmd->add_option("--workers", workers, "Parallel runs")->check(CLI::PositiveNumber);
    run_cmd->add_option("--seed", seed, "Master seed, overrides the config");

    std::string in_dir, output, group = "sdis";
    auto add_common = [&](CLI::App* cmd, bool grouped) {
        cmd->add_option("--in", in_dir, "Experiment directory containing manifest.json")->required();
        cmd->add_option("-o,--output", output, "CSV destination (default stdout)");
        if (grouped) cmd->add_option("--by", group, "Grouping: sdis, engine, function or config");
    };

    std::size_t grid_points = 201;
    auto* ecdf_cs = app.add_subcommand("ecdf-cs", "ECDF of cosine similarity per group");
    add_common(ecdf_cs, true);
    ecdf_cs->add_option("--points", grid_points, "Grid points on [-1, 1]")->check(CLI::Range(2, 100000));

    double t_lo = 1e-8, t_hi = 1e2;
    std::size_t t_count = 51;
    auto* ecdf_target = app.add_subcommand("ecdf-target", "Fixed-target ECDF over log-spaced precisions");
    add_common(ecdf_target, true);
    ecdf_target->add_option("--min-target", t_lo, "Smallest precision");
    ecdf_target->add_option("--max-target", t_hi, "Largest precision");
    ecdf_target->add_option("--targets", t_count, "Number of targets")->check(CLI::PositiveNumber);

    double precision = 1e-8;
    auto* ert_cmd = app.add_subcommand("ert", "Expected running time to a precision, ranked per problem");
    add_common(ert_cmd, true);
    ert_cmd->add_option("--precision", precision, "Target f(x) - f(x*)");

    std::size_t window = 10;
    bool trace = false;
    auto* pois_cmd = app.add_subcommand("pois", "Fraction of corrected trials per run");
    add_common(pois_cmd, false);
    pois_cmd->add_option("--window", window, "Window in generations")->check(CLI::PositiveNumber);
    pois_cmd->add_flag("--trace", trace, "Per-generation windowed and cumulative values");

    auto* div_cmd = app.add_subcommand("diversity", "Mean diversity per generation and group");
    add_common(div_cmd, true);

    std::size_t samples = 100000;
    std::uint64_t check_seed = 1;
    auto* theory_cmd = app.add_subcommand("theory-check", "Closed-form predictions and randomized checks");
    theory_cmd->add_option("-o,--output", output, "CSV destination (default stdout)");
    theory_cmd->add_option("--samples", samples, "Instances per randomized check")->check(CLI::PositiveNumber);
    theory_cmd->add_option("--seed", check_seed, "Seed for the randomized checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (run_cmd->parsed()) {
            ExperimentSpec spec = load_experiment_spec(config_path);
            if (seed) spec.master_seed = *seed;
            if (!out_dir.empty()) spec.output_dir = out_dir;
            const auto result = run_experiment(spec, workers);
            std::size_t failed = 0;
            for (const auto& r : result.runs) {
                if (!r.ok) {
                    ++failed;
                    std::cerr << r.config.run_id << " failed: " << r.error << '\n';
                }
            }
            std::cout << result.runs.size() - failed << " of " << result.runs.size() << " runs completed; manifest "
                      << result.manifest_path.string() << '\n';
            return failed == 0 ? 0 : 2;
        }

        std::ostream* sink = nullptr;
        auto holder = open_output(output, sink);
        if (ecdf_cs->parsed()) {
            write_ecdf_cs(*sink, in_dir, parse_group_by(group), grid_points);
        } else if (ecdf_target->parsed()) {
            if (!(t_lo > 0.0 && t_hi > t_lo)) throw ConfigError("ecdf-target: need 0 < min-target < max-target");
            write_ecdf_target(*sink, in_dir, parse_group_by(group), log_targets(t_lo, t_hi, t_count));
        } else if (ert_cmd->parsed()) {
            write_ert(*sink, in_dir, parse_group_by(group), precision);
        } else if (pois_cmd->parsed()) {
            write_pois(*sink, in_dir, window, trace);
        } else if (div_cmd->parsed()) {
            write_diversity(*sink, in_dir, parse_group_by(group));
        } else if (theory_cmd->parsed()) {
            const auto violated = write_theory_check(*sink, samples, check_seed);
            if (violated > 0) std::cerr << violated << " check(s) found counterexamples\n";
        }
        sink->flush();
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace sdisde::cli
