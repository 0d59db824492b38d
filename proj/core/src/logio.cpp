#include "sdisde/logio.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace sdisde {

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

void expect_header(std::istream& is, const char* header, const char* file) {
    std::string line;
    if (!std::getline(is, line)) {
        throw SchemaError(std::string(file) + ": missing header");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != header) {
        throw SchemaError(std::string(file) + ": unsupported column layout '" + line + "'");
    }
}

template <typename RowFn>
void for_each_row(std::istream& is, std::size_t columns, const char* file, RowFn&& fn) {
    std::string line;
    std::size_t row = 1;
    while (std::getline(is, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split(line);
        if (fields.size() != columns) {
            throw SchemaError(std::string(file) + ": row " + std::to_string(row) + " has " +
                              std::to_string(fields.size()) + " fields, expected " + std::to_string(columns));
        }
        try {
            fn(fields);
        } catch (const std::invalid_argument&) {
            throw SchemaError(std::string(file) + ": malformed value in row " + std::to_string(row));
        } catch (const std::out_of_range&) {
            throw SchemaError(std::string(file) + ": value out of range in row " + std::to_string(row));
        }
    }
}

std::size_t parse_count(const std::string& s) {
    std::size_t pos = 0;
    const auto v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return static_cast<std::size_t>(v);
}

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream os(p, std::ios::binary);
    if (!os) {
        throw std::runtime_error("cannot write " + p.string());
    }
    return os;
}

std::ifstream open_in(const std::filesystem::path& p) {
    std::ifstream is(p, std::ios::binary);
    if (!is) {
        throw std::runtime_error("cannot read " + p.string());
    }
    return is;
}

} // namespace

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_real(const std::string& text) {
    if (text == "nan") return std::nan("");
    if (text == "inf") return INFINITY;
    if (text == "-inf") return -INFINITY;
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
}

void write_corrections_csv(std::ostream& os, const RunLog& log) {
    os << kCorrectionsHeader << '\n';
    for (const auto& r : log.corrections) {
        os << r.eval_index << ',' << r.generation << ',' << r.n_corrected << ','
           << (r.cosine ? format_real(*r.cosine) : std::string()) << '\n';
    }
}

void write_generations_csv(std::ostream& os, const RunLog& log) {
    os << kGenerationsHeader << '\n';
    for (const auto& g : log.generations) {
        os << g.generation << ',' << format_real(g.diversity) << ',' << g.infeasible_trials << ',' << g.trials << ','
           << format_real(g.best_fitness) << ',' << g.pop_size << ',' << g.infeasible_components << ','
           << g.components << ',' << g.mutant_components << '\n';
    }
}

void write_trajectory_csv(std::ostream& os, const RunLog& log) {
    os << kTrajectoryHeader << '\n';
    for (const auto& p : log.trajectory) {
        os << p.eval_index << ',' << format_real(p.best_fitness) << '\n';
    }
}

void write_run_log(const std::filesystem::path& dir, const RunLog& log) {
    std::filesystem::create_directories(dir);
    {
        auto os = open_out(dir / kCorrectionsFile);
        write_corrections_csv(os, log);
    }
    {
        auto os = open_out(dir / kGenerationsFile);
        write_generations_csv(os, log);
    }
    {
        auto os = open_out(dir / kTrajectoryFile);
        write_trajectory_csv(os, log);
    }
}

void read_corrections_csv(std::istream& is, RunLog& log) {
    expect_header(is, kCorrectionsHeader, kCorrectionsFile);
    for_each_row(is, 4, kCorrectionsFile, [&](const std::vector<std::string>& f) {
        CorrectionRecord r;
        r.eval_index = parse_count(f[0]);
        r.generation = parse_count(f[1]);
        r.n_corrected = parse_count(f[2]);
        if (!f[3].empty()) r.cosine = parse_real(f[3]);
        log.corrections.push_back(r);
    });
}

void read_generations_csv(std::istream& is, RunLog& log) {
    expect_header(is, kGenerationsHeader, kGenerationsFile);
    for_each_row(is, 9, kGenerationsFile, [&](const std::vector<std::string>& f) {
        GenRecord g;
        g.generation = parse_count(f[0]);
        g.diversity = parse_real(f[1]);
        g.infeasible_trials = parse_count(f[2]);
        g.trials = parse_count(f[3]);
        g.best_fitness = parse_real(f[4]);
        g.pop_size = parse_count(f[5]);
        g.infeasible_components = parse_count(f[6]);
        g.components = parse_count(f[7]);
        g.mutant_components = parse_count(f[8]);
        log.generations.push_back(g);
    });
}

void read_trajectory_csv(std::istream& is, RunLog& log) {
    expect_header(is, kTrajectoryHeader, kTrajectoryFile);
    for_each_row(is, 2, kTrajectoryFile, [&](const std::vector<std::string>& f) {
        log.trajectory.push_back({parse_count(f[0]), parse_real(f[1])});
    });
}

void rebuild_summary(RunLog& log) {
    RunSummary s;
    for (const auto& g : log.generations) {
        s.total_trials += g.trials;
        s.infeasible_trials += g.infeasible_trials;
        s.total_infeasible_components += g.infeasible_components;
        s.total_components_generated += g.components;
    }
    s.final_pois = s.total_trials > 0
                       ? static_cast<double>(s.infeasible_trials) / static_cast<double>(s.total_trials)
                       : 0.0;
    if (!log.trajectory.empty()) {
        s.best_fitness = log.trajectory.back().best_fitness;
    } else {
        s.best_fitness = std::nan("");
    }
    std::size_t initial = log.generations.empty() ? 0 : log.generations.front().pop_size;
    s.evaluations = initial + s.total_trials;
    log.summary = s;
}

RunLog read_run_log(const std::filesystem::path& dir) {
    RunLog log;
    {
        auto is = open_in(dir / kCorrectionsFile);
        read_corrections_csv(is, log);
    }
    {
        auto is = open_in(dir / kGenerationsFile);
        read_generations_csv(is, log);
    }
    {
        auto is = open_in(dir / kTrajectoryFile);
        read_trajectory_csv(is, log);
    }
    rebuild_summary(log);
    return log;
}

} // namespace sdisde
