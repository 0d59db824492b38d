#include <gtest/gtest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "sdisde/errors.hpp"
#include "temp_dir.hpp"

using namespace sdisde;
namespace fs = std::filesystem;

namespace {

int invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "sdisde");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    return cli::main(static_cast<int>(argv.size()), argv.data());
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) out.push_back(line);
    return out;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

// One experiment shared by every test in this file.
class CliTest : public ::testing::Test {
protected:
    static void SetUpTestSuite() {
        tmp_ = new TempDir("cli");
        const auto cfg = tmp_->path / "spec.json";
        std::ofstream os(cfg);
        os << R"({"master_seed": 3, "runs_per_instance": 2, "budget_multiplier": 400,
            "experiments": [
              {"engine": "de_rand1", "population_sizes": [10], "F": [0.9], "Cr": [0.9], "crossover": ["bin"],
               "sdis": ["SAT", "TOR"], "functions": ["sphere"], "dimensions": [2]},
              {"engine": "shade", "population_sizes": [12], "sdis": ["MIR"], "functions": ["rastrigin"],
               "dimensions": [2]}]})";
        os.close();
        run_status_ = invoke({"run", "--config", cfg.string(), "--out", (tmp_->path / "out").string(),
                              "--workers", "2"});
    }
    static void TearDownTestSuite() {
        delete tmp_;
        tmp_ = nullptr;
    }
    static fs::path out() { return tmp_->path / "out"; }

    static inline TempDir* tmp_ = nullptr;
    static inline int run_status_ = -1;
};

} // namespace

TEST_F(CliTest, RunSucceeds) {
    EXPECT_EQ(run_status_, 0);
    EXPECT_EQ(cli::completed_runs(out()).size(), 6u);
}

TEST_F(CliTest, GroupLabels) {
    const auto runs = cli::completed_runs(out());
    EXPECT_EQ(cli::group_label(runs[0], cli::GroupBy::Sdis), "SAT");
    EXPECT_EQ(cli::group_label(runs[0], cli::GroupBy::Config), runs[0].config_hash);
    EXPECT_NE(cli::group_label(runs[0], cli::GroupBy::Engine).find("SAT"), std::string::npos);
    EXPECT_NE(cli::group_label(runs[0], cli::GroupBy::Function).find("sphere"), std::string::npos);
    EXPECT_THROW(cli::parse_group_by("colour"), ConfigError);
    EXPECT_EQ(cli::parse_group_by("function"), cli::GroupBy::Function);
}

TEST_F(CliTest, EcdfCsIsMonotoneEndingAtOne) {
    std::ostringstream os;
    cli::write_ecdf_cs(os, out(), cli::GroupBy::Sdis, 11);
    const auto rows = lines_of(os.str());
    ASSERT_EQ(rows.front(), "group,x,fraction,count");
    ASSERT_EQ(rows.size(), 1u + 3u * 11u);
    double prev = -1.0;
    std::string group;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        std::istringstream is(rows[i]);
        std::string g, x, frac;
        std::getline(is, g, ',');
        std::getline(is, x, ',');
        std::getline(is, frac, ',');
        if (g != group) {
            group = g;
            prev = -1.0;
        }
        const double f = std::stod(frac);
        EXPECT_GE(f, prev);
        prev = f;
        if (x == "1") EXPECT_DOUBLE_EQ(f, 1.0);
    }
}

TEST_F(CliTest, ErtHasOneRowPerGroupAndProblem) {
    std::ostringstream os;
    cli::write_ert(os, out(), cli::GroupBy::Sdis, 1e-8);
    const auto rows = lines_of(os.str());
    ASSERT_EQ(rows.front(), "function,dimension,group,runs,successes,ert,rank");
    EXPECT_EQ(rows.size(), 4u);
}

TEST_F(CliTest, PoisAndTrace) {
    std::ostringstream summary, trace;
    cli::write_pois(summary, out(), 5, false);
    cli::write_pois(trace, out(), 5, true);
    EXPECT_EQ(lines_of(summary.str()).size(), 7u);
    EXPECT_GT(lines_of(trace.str()).size(), 7u);
}

TEST_F(CliTest, DiversityAndTargetEcdf) {
    std::ostringstream div, tgt;
    cli::write_diversity(div, out(), cli::GroupBy::Engine);
    cli::write_ecdf_target(tgt, out(), cli::GroupBy::Sdis, {1.0, 1e-2});
    EXPECT_EQ(lines_of(div.str()).front(), "group,generation,runs,mean_diversity,sd_diversity");
    EXPECT_GT(lines_of(div.str()).size(), 3u);
    EXPECT_EQ(lines_of(tgt.str()).front(), "group,evaluations,fraction");
}

TEST_F(CliTest, SubcommandsWriteFiles) {
    const auto dir = tmp_->path / "csv";
    fs::create_directories(dir);
    EXPECT_EQ(invoke({"ecdf-cs", "--in", out().string(), "-o", (dir / "cs.csv").string()}), 0);
    EXPECT_EQ(invoke({"ecdf-target", "--in", out().string(), "-o", (dir / "t.csv").string(), "--by", "config"}), 0);
    EXPECT_EQ(invoke({"ert", "--in", out().string(), "-o", (dir / "ert.csv").string(), "--by", "function"}), 0);
    EXPECT_EQ(invoke({"pois", "--in", out().string(), "-o", (dir / "pois.csv").string(), "--trace"}), 0);
    EXPECT_EQ(invoke({"diversity", "--in", out().string(), "-o", (dir / "div.csv").string()}), 0);
    for (const char* f : {"cs.csv", "t.csv", "ert.csv", "pois.csv", "div.csv"}) {
        EXPECT_GT(lines_of(slurp(dir / f)).size(), 1u) << f;
    }
}

TEST_F(CliTest, ErrorsExitWithOne) {
    EXPECT_EQ(invoke({"ert", "--in", (tmp_->path / "missing").string()}), 1);
    EXPECT_EQ(invoke({"ert", "--in", out().string(), "--by", "colour"}), 1);
    EXPECT_EQ(invoke({"frobnicate"}), 1);
    EXPECT_EQ(invoke({"run", "--config", (tmp_->path / "missing.json").string()}), 1);
    EXPECT_EQ(invoke({"ecdf-target", "--in", out().string(), "--min-target", "1", "--max-target", "0.5"}), 1);
}

TEST(Cli, PartialFailureExitsWithTwo) {
    TempDir tmp("cli");
    const auto cfg = tmp.path / "spec.json";
    std::ofstream os(cfg);
    os << R"({"runs_per_instance": 1, "budget_multiplier": 2, "experiments": [
        {"engine": "de_rand1", "population_sizes": [10], "F": [0.5], "Cr": [0.5], "sdis": ["SAT"],
         "functions": ["sphere"], "dimensions": [2, 8]}]})";
    os.close();
    EXPECT_EQ(invoke({"run", "--config", cfg.string(), "--out", (tmp.path / "out").string()}), 2);
    EXPECT_EQ(cli::completed_runs(tmp.path / "out").size(), 1u);
}

TEST(Cli, TheoryCheckReportsRows) {
    std::ostringstream os;
    cli::write_theory_check(os, 2000, 5);
    const auto rows = lines_of(os.str());
    ASSERT_EQ(rows.front(), "check,parameter,value,reference,verdict");
    EXPECT_GT(rows.size(), 10u);
}
