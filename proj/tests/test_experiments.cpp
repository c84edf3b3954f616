#include <doctest.h>

#include "fplab/experiments.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace fplab;
namespace fs = std::filesystem;

namespace {

const char* kLinearConfig = R"({
  "kind": "linear-solve",
  "domain": {"type": "interval", "a": 0.0, "b": 1.0, "h": 0.1},
  "kernel": {"s": 0.4, "p": 2.0},
  "measure": {"type": "dirac", "x": [0.5], "mass": 1.0}
})";

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path fresh_dir(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("fplab_test_" + name);
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("linear-solve run writes summary, checks and fields") {
    fs::path out = fresh_dir("linear");
    RunOutcome r = run_config_text(kLinearConfig, out.string(), 42, false);
    CHECK(r.ok);
    CHECK(r.kind == "linear-solve");
    CHECK(r.checks_passed == r.checks_total);
    CHECK(r.checks_total >= 2);
    CHECK(fs::exists(out / "summary.json"));
    CHECK(fs::exists(out / "checks.json"));
    CHECK(fs::exists(out / "fields.csv"));

    std::string summary = slurp(out / "summary.json");
    CHECK(summary.find("\"kind\": \"linear-solve\"") != std::string::npos);
    CHECK(summary.find("\"seed\": 42") != std::string::npos);
    CHECK(summary.find("\"residual_norm\"") != std::string::npos);

    // CSV header carries coordinates, weights and both fields
    std::string csv = slurp(out / "fields.csv");
    CHECK(csv.rfind("index,x0,weight,interior,u,wolff_abs", 0) == 0);
}

TEST_CASE("schema violations raise ConfigError") {
    fs::path out = fresh_dir("schema");
    CHECK_THROWS_AS(run_config_text("{\"kind\": \"no-such-kind\"}", out.string(), 0, false),
                    ConfigError);
    CHECK_THROWS_AS(run_config_text("not json at all", out.string(), 0, false), ConfigError);
    CHECK_THROWS_AS(run_config_text("[1, 2]", out.string(), 0, false), ConfigError);
    // missing measure block
    CHECK_THROWS_AS(run_config_text(R"({
        "kind": "linear-solve",
        "domain": {"type": "interval", "a": 0.0, "b": 1.0, "h": 0.1},
        "kernel": {"s": 0.4, "p": 2.0}
    })",
                                    out.string(), 0, false),
                    ConfigError);
    CHECK_THROWS_AS(run_config("/nonexistent/config.json", out.string(), 0, false), ConfigError);
}

TEST_CASE("reruns with the same seed are byte-identical") {
    fs::path a = fresh_dir("det_a");
    fs::path b = fresh_dir("det_b");
    run_config_text(kLinearConfig, a.string(), 7, false);
    run_config_text(kLinearConfig, b.string(), 7, false);
    CHECK(slurp(a / "summary.json") == slurp(b / "summary.json"));
    CHECK(slurp(a / "fields.csv") == slurp(b / "fields.csv"));
    CHECK(slurp(a / "checks.json") == slurp(b / "checks.json"));
}

TEST_CASE("suite runs every config and aggregates") {
    fs::path cfgs = fresh_dir("suite_cfgs");
    fs::create_directories(cfgs);
    {
        std::ofstream one(cfgs / "a_linear.json");
        one << kLinearConfig;
        std::ofstream two(cfgs / "b_capacity.json");
        two << R"({
          "kind": "capacity-suite",
          "capacity": {"alpha": 1.0, "beta": 3.0, "dim": 2, "extent": 1.0,
                       "grid_n": 7, "ball_radii": [0.2, 0.6]}
        })";
    }
    fs::path out = fresh_dir("suite_out");
    SuiteOutcome s = run_suite(cfgs.string(), out.string(), 1, false);
    CHECK(s.total == 2);
    CHECK(s.passed == 2);
    CHECK(s.ok);
    CHECK(fs::exists(out / "aggregate.json"));
    CHECK(fs::exists(out / "a_linear" / "summary.json"));
    CHECK(fs::exists(out / "b_capacity" / "capacity.csv"));
    std::string agg = slurp(out / "aggregate.json");
    CHECK(agg.find("a_linear.json") != std::string::npos);
    CHECK(agg.find("b_capacity.json") != std::string::npos);

    fs::path empty = fresh_dir("suite_empty");
    fs::create_directories(empty);
    CHECK_THROWS_AS(run_suite(empty.string(), out.string(), 1, false), ConfigError);
}

TEST_CASE("power-absorption reports divergence iff the level ladder falls short") {
    // heavy atom: the untruncated absorption term dwarfs every level in the
    // budget, so the scheme must flag divergence
    const char* heavy = R"({
      "kind": "power-absorption",
      "domain": {"type": "interval", "a": 0.0, "b": 1.0, "h": 0.05},
      "kernel": {"s": 0.4, "p": 2.0},
      "nonlinearity": {"type": "power", "kappa": 3.0},
      "measure": {"type": "dirac", "x": [0.5], "mass": 1000.0},
      "max_levels": 5,
      "expect_divergence": true
    })";
    fs::path out = fresh_dir("pa_heavy");
    RunOutcome r = run_config_text(heavy, out.string(), 3, false);
    CHECK(r.ok);
    CHECK(slurp(out / "summary.json").find("\"diverged\": true") != std::string::npos);

    // light atom: truncation never binds and the iterates stabilize
    const char* light = R"({
      "kind": "power-absorption",
      "domain": {"type": "interval", "a": 0.0, "b": 1.0, "h": 0.05},
      "kernel": {"s": 0.4, "p": 2.0},
      "nonlinearity": {"type": "power", "kappa": 1.5},
      "measure": {"type": "dirac", "x": [0.5], "mass": 1.0}
    })";
    fs::path out2 = fresh_dir("pa_light");
    RunOutcome r2 = run_config_text(light, out2.string(), 3, false);
    CHECK(r2.ok);
    CHECK(slurp(out2 / "summary.json").find("\"diverged\": false") != std::string::npos);
}
