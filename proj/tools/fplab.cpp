#include "fplab/experiments.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"fplab: nonlocal p-Laplace measure-data experiments"};
    app.require_subcommand(1);
    app.fallthrough();  // allow --out/--seed/--verbose after the subcommand

    std::string out_dir = "out";
    std::uint64_t seed = 0;
    bool verbose = false;
    app.add_option("--out", out_dir, "output directory")->capture_default_str();
    app.add_option("--seed", seed, "random seed")->capture_default_str();
    app.add_flag("--verbose", verbose, "print per-run check counts");

    std::string config_path, suite_dir;
    CLI::App* run = app.add_subcommand("run", "execute one experiment config");
    run->add_option("config", config_path, "config JSON path")->required();
    CLI::App* suite = app.add_subcommand("suite", "execute every config in a directory");
    suite->add_option("dir", suite_dir, "directory of config JSON files")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            fplab::RunOutcome r = fplab::run_config(config_path, out_dir, seed, verbose);
            std::cout << r.kind << ": " << r.checks_passed << "/" << r.checks_total
                      << " checks passed, summary at " << r.summary_path << "\n";
            return r.ok ? 0 : 1;
        }
        fplab::SuiteOutcome s = fplab::run_suite(suite_dir, out_dir, seed, verbose);
        std::cout << "suite: " << s.passed << "/" << s.total << " runs passed\n";
        return s.ok ? 0 : 1;
    } catch (const fplab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
