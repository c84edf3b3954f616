#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fplab {

/// Config document violates the schema (unknown kind, missing or ill-typed
/// field). The message names the offending field.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunOutcome {
    bool ok = false;                // all invariant checks passed
    int checks_total = 0;
    int checks_passed = 0;
    std::string kind;
    std::string summary_path;
};

/// Execute one experiment config (JSON text already loaded) and write
/// summary.json, checks.json and the CSV field tables under out_dir.
/// Deterministic for fixed config + seed. Throws ConfigError on schema
/// violations; solver-level errors propagate as std::exception.
RunOutcome run_config_text(const std::string& config_text, const std::string& out_dir,
                           std::uint64_t seed, bool verbose);

/// Same, reading the config from a file.
RunOutcome run_config(const std::string& config_path, const std::string& out_dir,
                      std::uint64_t seed, bool verbose);

struct SuiteOutcome {
    int total = 0;
    int passed = 0;
    bool ok = false;  // every run passed all checks
};

/// Run every *.json config under dir (sorted by name); each run writes into
/// out_dir/<config-stem>/ and an aggregate.json lands in out_dir.
SuiteOutcome run_suite(const std::string& dir, const std::string& out_dir, std::uint64_t seed,
                       bool verbose);

}  // namespace fplab
