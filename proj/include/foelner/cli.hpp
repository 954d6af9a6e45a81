#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "foelner/io.hpp"

namespace foelner::cli {

inline constexpr const char* kToolVersion = "1.0.0";

enum class Format { Json, Csv };

struct RunConfig {
    std::string command;  // group | witness | scan | audit | identity-check

    // group
    std::string group = "free:2";
    std::string gens;  // empty: standard generators
    int radius = 2;
    std::string mode = "exhaustive";  // exhaustive | balls | search
    std::int64_t iters = 10000;

    // witness
    int n = 2;
    int k = 8;
    int depth = 6;
    bool formula_only = false;
    int k_max = 0;  // > 0 turns on the certificate sweep

    // scan / audit
    int rank = 8;
    int frames = 100;
    int anneal = 0;
    std::int64_t anneal_iters = 2000;
    bool paper_mode = false;

    // identity-check
    int trials = 100;

    std::optional<std::uint64_t> seed;
    std::string out;
    Format format = Format::Json;
};

struct RunReport {
    Json config;
    Json results;
    std::vector<std::string> warnings;
    double wall_time_s = 0.0;
    std::string csv;  // filled when format is csv

    // Full JSON document: tool, version, config, results, warnings, wall time.
    Json to_json() const;
};

// Echo of every effective setting for `config.command`.
Json config_json(const RunConfig& config);

// Throws PreconditionError on invalid configuration, ConvergenceError when
// numerics fail.
RunReport run(const RunConfig& config);

// argv-style entry point. Returns the process exit status: 0 ok,
// 2 precondition violation, 3 numerical non-convergence.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace foelner::cli
