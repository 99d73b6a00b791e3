#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "primcoal/stats.hpp"

namespace primcoal {

inline constexpr const char* kVersion = "0.1.0";

/// Experiment kinds understood by the harness (CLI subcommands).
const std::vector<std::string>& experiment_kinds();

/// Resolved run description. Built from JSON (strict: unknown keys are
/// rejected) and validated before any sampling happens.
struct ExperimentConfig {
    std::string kind;
    std::size_t n = 0;
    std::vector<double> lambdas{0.0};
    std::size_t replicates = 1000;
    std::uint64_t seed = 1;
    std::size_t workers = 1; // 0: one per hardware thread; never affects outputs
    double dx = 1e-3;
    double horizon = 10.0; // 0: default_parabolic_horizon(lambda)
    std::string route = "walk";             // walk | graph
    std::string field = "sparse";           // full | sparse
    std::string coalescent = "multiplicative"; // multiplicative | additive
    double alpha = 1e-3;
    double tv_threshold = 0.02;
    double time = 0.5; // additive ml-oracle clock
    std::size_t top = 10;

    /// Kind defaults are filled in for absent keys (n, replicates).
    static ExperimentConfig from_json(const nlohmann::json& j);
    /// Resolved config; `workers` is left out because it cannot change results.
    nlohmann::json to_json() const;
    /// Throws InvalidArgument with a diagnostic on any mode-specific violation.
    void validate() const;
};

/// Applies `overrides` (a JSON object) on top of `base` and resolves.
ExperimentConfig resolve_config(const nlohmann::json& base, const nlohmann::json& overrides);

/// FNV-1a 64-bit hash, hex encoded.
std::string fnv1a_hex(const std::string& s);

struct OutputFile {
    std::string name;
    std::string content;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<TestVerdict> verdicts;
    std::vector<OutputFile> files;

    bool passed() const;
    /// Manifest: resolved config, its hash, seed, version, files, verdicts.
    nlohmann::json manifest() const;
};

/// Runs the experiment in memory. Output is a function of the resolved
/// config only (in particular independent of the worker count).
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Writes every data file plus manifest.json into `dir` (created if needed).
void write_outputs(const ExperimentResult& result, const std::string& dir);

} // namespace primcoal
