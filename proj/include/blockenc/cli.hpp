#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace blockenc {

// One batch experiment.  Defaults are overridden first by a JSON config file
// (apply_config_file), then by command-line flags; validation happens at
// execution, so partially filled configs are fine to pass around in tests.
struct ExperimentConfig {
    std::string command; // pca | solve | simulate | bench

    std::string input_path;
    std::string sequence_path; // sampled Hamiltonians for time-dependent runs
    std::string output_path = "result.json";
    std::string ledger_path;   // empty: derived from output_path
    bool ledger_report = true;

    double eps = 1e-3;
    long long seed = -1; // mandatory wherever randomness enters

    // pca
    int r = 1;
    std::string method = "power"; // power | gd
    double gap = 0.0;             // 0 = probe for it
    double eta = 0.25;
    int iterations = 0;           // gradient-descent step override

    // solve
    std::string path = "auto"; // psd | general | auto
    double planted_kappa = 0.0;
    int n = 16;
    bool indefinite = false;
    bool amplitude_amplification = false;
    bool strict_polynomials = false;

    // simulate
    double t = 1.0;
    int k_order = 1;
    std::string discretization = "direct"; // direct | central | multistep | time-dependent
    int steps = 0;                         // 0 = choose automatically

    // bench
    std::string sweep; // "kappa=2,4,8,16" | "n=..." | "eps=..."
};

// Everything a run produces, before touching the filesystem.  The JSON is the
// result document; the ledger table has one row per pipeline stage; bench
// runs additionally fill the sweep table.
struct RunArtifacts {
    nlohmann::json result;
    std::vector<std::string> ledger_header;
    std::vector<std::vector<std::string>> ledger_rows;
    std::vector<std::string> bench_header;
    std::vector<std::vector<std::string>> bench_rows;
};

// Overlay settings from a JSON document onto the config (keys mirror the
// long flag names; unknown keys are rejected).
void apply_config_file(ExperimentConfig& cfg, const std::string& path);

// Validate and run the requested pipeline in-process.
RunArtifacts execute(const ExperimentConfig& cfg);

// execute() plus artifact writing and error rendering; returns the exit code.
int run(const ExperimentConfig& cfg);

// FNV-1a hash of the canonical field dump, embedded in every result document.
std::uint64_t config_hash(const ExperimentConfig& cfg);

// Canonical byte layout for all JSON artifacts.
std::string render_json(const nlohmann::json& j);

} // namespace blockenc
