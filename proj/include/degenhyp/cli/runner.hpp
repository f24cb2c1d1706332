#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "degenhyp/cli/config.hpp"
#include "degenhyp/solver/analysis.hpp"

namespace degenhyp::cli {

struct RunReport {
    std::string status = "ok";
    int exit_code = 0;
    double wall_time = 0.0;
    /// File names relative to the output directory.
    std::vector<std::string> artifacts;
    Json headlines = Json::object();
    std::string diagnostic;
    Json config;

    [[nodiscard]] Json to_json() const;
};

struct Artifact {
    std::string name;
    std::string content;
};

struct RunOutput {
    RunReport report;
    std::vector<Artifact> artifacts;
};

/// 2 for rejected input (validation, unmet structural hypotheses), 3 for
/// numerical failures.
[[nodiscard]] int exit_code_for(ErrorKind kind);

[[nodiscard]] solver::Problem make_problem(const RunConfig& cfg);
/// Scalar operator of the configured problem; validation error for systems.
[[nodiscard]] reduction::ScalarOperator make_operator(const RunConfig& cfg);
/// First-order system of the configured problem; scalar problems give their companion system.
[[nodiscard]] systems::FirstOrderSystem make_system(const RunConfig& cfg);

/// Runs the configured command in memory. Errors are caught and reported in
/// the returned report. Sweep points run on up to `workers` threads.
[[nodiscard]] RunOutput execute(const RunConfig& cfg, int workers = 1);

/// execute() followed by writing every artifact and report.json into `out_dir`.
RunReport run(const RunConfig& cfg, const std::filesystem::path& out_dir, int workers = 1);

} // namespace degenhyp::cli
