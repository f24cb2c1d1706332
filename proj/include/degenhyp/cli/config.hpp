#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "degenhyp/common.hpp"

namespace degenhyp::cli {

using Json = nlohmann::ordered_json;

enum class Command { AnalyzeSystem, AnalyzeOperator, Solve, LossExperiment, CheckSymbol, Sweep };

[[nodiscard]] std::optional<Command> parse_command(std::string_view name);
[[nodiscard]] std::string to_string(Command c);

struct SweepConfig {
    Command command = Command::LossExperiment;
    /// A problem parameter ("k", "a", "c", "l_star") or one of
    /// "sigma", "t_probe", "eps", "n_modes", "seed", "C".
    std::string axis;
    std::vector<double> values;
};

/// A validated run description. `resolved` is the input with every default
/// filled in; it is echoed into each artifact.
struct RunConfig {
    Command command = Command::AnalyzeOperator;
    int l_star = 1;
    double T = 1.0;
    Json problem;
    Json symbol;
    std::vector<double> x_points;
    int n_modes = 512;
    std::vector<double> t_out;
    double rtol = 1e-10;
    double atol = 1e-300;
    double eps = 0.0;
    std::uint64_t seed = 0;
    double sigma = 6.0;
    double t_probe = 1.0;
    std::string data_kind = "decay";
    int k_max = 32;
    bool energy = false;
    double energy_C = 1.0;
    std::optional<SweepConfig> sweep;
    Json resolved;
};

/// Validates `input` for `command` and fills defaults. A "command" key in the
/// file, when present, must agree. `seed` overrides the file value.
/// Throws Error(Validation) with the offending key in the message.
[[nodiscard]] RunConfig parse_config(const Json& input, Command command, std::optional<std::uint64_t> seed = {});

[[nodiscard]] RunConfig load_config(const std::string& path, Command command,
                                    std::optional<std::uint64_t> seed = {});

/// The config of one sweep point: `axis` set to `value` and command replaced.
[[nodiscard]] RunConfig sweep_point(const RunConfig& base, double value);

/// Complex entry: number or [re, im].
[[nodiscard]] cplx json_complex(const Json& j, const std::string& where);
/// Rows of complex entries; all rows the same length.
[[nodiscard]] Matrix json_matrix(const Json& j, const std::string& where);

} // namespace degenhyp::cli
