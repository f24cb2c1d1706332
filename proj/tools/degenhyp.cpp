#include <iostream>

#include <CLI11.hpp>

#include "degenhyp/cli/runner.hpp"

namespace dc = degenhyp::cli;

int main(int argc, char** argv) {
    CLI::App app{"Loss-of-regularity analysis and spectral experiments for degenerate hyperbolic problems", "degenhyp"};
    app.require_subcommand(1, 1);
    std::string config_path;
    std::string out_dir = "out";
    int workers = 1;
    std::uint64_t seed = 0;
    for (const char* name :
         {"analyze-system", "analyze-operator", "solve", "loss-experiment", "check-symbol", "sweep"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON run description")->required();
        sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
        sub->add_option("--workers", workers, "Worker threads for sweeps")->check(CLI::Range(1, 256));
        sub->add_option("--seed", seed, "Overrides the seed in the config");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    const auto* sub = app.get_subcommands().front();
    const auto command = dc::parse_command(sub->get_name());
    std::optional<std::uint64_t> seed_override;
    if (sub->count("--seed") > 0) seed_override = seed;
    try {
        const auto cfg = dc::load_config(config_path, *command, seed_override);
        const auto report = dc::run(cfg, out_dir, workers);
        std::cout << report.to_json().dump(2) << "\n";
        if (report.exit_code != 0) std::cerr << "degenhyp: " << report.diagnostic << "\n";
        return report.exit_code;
    } catch (const degenhyp::Error& e) {
        std::cerr << "degenhyp: " << e.what() << "\n";
        return dc::exit_code_for(e.kind());
    }
}
