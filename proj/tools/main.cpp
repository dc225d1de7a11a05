// Command line front end: `run --config <path>` executes the configured
// checks and exits nonzero on any violation; `list` prints the registry.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "isosym/cli_reporter.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Gaussian rearrangement and isoperimetric inequality verifier"};
    app.require_subcommand(1);

    auto* run_cmd = app.add_subcommand("run", "execute checks from a run configuration");
    std::string config_path;
    run_cmd->add_option("--config", config_path, "run configuration file")->required();
    std::string out_dir;
    run_cmd->add_option("--out", out_dir, "output directory (overrides config and environment)");
    std::string format;
    run_cmd->add_option("--format", format, "csv|json|both (overrides config)")
        ->check(CLI::IsMember({"csv", "json", "both"}));
    std::uint64_t seed_override = 0;
    auto* seed_opt = run_cmd->add_option("--seed-override", seed_override,
                                         "replace the configured seed list with one seed");

    app.add_subcommand("list", "list registered checks and families");

    CLI11_PARSE(app, argc, argv);

    const auto suite = isosym::InequalitySuite::with_defaults();
    const auto catalog = isosym::FamilyCatalog::with_defaults();

    if (app.got_subcommand("list")) {
        std::cout << isosym::render_catalog_listing(suite, catalog);
        return 0;
    }

    isosym::RunConfig cfg;
    try {
        cfg = isosym::RunConfig::parse_file(config_path);
        if (!out_dir.empty()) {
            cfg.output_dir = out_dir;
        } else if (!cfg.output_dir_from_config) {
            if (const char* env = std::getenv("ISOSYM_OUTPUT_DIR")) cfg.output_dir = env;
        }
        if (format == "csv") cfg.format = isosym::RunConfig::Format::csv;
        if (format == "json") cfg.format = isosym::RunConfig::Format::json;
        if (format == "both") cfg.format = isosym::RunConfig::Format::both;
        if (seed_opt->count() > 0) cfg.seeds = {seed_override};
        cfg.validate(suite, catalog);
    } catch (const std::exception& err) {
        std::cerr << "configuration error: " << err.what() << "\n";
        return 2;
    }

    try {
        const isosym::RunOutcome outcome = isosym::execute_run(cfg, suite, catalog);
        std::cout << "wrote " << outcome.reports.size() << " report(s) to " << cfg.output_dir
                  << "; violated: " << outcome.n_violated << "\n";
        for (const auto& rep : outcome.reports) {
            if (rep.verdict == isosym::Verdict::violated) {
                std::cout << "  VIOLATED " << rep.inequality_id << " on " << rep.function_id
                          << " dim " << rep.dim << " seed " << rep.seed << " (margin "
                          << rep.worst_margin << ", tol " << rep.tolerance << ")\n";
            }
        }
        return outcome.exit_code;
    } catch (const std::exception& err) {
        std::cerr << "run failed: " << err.what() << "\n";
        return 3;
    }
}
