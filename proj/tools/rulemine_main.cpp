// rulemine: value-guided closed-path rule mining over knowledge graphs.
//
// Subcommands mirror the pipeline phases; `pipeline` chains them all.
// Flags override the corresponding config keys for this invocation only.
// RULEMINE_OUT_DIR, when set, overrides the configured output directory.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>

#include "rulemine/pipeline.hpp"
#include "rulemine/util.hpp"

int main(int argc, char** argv) {
    CLI::App app{"rulemine: value-guided closed-path rule mining over knowledge graphs"};
    app.fallthrough();
    app.require_subcommand(0, 1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> jobs;
    std::optional<double> time_limit;
    std::optional<std::size_t> length;
    std::string predicates;
    bool print_config_flag = false;
    rulemine::PhaseOptions opts;

    app.add_option("--config", config_path, "configuration file (flat key = value sections)");
    app.add_option("--seed", seed, "override [run] seed");
    app.add_option("--jobs", jobs, "override [run] jobs (parallel head predicates)");
    app.add_option("--time-limit", time_limit,
                   "override [search] time_limit (seconds per head predicate)");
    app.add_option("--length", length, "override [search] max_length (rule length sweep bound)");
    app.add_option("--predicates", predicates,
                   "comma-separated head predicate names to mine (default: all)");
    app.add_flag("--print-config", print_config_flag, "print the effective config and exit");
    app.add_flag("--verbose", opts.verbose, "log per-phase progress to stderr");

    auto* cmd_load = app.add_subcommand("load", "validate and index the KG, export a normalized copy");
    auto* cmd_embed = app.add_subcommand("embed", "train the KG embedding");
    auto* cmd_seeds = app.add_subcommand("seeds", "sample high-rho seed rules");
    auto* cmd_agent = app.add_subcommand("train-agent", "train the value network");
    auto* cmd_mine = app.add_subcommand("mine", "run the value-guided rule search");
    auto* cmd_predict = app.add_subcommand("predict", "apply mined rules to derive new facts");
    auto* cmd_eval = app.add_subcommand("evaluate", "held-out evaluation on a fresh split");
    auto* cmd_report = app.add_subcommand("report", "render rule tables, reward and precision curves");
    auto* cmd_pipeline = app.add_subcommand("pipeline", "run every phase in order");

    CLI11_PARSE(app, argc, argv);

    try {
        rulemine::RunConfig cfg = config_path.empty() ? rulemine::default_config()
                                                      : rulemine::load_config_file(config_path);
        if (seed) cfg.seed = *seed;
        if (jobs) cfg.jobs = *jobs;
        if (time_limit) cfg.search.time_limit_seconds = *time_limit;
        if (length) cfg.max_length = *length;
        if (const char* out_override = std::getenv("RULEMINE_OUT_DIR"); out_override && *out_override)
            cfg.out_dir = out_override;
        cfg.validate();

        for (std::string_view part : rulemine::split(predicates, ','))
            if (!rulemine::trim(part).empty()) opts.predicates.emplace_back(rulemine::trim(part));

        if (print_config_flag) {
            std::cout << rulemine::print_config(cfg);
            return 0;
        }
        if (app.get_subcommands().empty()) {
            std::cerr << app.help();
            return 1;
        }

        if (cmd_load->parsed()) rulemine::run_load(cfg, opts);
        else if (cmd_embed->parsed()) rulemine::run_embed(cfg, opts);
        else if (cmd_seeds->parsed()) rulemine::run_seeds(cfg, opts);
        else if (cmd_agent->parsed()) rulemine::run_train_agent(cfg, opts);
        else if (cmd_mine->parsed()) rulemine::run_mine(cfg, opts);
        else if (cmd_predict->parsed()) rulemine::run_predict(cfg, opts);
        else if (cmd_eval->parsed()) rulemine::run_evaluate(cfg, opts);
        else if (cmd_report->parsed()) rulemine::run_report(cfg, opts);
        else if (cmd_pipeline->parsed()) rulemine::run_full_pipeline(cfg, opts);
    } catch (const rulemine::PrerequisiteError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
