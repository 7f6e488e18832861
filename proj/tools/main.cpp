#include <CLI11.hpp>

#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) {
    using namespace kage::cli;
    CLI::App app{"Batched 2D platformer with factorized visual axes"};
    app.require_subcommand(1);

    RunOptions run;
    auto* c_run = app.add_subcommand("run", "Roll out a trivial policy over a batch of environments");
    c_run->add_option("--config", run.config, "easy, hard, default or a YAML path")->capture_default_str();
    c_run->add_option("--envs", run.envs, "Number of environments")->capture_default_str()->check(CLI::PositiveNumber);
    c_run->add_option("--steps", run.steps, "Batched steps")->capture_default_str()->check(CLI::PositiveNumber);
    c_run->add_option("--seed", run.seed)->capture_default_str();
    c_run->add_option("--policy", run.policy)->capture_default_str()->check(CLI::IsMember({"random", "right", "idle"}));

    RenderOptions render;
    auto* c_render = app.add_subcommand("render", "Write frames from a fixed random-action rollout");
    c_render->add_option("--config", render.config)->capture_default_str();
    c_render->add_option("--seed", render.seed)->capture_default_str();
    c_render->add_option("--frames", render.frames)->capture_default_str()->check(CLI::PositiveNumber);
    c_render->add_option("--out", render.out_dir)->capture_default_str();
    c_render->add_option("--format", render.format)->capture_default_str()->check(CLI::IsMember({"png", "raw"}));

    ThroughputCommandOptions bench;
    auto* c_bench = app.add_subcommand("bench-throughput", "Measure steps per second over n_envs = 2^0 ... 2^P");
    c_bench->add_option("--config", bench.config)->capture_default_str();
    c_bench->add_option("--max-envs-pow", bench.max_envs_pow)->capture_default_str()->check(CLI::NonNegativeNumber);
    c_bench->add_option("--steps-per-point", bench.steps_per_point)->capture_default_str()->check(CLI::PositiveNumber);
    c_bench->add_option("--seed", bench.seed)->capture_default_str();
    c_bench->add_option("--out", bench.out_prefix, "Write <out>.csv and <out>.json");

    SuiteOptions suite;
    auto* c_suite = app.add_subcommand("suite", "Evaluate train/eval pairs and report generalization gaps");
    c_suite->add_option("--pair", suite.pair, "suite/id, e.g. filters/4");
    c_suite->add_flag("--all", suite.all);
    c_suite->add_option("--policy-dir", suite.policy_dir, "Directory of JSON checkpoints");
    c_suite->add_option("--seeds", suite.seeds)->capture_default_str()->check(CLI::PositiveNumber);
    c_suite->add_option("--episodes", suite.episodes, "Episodes per evaluation")->capture_default_str()->check(CLI::PositiveNumber);
    c_suite->add_option("--seed", suite.seed)->capture_default_str();
    c_suite->add_option("--out", suite.out, "JSON report path");

    TheoryOptions theory;
    auto* c_theory = app.add_subcommand("verify-theory", "Check the visual POMDP equivalence on random tabular instances");
    c_theory->add_option("--instances", theory.instances)->capture_default_str()->check(CLI::PositiveNumber);
    c_theory->add_option("--seed", theory.seed)->capture_default_str();
    c_theory->add_option("--tol", theory.tol)->capture_default_str();
    c_theory->add_option("--out", theory.out, "JSON certificate path");

    std::string export_dir = "suites";
    auto* c_export = app.add_subcommand("export-suites", "Write every pair's train and eval YAML");
    c_export->add_option("--out", export_dir)->capture_default_str();

    std::string config_name;
    auto* c_config = app.add_subcommand("config", "Print the fully resolved configuration");
    c_config->add_option("--config", config_name, "Defaults when omitted");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    return guarded([&] {
        if (*c_run) return cmd_run(run, std::cout, std::cerr);
        if (*c_render) return cmd_render(render, std::cout, std::cerr);
        if (*c_bench) return cmd_bench_throughput(bench, std::cout, std::cerr);
        if (*c_suite) return cmd_suite(suite, std::cout, std::cerr);
        if (*c_theory) return cmd_verify_theory(theory, std::cout, std::cerr);
        if (*c_export) return cmd_export_suites(export_dir, std::cout);
        return cmd_config(config_name, std::cout, std::cerr);
    }, std::cerr);
}
