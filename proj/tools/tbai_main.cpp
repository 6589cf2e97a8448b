// tbai: transfer best-arm identification experiments.
//
//   tbai run     --config exp.cfg [--seed-override N] [--trials N]
//                [--parallelism N] [--out DIR]
//   tbai bounds  --config exp.cfg
//   tbai compare --config exp.cfg [...]
//
// Exit codes: 0 completed (statistics are the product, even when the error
// count is nonzero), 2 config validation failure, 3 runtime fault.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "tbai/config.hpp"
#include "tbai/output.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::optional<std::uint64_t> seed_override;
    std::optional<std::int64_t> trials_override;
    std::optional<int> parallelism_override;
    std::optional<std::string> out_override;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool with_overrides) {
    cmd->add_option("--config", flags.config_path, "experiment config file")->required();
    if (with_overrides) {
        cmd->add_option("--seed-override", flags.seed_override, "replace base_seed");
        cmd->add_option("--trials", flags.trials_override, "replace n_trials");
        cmd->add_option("--parallelism", flags.parallelism_override, "replace parallelism");
        cmd->add_option("--out", flags.out_override, "replace output directory");
    }
}

tbai::ExperimentConfig load_config(const CommonFlags& flags) {
    tbai::ExperimentConfig cfg = tbai::parse_config_file(flags.config_path);
    if (flags.seed_override) cfg.base_seed = *flags.seed_override;
    if (flags.trials_override) {
        if (*flags.trials_override < 1) throw tbai::ConfigError({"--trials: must be >= 1"});
        cfg.n_trials = *flags.trials_override;
    }
    if (flags.parallelism_override) {
        if (*flags.parallelism_override < 1) throw tbai::ConfigError({"--parallelism: must be >= 1"});
        cfg.parallelism = *flags.parallelism_override;
    }
    if (flags.out_override) cfg.output.dir = *flags.out_override;
    if (cfg.output.dir.empty()) {
        if (const char* env_dir = std::getenv("TBAI_OUT_DIR")) cfg.output.dir = env_dir;
        else cfg.output.dir = ".";
    }
    return cfg;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

int cmd_run(const CommonFlags& flags) {
    tbai::ExperimentConfig cfg = load_config(flags);
    tbai::Instance instance = cfg.make_instance();
    tbai::BatchOutput batch =
        tbai::run_batch(instance, cfg.algorithm, cfg.n_trials, cfg.base_seed, cfg.parallelism);
    std::vector<double> mu = instance.env.true_means();
    batch.complexity.closed_form = tbai::corollary_bounds(cfg.preset, mu, cfg.epsilon);

    std::filesystem::path dir = cfg.output.dir;
    write_file(dir / cfg.output.summary_name, tbai::summary_json(cfg, batch));
    write_file(dir / cfg.output.trials_name, tbai::trials_csv(batch));

    std::cout << tbai::summary_json(cfg, batch);
    return 0;
}

int cmd_bounds(const CommonFlags& flags) {
    tbai::ExperimentConfig cfg = load_config(flags);
    tbai::Instance instance = cfg.make_instance();
    std::vector<double> mu = instance.env.true_means();
    tbai::ComplexityReport report = tbai::theorem2_bound(
        instance.tf, mu, cfg.epsilon, cfg.delta, cfg.sigma, tbai::DeltaAllocation::PerArm);
    report.closed_form = tbai::corollary_bounds(cfg.preset, mu, cfg.epsilon);
    std::cout << tbai::bounds_json(cfg, report);
    return 0;
}

int cmd_compare(const CommonFlags& flags) {
    tbai::ExperimentConfig cfg = load_config(flags);
    tbai::Instance instance = cfg.make_instance();
    if (instance.scale_shift.empty()) {
        // Identity scale/shift is the natural default for the head-to-head.
        instance.scale_shift.assign(static_cast<std::size_t>(instance.env.n_arms()),
                                    tbai::ScaleShift{1.0, 0.0});
    }
    tbai::BatchOutput tl = tbai::run_batch(instance, tbai::Algorithm::TLucb, cfg.n_trials,
                                           cfg.base_seed, cfg.parallelism);
    tbai::BatchOutput ml = tbai::run_batch(instance, tbai::Algorithm::MicroLucb, cfg.n_trials,
                                           cfg.base_seed, cfg.parallelism);
    std::vector<double> mu = instance.env.true_means();
    tl.complexity.closed_form = tbai::corollary_bounds(cfg.preset, mu, cfg.epsilon);

    std::filesystem::path dir = cfg.output.dir;
    write_file(dir / "compare.json", tbai::compare_json(cfg, tl, ml));
    std::cout << tbai::compare_table(tl, ml);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"transfer best-arm identification experiments"};
    app.require_subcommand(1);

    CommonFlags run_flags, bounds_flags, compare_flags;
    CLI::App* run = app.add_subcommand("run", "run a Monte Carlo batch and write summary + CSV");
    add_common(run, run_flags, true);
    CLI::App* bounds = app.add_subcommand("bounds", "print the sample-complexity report");
    add_common(bounds, bounds_flags, false);
    CLI::App* compare = app.add_subcommand("compare", "run both algorithms on the same seeds");
    add_common(compare, compare_flags, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(run_flags);
        if (bounds->parsed()) return cmd_bounds(bounds_flags);
        if (compare->parsed()) return cmd_compare(compare_flags);
    } catch (const tbai::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "runtime fault: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
