#pragma once

// Experiment configs: a small sectioned key/value format, diffable and
// stable under round-trips. Grammar:
//
//   # comment to end of line
//   [section]          sections: experiment, instance, source, microlucb, output
//   key = value        repeated keys allowed where noted (arm, row, component)
//
// Extended reals serialize as "inf" / "-inf" / decimal literals. Parsing
// validates every module precondition up front and reports all violations
// together as "section.key: constraint".

#include <string>
#include <vector>

#include "tbai/sim.hpp"

namespace tbai {

struct OutputSpec {
    std::string dir;                         // empty: env default, then "."
    std::string summary_name = "summary.json";
    std::string trials_name = "trials.csv";
};

struct ExperimentConfig {
    Algorithm algorithm = Algorithm::TLucb;
    double delta = 0.1;
    double epsilon = 0.0;
    double sigma = 1.0;
    std::int64_t n_trials = 100;
    std::uint64_t base_seed = 0;
    std::int64_t max_rounds = 10'000'000;
    int parallelism = 1;
    PresetDescription preset;
    BanditEnv env;
    std::vector<ScaleShift> scale_shift;
    OutputSpec output;

    Instance make_instance() const;
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const { return violations_; }

private:
    std::vector<std::string> violations_;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

/// Canonical text form; parse(serialize(cfg)) reproduces cfg.
std::string serialize_config(const ExperimentConfig& config);

} // namespace tbai
