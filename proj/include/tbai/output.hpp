#pragma once

// Deterministic result serialization. Floats print with 17 significant
// digits and keys in a fixed order, so identical runs produce byte-identical
// files. No timestamps, no environment echoes.

#include <string>

#include "tbai/config.hpp"
#include "tbai/sim.hpp"

namespace tbai {

std::string format_g17(double v);

/// Batch summary plus the complexity report, side by side.
std::string summary_json(const ExperimentConfig& config, const BatchOutput& batch);

/// Fixed columns: trial_index, seed, selected (1-based, 0 = none), correct,
/// rounds, total_pulls, pulls_1..pulls_n, good_event_held, bound_held.
std::string trials_csv(const BatchOutput& batch);

/// Complexity report alone (the bounds subcommand).
std::string bounds_json(const ExperimentConfig& config, const ComplexityReport& report);

/// Side-by-side table for the compare subcommand, one JSON row per
/// algorithm, plus a human-readable text table.
std::string compare_json(const ExperimentConfig& config, const BatchOutput& tlucb,
                         const BatchOutput& micro);
std::string compare_table(const BatchOutput& tlucb, const BatchOutput& micro);

} // namespace tbai
