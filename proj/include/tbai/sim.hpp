#pragma once

// Seeded Monte Carlo harness. Trials are independent: trial k draws from a
// stream keyed by (base_seed, k), so the batch result is a pure function of
// the inputs and identical at any parallelism degree. The OpenMP kernel and
// the serial reference fill the same per-trial table; aggregation always
// runs serially in trial-index order.

#include <cstdint>
#include <vector>

#include "tbai/complexity.hpp"
#include "tbai/env.hpp"
#include "tbai/microlucb.hpp"
#include "tbai/tlucb.hpp"

namespace tbai {

enum class Algorithm { TLucb, MicroLucb };

const char* algorithm_name(Algorithm algorithm);

/// A fully specified experiment: environment (true means live here),
/// transfer, and the algorithm parameters shared by both algorithms.
struct Instance {
    BanditEnv env;
    TransferFunction tf;
    double delta = 0.1;
    double epsilon = 0.0;
    double sigma = 1.0;
    std::int64_t max_rounds = 10'000'000;
    std::vector<ScaleShift> scale_shift; // Micro-LUCB only
};

struct TrialRecord {
    std::int64_t trial_index = 0;
    std::uint64_t seed = 0;
    int selected = -1; // target index, -1 when the sampling rule died
    bool correct = false;
    std::int64_t rounds = 0;
    std::int64_t total_pulls = 0;
    std::vector<std::int64_t> per_arm_pulls;
    bool good_event_held = true;
    bool bound_held = true;
    bool capped = false;
    bool empty_dtilde = false;

    friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

struct TrialBatchResult {
    std::int64_t n_trials = 0;
    std::int64_t error_count = 0;            // selected arm not epsilon-optimal
    std::int64_t good_event_violations = 0;  // a true source mean escaped its sequence
    std::int64_t bound_violation_count = 0;  // total pulls exceeded theorem2_total + n
    std::int64_t empty_dtilde_count = 0;
    std::int64_t capped_count = 0;
    double mean_total_pulls = 0.0;
    double median_total_pulls = 0.0;
    double p95_total_pulls = 0.0;
    double mean_rounds = 0.0;
    std::vector<double> per_arm_pull_means;

    friend bool operator==(const TrialBatchResult&, const TrialBatchResult&) = default;
};

struct BatchOutput {
    TrialBatchResult summary;
    std::vector<TrialRecord> trials;
    ComplexityReport complexity;
};

/// Runs n_trials independent trials. parallelism <= 1 uses the serial
/// reference loop; higher values run the OpenMP kernel with that many
/// threads. Output is bit-identical either way. A trial whose sampling rule
/// dies (Micro-LUCB off its applicable class) is a counted outcome, not a
/// batch failure.
BatchOutput run_batch(const Instance& instance, Algorithm algorithm, std::int64_t n_trials,
                      std::uint64_t base_seed, int parallelism);

/// Correctness per trial: nu_selected + epsilon >= max nu, with a 1e-12
/// absolute allowance for float accumulation in subset sums; ties count any
/// maximizer as correct.
bool selection_is_correct(const TransferFunction& tf, std::span<const double> mu, int selected,
                          double epsilon);

} // namespace tbai
