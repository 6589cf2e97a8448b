#include "tbai/sim.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tbai {

const char* algorithm_name(Algorithm algorithm) {
    return algorithm == Algorithm::TLucb ? "tlucb" : "microlucb";
}

bool selection_is_correct(const TransferFunction& tf, std::span<const double> mu, int selected,
                          double epsilon) {
    if (selected < 0 || selected >= tf.n_target()) return false;
    std::vector<ExtReal> nu = tf.true_target_means(mu);
    ExtReal best = nu[0];
    for (ExtReal v : nu) best = ext_max(best, v);
    ExtReal lhs = ext_add(nu[static_cast<std::size_t>(selected)], ExtReal(epsilon + 1e-12));
    return lhs >= best;
}

namespace {

struct BatchContext {
    const Instance& instance;
    Algorithm algorithm;
    std::uint64_t base_seed;
    std::vector<double> mu;
    TauValue budget; // theorem2_total, for per-trial bound checks
};

bool good_event_held(const std::vector<ExtInterval>& intervals, std::span<const double> mu) {
    // Intervals only shrink, so a mean that ever escaped is outside the
    // final interval too.
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        if (!intervals[i].contains(ExtReal(mu[i]))) return false;
    }
    return true;
}

TrialRecord run_one_trial(const BatchContext& ctx, std::int64_t k) {
    TrialRecord rec;
    rec.trial_index = k;
    rec.seed = trial_seed(ctx.base_seed, static_cast<std::uint64_t>(k));

    EnvSampler sampler(ctx.instance.env,
                       make_trial_stream(ctx.base_seed, static_cast<std::uint64_t>(k)));

    RunResult run;
    if (ctx.algorithm == Algorithm::TLucb) {
        TLucbConfig cfg;
        cfg.delta = ctx.instance.delta;
        cfg.epsilon = ctx.instance.epsilon;
        cfg.sigma = ctx.instance.sigma;
        cfg.max_rounds = ctx.instance.max_rounds;
        run = run_tlucb(sampler, ctx.instance.tf, cfg);
    } else {
        MicroLucbConfig cfg;
        cfg.delta = ctx.instance.delta;
        cfg.epsilon = ctx.instance.epsilon;
        cfg.sigma = ctx.instance.sigma;
        cfg.max_rounds = ctx.instance.max_rounds;
        cfg.scale_shift = ctx.instance.scale_shift;
        try {
            run = run_micro_lucb(sampler, ctx.instance.tf, cfg);
        } catch (const EmptyDtildeError& e) {
            run = e.partial();
            rec.empty_dtilde = true;
        }
    }

    rec.selected = rec.empty_dtilde ? -1 : run.selected;
    rec.rounds = run.rounds;
    rec.total_pulls = run.total_pulls;
    rec.per_arm_pulls = run.per_arm_pulls;
    rec.capped = run.stopped_by_cap;
    rec.correct = !rec.empty_dtilde &&
                  selection_is_correct(ctx.instance.tf, ctx.mu, run.selected, ctx.instance.epsilon);
    rec.good_event_held = good_event_held(run.source_intervals, ctx.mu);
    rec.bound_held = ctx.budget.unbounded ||
                     run.total_pulls <= ctx.budget.t + ctx.instance.tf.n_source();
    return rec;
}

// Serial reference implementation; the OpenMP kernel below must match it
// record for record.
void run_trials_serial(const BatchContext& ctx, std::vector<TrialRecord>& records) {
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(records.size()); ++k) {
        records[static_cast<std::size_t>(k)] = run_one_trial(ctx, k);
    }
}

void run_trials_parallel(const BatchContext& ctx, std::vector<TrialRecord>& records,
                         int threads) {
#ifdef _OPENMP
    const std::int64_t n = static_cast<std::int64_t>(records.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::int64_t k = 0; k < n; ++k) {
        records[static_cast<std::size_t>(k)] = run_one_trial(ctx, k);
    }
#else
    (void)threads;
    run_trials_serial(ctx, records);
#endif
}

double mean_of(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

} // namespace

BatchOutput run_batch(const Instance& instance, Algorithm algorithm, std::int64_t n_trials,
                      std::uint64_t base_seed, int parallelism) {
    if (n_trials < 1) throw std::invalid_argument("run_batch: n_trials must be >= 1");
    if (parallelism < 1) parallelism = 1;
    instance.env.check_sigma(instance.sigma);
    if (instance.env.n_arms() != instance.tf.n_source()) {
        throw std::invalid_argument("run_batch: env arm count does not match transfer");
    }

    BatchOutput out{TrialBatchResult{}, {}, {}};
    out.complexity = theorem2_bound(instance.tf, instance.env.true_means(), instance.epsilon,
                                    instance.delta, instance.sigma, DeltaAllocation::PerArm);

    BatchContext ctx{instance, algorithm, base_seed, instance.env.true_means(),
                     out.complexity.theorem2_total};

    out.trials.resize(static_cast<std::size_t>(n_trials));
    if (parallelism <= 1) {
        run_trials_serial(ctx, out.trials);
    } else {
        run_trials_parallel(ctx, out.trials, parallelism);
    }

    // Aggregate serially in trial-index order.
    TrialBatchResult& sum = out.summary;
    sum.n_trials = n_trials;
    const int n_source = instance.tf.n_source();
    sum.per_arm_pull_means.assign(static_cast<std::size_t>(n_source), 0.0);
    std::vector<double> pulls;
    pulls.reserve(out.trials.size());
    double rounds_total = 0.0;
    for (const TrialRecord& rec : out.trials) {
        if (rec.empty_dtilde) sum.empty_dtilde_count += 1;
        else if (!rec.correct) sum.error_count += 1;
        if (!rec.good_event_held) sum.good_event_violations += 1;
        if (!rec.bound_held) sum.bound_violation_count += 1;
        if (rec.capped) sum.capped_count += 1;
        pulls.push_back(static_cast<double>(rec.total_pulls));
        rounds_total += static_cast<double>(rec.rounds);
        for (int i = 0; i < n_source; ++i) {
            sum.per_arm_pull_means[static_cast<std::size_t>(i)] +=
                static_cast<double>(rec.per_arm_pulls[static_cast<std::size_t>(i)]);
        }
    }
    sum.mean_total_pulls = mean_of(pulls);
    sum.mean_rounds = rounds_total / static_cast<double>(n_trials);
    for (double& m : sum.per_arm_pull_means) m /= static_cast<double>(n_trials);

    std::vector<double> sorted = pulls;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    sum.median_total_pulls = (n % 2 == 1) ? sorted[n / 2]
                                          : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    std::size_t p95_index = static_cast<std::size_t>(
        std::ceil(0.95 * static_cast<double>(n))) - 1;
    sum.p95_total_pulls = sorted[std::min(p95_index, n - 1)];
    return out;
}

} // namespace tbai
