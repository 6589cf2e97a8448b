#include <doctest.h>

#include <cmath>

#include "tbai/presets.hpp"
#include "tbai/sim.hpp"

using namespace tbai;

namespace {
Instance bai_instance(std::initializer_list<double> means, double delta = 0.1,
                      double epsilon = 0.0) {
    BanditEnv env;
    for (double m : means) env.arms.push_back(DistributionSpec::gaussian(m, 1.0));
    int n = env.n_arms();
    return Instance{std::move(env), make_bai(n), delta, epsilon, 1.0, 10'000'000, {}};
}

double binomial_slack(double p, std::int64_t n) {
    return 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}
} // namespace

TEST_CASE("batches are pure functions of their inputs") {
    Instance instance = bai_instance({1.0, 0.0});
    BatchOutput a = run_batch(instance, Algorithm::TLucb, 50, 2024, 1);
    BatchOutput b = run_batch(instance, Algorithm::TLucb, 50, 2024, 1);
    CHECK(a.summary == b.summary);
    CHECK(a.trials == b.trials);

    BatchOutput c = run_batch(instance, Algorithm::TLucb, 50, 2025, 1);
    CHECK(a.summary.mean_total_pulls != doctest::Approx(c.summary.mean_total_pulls).epsilon(1e-15));
}

TEST_CASE("parallel batches match the serial reference bit for bit") {
    Instance instance = bai_instance({1.0, 0.3, -0.2});
    BatchOutput serial = run_batch(instance, Algorithm::TLucb, 64, 99, 1);
    for (int threads : {2, 4, 8}) {
        BatchOutput parallel = run_batch(instance, Algorithm::TLucb, 64, 99, threads);
        CHECK(parallel.summary == serial.summary);
        CHECK(parallel.trials == serial.trials);
    }
}

TEST_CASE("error and coverage rates sit inside the binomial slack") {
    Instance instance = bai_instance({1.0, 0.0});
    const std::int64_t n = 200;
    BatchOutput batch = run_batch(instance, Algorithm::TLucb, n, 31415, 4);
    double slack = binomial_slack(0.1, n);
    CHECK(static_cast<double>(batch.summary.error_count) / n <= 0.1 + slack);
    CHECK(static_cast<double>(batch.summary.good_event_violations) / n <= 0.1 + slack);
    CHECK(batch.summary.capped_count == 0);
    CHECK(batch.summary.empty_dtilde_count == 0);
}

TEST_CASE("the realized pulls respect the theoretical budget") {
    Instance instance = bai_instance({1.0, 0.0});
    BatchOutput batch = run_batch(instance, Algorithm::TLucb, 100, 7, 4);
    CHECK(!batch.complexity.theorem2_total.unbounded);
    CHECK(batch.summary.bound_violation_count == 0);
    for (const TrialRecord& rec : batch.trials) {
        CHECK(rec.total_pulls <=
              batch.complexity.theorem2_total.t + instance.tf.n_source());
        // Per-source form on good-event trials: each arm stays within its
        // own budget plus the init pull.
        if (rec.good_event_held) {
            for (std::size_t i = 0; i < rec.per_arm_pulls.size(); ++i) {
                CHECK(rec.per_arm_pulls[i] <= batch.complexity.tau_per_source[i].t + 1);
            }
        }
    }
}

TEST_CASE("per-trial records are internally consistent") {
    Instance instance = bai_instance({0.9, 0.2, -0.1});
    BatchOutput batch = run_batch(instance, Algorithm::TLucb, 40, 555, 1);
    std::uint64_t last_seed = 0;
    for (std::size_t k = 0; k < batch.trials.size(); ++k) {
        const TrialRecord& rec = batch.trials[k];
        CHECK(rec.trial_index == static_cast<std::int64_t>(k));
        CHECK(rec.seed == trial_seed(555, k));
        if (k) CHECK(rec.seed != last_seed);
        last_seed = rec.seed;
        std::int64_t total = 0;
        for (auto n : rec.per_arm_pulls) total += n;
        CHECK(total == rec.total_pulls);
        CHECK(rec.total_pulls == 3 + 2 * rec.rounds);
    }
}

TEST_CASE("empty eligibility sets are counted, not fatal") {
    Instance instance = bai_instance({1.0, 0.0});
    instance.tf = make_linear({{1.0, 1.0}, {0.0, 1.0}});
    instance.scale_shift = {{1.0, 0.0}, {1.0, 0.0}};
    BatchOutput batch = run_batch(instance, Algorithm::MicroLucb, 30, 11, 2);
    CHECK(batch.summary.empty_dtilde_count == 30);
    CHECK(batch.summary.error_count == 0); // separate category
    for (const TrialRecord& rec : batch.trials) {
        CHECK(rec.empty_dtilde);
        CHECK(rec.selected == -1);
        CHECK(!rec.correct);
    }
}

TEST_CASE("micro-lucb batches mirror the single-run api") {
    Instance instance = bai_instance({1.0, 0.0});
    instance.scale_shift = {{1.0, 0.0}, {1.0, 0.0}};
    BatchOutput batch = run_batch(instance, Algorithm::MicroLucb, 60, 17, 4);
    double slack = binomial_slack(0.1, 60);
    CHECK(static_cast<double>(batch.summary.error_count) / 60.0 <= 0.1 + slack);
    CHECK(batch.summary.empty_dtilde_count == 0);
}

TEST_CASE("correctness accepts any maximizer under ties") {
    TransferFunction tf = make_bai(2);
    std::vector<double> mu = {0.5, 0.5};
    CHECK(selection_is_correct(tf, mu, 0, 0.0));
    CHECK(selection_is_correct(tf, mu, 1, 0.0));
    std::vector<double> gap = {0.9, 0.1};
    CHECK(selection_is_correct(tf, gap, 0, 0.0));
    CHECK(!selection_is_correct(tf, gap, 1, 0.0));
    CHECK(selection_is_correct(tf, gap, 1, 0.8)); // epsilon covers the gap exactly
    CHECK(!selection_is_correct(tf, gap, -1, 10.0));
}

TEST_CASE("sub-gaussian scale violations are rejected") {
    Instance instance = bai_instance({1.0, 0.0});
    instance.sigma = 0.5; // gaussian sd 1 exceeds it
    CHECK_THROWS_AS(run_batch(instance, Algorithm::TLucb, 5, 1, 1), std::invalid_argument);
}

TEST_CASE("summary statistics definitions") {
    Instance instance = bai_instance({1.5, 0.0});
    BatchOutput batch = run_batch(instance, Algorithm::TLucb, 11, 23, 1);
    std::vector<std::int64_t> pulls;
    for (const auto& rec : batch.trials) pulls.push_back(rec.total_pulls);
    std::sort(pulls.begin(), pulls.end());
    CHECK(batch.summary.median_total_pulls == static_cast<double>(pulls[5]));
    CHECK(batch.summary.p95_total_pulls ==
          static_cast<double>(pulls[static_cast<std::size_t>(std::ceil(0.95 * 11)) - 1]));
    double mean = 0.0;
    for (auto p : pulls) mean += static_cast<double>(p);
    CHECK(batch.summary.mean_total_pulls == doctest::Approx(mean / 11.0).epsilon(1e-15));
}
