#include "tbai/tlucb.hpp"

#include <stdexcept>

namespace tbai {

std::pair<int, int> select_candidates(std::span<const ExtInterval> target_cis) {
    const int n = static_cast<int>(target_cis.size());
    if (n < 2) throw std::invalid_argument("select_candidates: need at least two target arms");

    int b = 0;
    for (int a = 1; a < n; ++a) {
        if (target_cis[a].lo > target_cis[b].lo) b = a;
    }
    int c = -1;
    for (int a = 0; a < n; ++a) {
        if (a == b) continue;
        if (c < 0 || target_cis[a].hi > target_cis[c].hi) c = a;
    }
    return {b, c};
}

bool should_stop(std::span<const ExtInterval> target_cis, int b, int c, double epsilon) {
    if (b == c) throw std::invalid_argument("should_stop: B and C must differ");
    ExtReal lhs = ext_add(target_cis[b].lo, ExtReal(epsilon));
    return lhs >= target_cis[c].hi;
}

std::pair<int, int> select_sources(const TransferFunction& tf, int b, int c,
                                   std::span<const ExtInterval> source_cis) {
    auto argmax_length = [&](int target) {
        int best = 0;
        ExtReal best_len = uncertainty_length(tf, target, 0, source_cis[0]);
        for (int i = 1; i < tf.n_source(); ++i) {
            ExtReal len = uncertainty_length(tf, target, i, source_cis[i]);
            if (len > best_len) {
                best = i;
                best_len = len;
            }
        }
        return best;
    };
    return {argmax_length(b), argmax_length(c)};
}

RunResult run_tlucb(SourceSampler& sampler, const TransferFunction& tf, const TLucbConfig& cfg) {
    cfg.validate();
    const int n_source = tf.n_source();
    if (tf.n_target() < 2) throw std::invalid_argument("run_tlucb: need at least two target arms");

    BoundaryParams params(cfg.sigma, cfg.delta, n_source);
    std::vector<ArmConfidenceState> states(n_source);
    std::vector<ExtInterval> source_cis(n_source);

    for (int i = 0; i < n_source; ++i) {
        states[i] = cs_update(states[i], sampler.pull(i), params);
        source_cis[i] = states[i].interval();
    }

    RunResult result;
    result.per_arm_pulls.assign(n_source, 1);
    result.total_pulls = n_source;

    for (std::int64_t round = 1; round <= cfg.max_rounds; ++round) {
        std::vector<ExtInterval> tcis = target_bounds(tf, source_cis);
        auto [b, c] = select_candidates(tcis);
        if (should_stop(tcis, b, c, cfg.epsilon)) {
            result.selected = b;
            result.source_intervals = source_cis;
            return result;
        }
        auto [i, j] = select_sources(tf, b, c, source_cis);
        states[i] = cs_update(states[i], sampler.pull(i), params);
        source_cis[i] = states[i].interval();
        states[j] = cs_update(states[j], sampler.pull(j), params);
        source_cis[j] = states[j].interval();
        result.per_arm_pulls[i] += 1;
        result.per_arm_pulls[j] += 1;
        result.total_pulls += 2;
        result.rounds = round;
    }

    // Cap hit: report the current leader but flag the run. This is the
    // signature of a mis-specified instance, e.g. epsilon = 0 with a
    // non-unique optimum.
    std::vector<ExtInterval> tcis = target_bounds(tf, source_cis);
    auto [b, c] = select_candidates(tcis);
    (void)c;
    result.selected = b;
    result.stopped_by_cap = true;
    result.source_intervals = source_cis;
    return result;
}

RunResult run_tlucb(const BanditEnv& env, const TransferFunction& tf, const TLucbConfig& cfg) {
    if (env.n_arms() != tf.n_source()) {
        throw std::invalid_argument("run_tlucb: env arm count does not match transfer");
    }
    EnvSampler sampler(env, SplitMix64(cfg.seed));
    return run_tlucb(sampler, tf, cfg);
}

} // namespace tbai
