#include "tbai/microlucb.hpp"

namespace tbai {

namespace {

// Box image of row `target` over the source box [u, v]: additive sum of the
// per-component interval images.
ExtInterval row_box_image(const TransferFunction& tf, int target,
                          const std::vector<double>& u, const std::vector<double>& v) {
    double lo_sum = 0.0, hi_sum = 0.0;
    bool lo_neg_inf = false, hi_pos_inf = false, hi_neg_inf = false;
    for (int i = 0; i < tf.n_source(); ++i) {
        ExtInterval img = tf.component(target, i).image(u[i], v[i]);
        if (img.lo.is_neg_inf()) lo_neg_inf = true;
        else lo_sum += img.lo.raw();
        if (img.hi.is_pos_inf()) hi_pos_inf = true;
        else if (img.hi.is_neg_inf()) hi_neg_inf = true;
        else hi_sum += img.hi.raw();
    }
    ExtReal lo = lo_neg_inf ? ExtReal::neg_infinity() : ExtReal(lo_sum);
    ExtReal hi = hi_pos_inf ? ExtReal::infinity()
                            : (hi_neg_inf ? ExtReal::neg_infinity() : ExtReal(hi_sum));
    return ExtInterval(lo, hi);
}

} // namespace

std::set<int> dtilde_set(const TransferFunction& tf, int target,
                         const std::vector<double>& lcb_vec, const std::vector<double>& ucb_vec,
                         const std::vector<ScaleShift>& scale_shift) {
    if (lcb_vec.size() != static_cast<std::size_t>(tf.n_source()) ||
        ucb_vec.size() != static_cast<std::size_t>(tf.n_source())) {
        throw std::invalid_argument("dtilde_set: bound vector length mismatch");
    }
    for (int i = 0; i < tf.n_source(); ++i) {
        if (!(lcb_vec[i] <= ucb_vec[i])) throw std::invalid_argument("dtilde_set: lcb > ucb");
        if (!std::isfinite(lcb_vec[i]) || !std::isfinite(ucb_vec[i])) {
            throw std::invalid_argument("dtilde_set: bounds must be finite");
        }
    }

    ExtInterval image = row_box_image(tf, target, lcb_vec, ucb_vec);
    std::set<int> eligible;
    for (int i = 0; i < tf.n_source(); ++i) {
        const auto& s = scale_shift[static_cast<std::size_t>(i)];
        ExtInterval scaled(s.a * lcb_vec[i] + s.b, s.a * ucb_vec[i] + s.b);
        if (scaled.contains(image)) eligible.insert(i);
    }
    return eligible;
}

bool check_linear_applicability(const std::vector<std::vector<double>>& matrix) {
    for (const auto& row : matrix) {
        int nonzero = 0;
        for (double v : row) {
            if (v < 0.0) throw std::invalid_argument("check_linear_applicability: negative entry");
            if (v != 0.0) ++nonzero;
        }
        if (nonzero > 1) return false;
    }
    return true;
}

RunResult run_micro_lucb(SourceSampler& sampler, const TransferFunction& tf,
                         const MicroLucbConfig& cfg) {
    const int n_source = tf.n_source();
    cfg.validate(n_source);
    if (tf.n_target() < 2) throw std::invalid_argument("run_micro_lucb: need at least two target arms");

    BoundaryParams params(cfg.sigma, cfg.delta, n_source);
    std::vector<ArmConfidenceState> states(n_source);
    std::vector<ExtInterval> source_cis(n_source);
    std::vector<double> u(n_source), v(n_source);

    for (int i = 0; i < n_source; ++i) {
        states[i] = cs_update(states[i], sampler.pull(i), params);
        source_cis[i] = states[i].interval();
    }

    RunResult result;
    result.per_arm_pulls.assign(n_source, 1);
    result.total_pulls = n_source;

    auto pick_lowest = [](const std::set<int>& s) { return *s.begin(); };

    for (std::int64_t round = 1; round <= cfg.max_rounds; ++round) {
        std::vector<ExtInterval> tcis = target_bounds(tf, source_cis);
        auto [b, c] = select_candidates(tcis);

        for (int i = 0; i < n_source; ++i) {
            u[i] = source_cis[i].lo.finite();
            v[i] = source_cis[i].hi.finite();
        }
        auto abort_with = [&](int target) {
            RunResult partial = result;
            partial.source_intervals = source_cis;
            return EmptyDtildeError(round, target, std::move(partial));
        };
        std::set<int> db = dtilde_set(tf, b, u, v, cfg.scale_shift);
        if (db.empty()) throw abort_with(b);
        std::set<int> dc = dtilde_set(tf, c, u, v, cfg.scale_shift);
        if (dc.empty()) throw abort_with(c);
        int i = pick_lowest(db);
        int j = pick_lowest(dc);

        states[i] = cs_update(states[i], sampler.pull(i), params);
        source_cis[i] = states[i].interval();
        states[j] = cs_update(states[j], sampler.pull(j), params);
        source_cis[j] = states[j].interval();
        result.per_arm_pulls[i] += 1;
        result.per_arm_pulls[j] += 1;
        result.total_pulls += 2;
        result.rounds = round;

        // Stop-check runs on the post-update bounds, one round later than
        // T-LUCB's pre-sample check.
        std::vector<ExtInterval> updated = target_bounds(tf, source_cis);
        if (should_stop(updated, b, c, cfg.epsilon)) {
            result.selected = b;
            result.source_intervals = source_cis;
            return result;
        }
    }

    std::vector<ExtInterval> tcis = target_bounds(tf, source_cis);
    auto [b, c] = select_candidates(tcis);
    (void)c;
    result.selected = b;
    result.stopped_by_cap = true;
    result.source_intervals = source_cis;
    return result;
}

RunResult run_micro_lucb(const BanditEnv& env, const TransferFunction& tf,
                         const MicroLucbConfig& cfg) {
    if (env.n_arms() != tf.n_source()) {
        throw std::invalid_argument("run_micro_lucb: env arm count does not match transfer");
    }
    EnvSampler sampler(env, SplitMix64(cfg.seed));
    return run_micro_lucb(sampler, tf, cfg);
}

} // namespace tbai
