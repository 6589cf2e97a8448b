#pragma once

// Additive-transfer LUCB. Per round: pick the leader B (largest target LCB)
// and challenger C (largest UCB among the rest), stop if the leader's LCB
// plus epsilon clears the challenger's UCB, otherwise pull the source arm
// contributing the most uncertainty to each of B and C.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "tbai/confidence.hpp"
#include "tbai/env.hpp"
#include "tbai/extreal.hpp"
#include "tbai/transfer.hpp"

namespace tbai {

struct TLucbConfig {
    double delta = 0.1;
    double epsilon = 0.0;
    double sigma = 1.0;
    std::int64_t max_rounds = 10'000'000; // cap against degenerate instances
    std::uint64_t seed = 0;

    void validate() const {
        if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must be in (0,1)");
        if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");
        if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
        if (max_rounds < 1) throw std::invalid_argument("max_rounds must be >= 1");
    }
};

struct RunResult {
    std::int64_t rounds = 0;          // sampling iterations after the init pulls
    std::int64_t total_pulls = 0;     // n_source + 2 * rounds when not capped
    std::vector<std::int64_t> per_arm_pulls;
    int selected = -1;                // target index
    bool stopped_by_cap = false;
    // Final per-source intervals, for harness-side good-event checks. The
    // running intersection only shrinks, so the true mean ever escaping its
    // sequence is equivalent to it lying outside the final interval.
    std::vector<ExtInterval> source_intervals;

    friend bool operator==(const RunResult&, const RunResult&) = default;
};

/// Leader/challenger selection. Ties break to the lowest index.
std::pair<int, int> select_candidates(std::span<const ExtInterval> target_cis);

/// LCB(B) + epsilon >= UCB(C) under extended-real arithmetic
/// (-inf + epsilon stays -inf).
bool should_stop(std::span<const ExtInterval> target_cis, int b, int c, double epsilon);

/// Source arms with the largest uncertainty contribution to B and C.
/// +inf lengths beat any finite length; ties break to the lowest index;
/// the two picks may coincide (that arm is then pulled twice this round).
std::pair<int, int> select_sources(const TransferFunction& tf, int b, int c,
                                   std::span<const ExtInterval> source_cis);

/// Full run against a sampling oracle. Samples every source arm once, then
/// loops select / stop-check / pull until the stopping rule fires or
/// max_rounds is hit.
RunResult run_tlucb(SourceSampler& sampler, const TransferFunction& tf, const TLucbConfig& cfg);

/// Convenience entry: builds the per-run stream from cfg.seed. The
/// algorithm itself only ever sees the sampler.
RunResult run_tlucb(const BanditEnv& env, const TransferFunction& tf, const TLucbConfig& cfg);

} // namespace tbai
