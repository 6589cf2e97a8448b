#pragma once

// Modified Micro-LUCB baseline. Differs from T-LUCB in its sampling rule:
// a source arm is eligible for target a only when the target's interval,
// computed as the box image of the transfer component sums, fits inside a
// scaled-and-shifted copy of that source's interval. On transfers that are
// not diagonal-like this eligibility set empties out and the sampling rule
// is undefined, which the run surfaces as EmptyDtildeError.

#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "tbai/tlucb.hpp"

namespace tbai {

struct ScaleShift {
    double a = 1.0; // must be positive
    double b = 0.0;
};

struct MicroLucbConfig {
    double delta = 0.1;
    double epsilon = 0.0;
    double sigma = 1.0;
    std::int64_t max_rounds = 10'000'000;
    std::uint64_t seed = 0;
    std::vector<ScaleShift> scale_shift; // one per source arm

    void validate(int n_source) const {
        if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must be in (0,1)");
        if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");
        if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
        if (max_rounds < 1) throw std::invalid_argument("max_rounds must be >= 1");
        if (scale_shift.size() != static_cast<std::size_t>(n_source)) {
            throw std::invalid_argument("scale_shift: need one (a,b) pair per source arm");
        }
        for (const auto& s : scale_shift) {
            if (!(s.a > 0.0)) throw std::invalid_argument("scale_shift: a must be positive");
        }
    }
};

class EmptyDtildeError : public std::runtime_error {
public:
    EmptyDtildeError(std::int64_t round, int target, RunResult partial)
        : std::runtime_error("Micro-LUCB sampling rule undefined: empty eligibility set at round " +
                             std::to_string(round) + " for target " + std::to_string(target + 1)),
          round_(round), target_(target), partial_(std::move(partial)) {}

    std::int64_t round() const { return round_; }
    int target() const { return target_; }
    /// Pull counts and intervals accumulated before the rule died.
    const RunResult& partial() const { return partial_; }

private:
    std::int64_t round_;
    int target_;
    RunResult partial_;
};

/// Source arms i whose scaled-shifted interval [a_i u_i + b_i, a_i v_i + b_i]
/// contains the box image of target a's row over the box [u, v]. May be
/// empty; taking any element is valid, callers here take the lowest.
std::set<int> dtilde_set(const TransferFunction& tf, int target,
                         const std::vector<double>& lcb_vec, const std::vector<double>& ucb_vec,
                         const std::vector<ScaleShift>& scale_shift);

/// True iff every row of the nonnegative matrix has at most one nonzero
/// entry. False predicts that the eligibility set empties at some reachable
/// state. Negative entries are rejected.
bool check_linear_applicability(const std::vector<std::vector<double>>& matrix);

RunResult run_micro_lucb(SourceSampler& sampler, const TransferFunction& tf,
                         const MicroLucbConfig& cfg);
RunResult run_micro_lucb(const BanditEnv& env, const TransferFunction& tf,
                         const MicroLucbConfig& cfg);

} // namespace tbai
