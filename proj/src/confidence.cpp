#include "tbai/confidence.hpp"

#include <algorithm>
#include <cmath>

namespace tbai {

double stitched_beta(std::int64_t t, double delta, double sigma) {
    if (t < 1) throw std::invalid_argument("stitched_beta: t must be >= 1");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("stitched_beta: delta must be in (0,1)");
    if (!(sigma > 0.0)) throw std::invalid_argument("stitched_beta: sigma must be positive");

    const double td = static_cast<double>(t);
    const double arg = std::max(2.0 * td * sigma * sigma, std::exp(1.0));
    const double loglog = std::log(std::log(arg)); // 0 at the clamp, >= 0 beyond it
    const double num = sigma * sigma * loglog + 0.72 * std::log(5.2 / delta);
    return 1.7 * std::sqrt(num / td);
}

namespace {

// Length of the initial segment scanned linearly before trusting
// monotonicity. The boundary can rise just after the loglog clamp ends,
// but only for a handful of steps; 64 covers every (delta, sigma).
constexpr std::int64_t kHeadScan = 64;

constexpr std::int64_t kNoCap = std::int64_t{1} << 62;

} // namespace

std::int64_t first_time_satisfying(const std::function<bool(std::int64_t)>& pred,
                                   std::int64_t cap) {
    const std::int64_t head = std::min(kHeadScan, cap);
    for (std::int64_t t = 1; t <= head; ++t) {
        if (pred(t)) return t;
    }
    if (cap <= head) return -1;
    std::int64_t lo = head; // pred(lo) is false
    std::int64_t hi = 2 * head;
    while (hi < cap && !pred(hi)) {
        lo = hi;
        hi *= 2;
    }
    if (hi >= cap) {
        hi = cap;
        if (!pred(hi)) return -1;
    }
    while (lo + 1 < hi) {
        std::int64_t mid = lo + (hi - lo) / 2;
        if (pred(mid)) hi = mid; else lo = mid;
    }
    return hi;
}

std::int64_t invert_beta(double width, double delta, double sigma) {
    if (!(width > 0.0)) throw std::invalid_argument("invert_beta: width must be positive");
    std::int64_t t = first_time_satisfying(
        [&](std::int64_t u) { return stitched_beta(u, delta, sigma) <= width; }, kNoCap);
    if (t < 0) throw std::runtime_error("invert_beta: no satisfying t below 2^62");
    return t;
}

std::int64_t invert_beta_strict(double width, double delta, double sigma) {
    if (!(width > 0.0)) throw std::invalid_argument("invert_beta_strict: width must be positive");
    std::int64_t t = first_time_satisfying(
        [&](std::int64_t u) { return stitched_beta(u, delta, sigma) < width; }, kNoCap);
    if (t < 0) throw std::runtime_error("invert_beta_strict: no satisfying t below 2^62");
    return t;
}

ArmConfidenceState cs_update(const ArmConfidenceState& state, double sample,
                             const BoundaryParams& params) {
    if (!std::isfinite(sample)) throw std::invalid_argument("cs_update: sample must be finite");

    ArmConfidenceState next = state;
    next.pulls = state.pulls + 1;
    next.sum = state.sum + sample;

    const double mean = next.sum / static_cast<double>(next.pulls);
    const double half = stitched_beta(next.pulls, params.per_arm_delta(), params.sigma);
    next.ucb = ext_min(state.ucb, ExtReal(mean + half));
    next.lcb = ext_max(state.lcb, ExtReal(mean - half));
    if (next.ucb < next.lcb) {
        // Inconsistent evidence: the new interval misses the old one
        // entirely, which is exactly the miscoverage event the boundary
        // controls. Collapse to the old interval's point nearest the new
        // mean; lcb stays nondecreasing and ucb nonincreasing, and the run
        // carries on (and gets counted as a coverage violation).
        ExtReal point = ext_min(ext_max(ExtReal(mean), state.lcb), state.ucb);
        next.lcb = point;
        next.ucb = point;
    }
    return next;
}

} // namespace tbai
