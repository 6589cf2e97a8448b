#pragma once

// Anytime-valid confidence sequences for sub-Gaussian source arms.
//
// The half-width is the polynomial stitched boundary
//
//   beta(t, delta) = 1.7 * sqrt((sigma^2 * loglog(max(2 t sigma^2, e))
//                                + 0.72 * log(5.2 / delta)) / t),
//
// clamped so the iterated logarithm is defined and nonnegative for every
// t >= 1 (the clamp only enlarges the boundary, so time-uniform coverage
// is preserved). Per-arm intervals are running intersections: the lower
// bound only ever rises and the upper bound only ever falls.

#include <cstdint>
#include <functional>
#include <stdexcept>

#include "tbai/extreal.hpp"

namespace tbai {

struct BoundaryParams {
    double sigma = 1.0;        // sub-Gaussian scale of the observations
    double delta_total = 0.1;  // total risk budget, split delta/(2n) per arm
    int n_source = 1;

    BoundaryParams() = default;
    BoundaryParams(double sigma_, double delta_total_, int n_source_)
        : sigma(sigma_), delta_total(delta_total_), n_source(n_source_) {
        if (!(sigma > 0.0)) throw std::invalid_argument("BoundaryParams: sigma must be positive");
        if (!(delta_total > 0.0 && delta_total < 1.0))
            throw std::invalid_argument("BoundaryParams: delta_total must be in (0,1)");
        if (n_source < 1) throw std::invalid_argument("BoundaryParams: n_source must be >= 1");
    }

    double per_arm_delta() const { return delta_total / (2.0 * n_source); }
};

/// Running-intersection confidence state for one source arm.
/// Before the first pull the interval is (-inf, +inf).
struct ArmConfidenceState {
    std::int64_t pulls = 0;
    double sum = 0.0;
    ExtReal lcb = ExtReal::neg_infinity();
    ExtReal ucb = ExtReal::infinity();

    double mean() const {
        if (pulls == 0) throw std::domain_error("ArmConfidenceState: no samples yet");
        return sum / static_cast<double>(pulls);
    }
    ExtInterval interval() const { return ExtInterval(lcb, ucb); }
};

/// Stitched boundary value at pull count t. Rejects t = 0, delta outside
/// (0,1), sigma <= 0. Strictly positive, tends to 0, and is nonincreasing
/// for all t past a sigma-dependent point (small-t region can rise when
/// sigma is large; callers that invert must bracket, not assume).
double stitched_beta(std::int64_t t, double delta, double sigma);

/// Smallest t >= 1 with beta(t, delta, sigma) <= width. Scans the short
/// non-monotone head exactly, then exponential bracket + binary search on
/// the monotone tail.
std::int64_t invert_beta(double width, double delta, double sigma);

/// Smallest t >= 1 with beta(t, delta, sigma) strictly below width.
std::int64_t invert_beta_strict(double width, double delta, double sigma);

/// Smallest t in [1, cap] satisfying pred, for predicates that (like
/// beta-threshold tests) can flicker over a short initial stretch but are
/// monotone once the boundary is decreasing. Scans the head linearly, then
/// exponential bracket + binary search. Returns -1 when no t <= cap
/// satisfies.
std::int64_t first_time_satisfying(const std::function<bool(std::int64_t)>& pred,
                                   std::int64_t cap);

/// One observation folded into the running intersection. Value in, value
/// out; rejects non-finite samples.
ArmConfidenceState cs_update(const ArmConfidenceState& state, double sample,
                             const BoundaryParams& params);

} // namespace tbai
