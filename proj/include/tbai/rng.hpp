#pragma once

// Deterministic per-trial random streams.
//
// Each Monte Carlo trial owns a SplitMix64 stream whose initial state is a
// hash of (base_seed, trial_index), so trial k draws the same numbers no
// matter which thread runs it or in what order. Gaussian variates use a
// fixed rational approximation of the normal quantile (Acklam's method,
// |rel err| < 1.2e-9) instead of std::normal_distribution, which is not
// pinned down by the standard and differs across library implementations.

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace tbai {

namespace detail {
inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30; z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27; z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}
} // namespace detail

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += detail::kGolden;
        return detail::mix64(state_);
    }

    /// Uniform double in [0, 1), 53-bit resolution.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in (0, 1), symmetric, never exactly 0 or 1.
    double next_open_unit() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

/// Stream for trial `trial_index` of a batch keyed by `base_seed`.
/// Pure function of its arguments; no coordination between trials.
inline SplitMix64 make_trial_stream(std::uint64_t base_seed, std::uint64_t trial_index) {
    std::uint64_t key = detail::mix64(base_seed ^ detail::mix64(trial_index + detail::kGolden));
    return SplitMix64(key);
}

/// Derived seed reported per trial in CSV output.
inline std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial_index) {
    return detail::mix64(base_seed ^ detail::mix64(trial_index + detail::kGolden));
}

/// Acklam's rational approximation to the standard normal quantile.
/// Coefficients are the published double-precision set; kept verbatim so
/// streams reproduce bit-for-bit across platforms.
inline double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("inverse_normal_cdf: p outside (0,1)");

    static constexpr double a[6] = {
        -3.969683028665376e+01,  2.209460984245205e+02, -2.759285104469687e+02,
         1.383577518672690e+02, -3.066479806614716e+01,  2.506628277459239e+00};
    static constexpr double b[5] = {
        -5.447609879822406e+01,  1.615858368580409e+02, -1.556989798598866e+02,
         6.680131188771972e+01, -1.328068155288572e+01};
    static constexpr double c[6] = {
        -7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
        -2.549732539343734e+00,  4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[4] = {
         7.784695709041462e-03,  3.224671290700398e-01,  2.445134137142996e+00,
         3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    if (p < p_low) {
        double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0]*q + c[1])*q + c[2])*q + c[3])*q + c[4])*q + c[5]) /
               ((((d[0]*q + d[1])*q + d[2])*q + d[3])*q + 1.0);
    }
    if (p > 1.0 - p_low) {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0]*q + c[1])*q + c[2])*q + c[3])*q + c[4])*q + c[5]) /
                ((((d[0]*q + d[1])*q + d[2])*q + d[3])*q + 1.0);
    }
    double q = p - 0.5;
    double r = q * q;
    return (((((a[0]*r + a[1])*r + a[2])*r + a[3])*r + a[4])*r + a[5])*q /
           (((((b[0]*r + b[1])*r + b[2])*r + b[3])*r + b[4])*r + 1.0);
}

inline double gaussian_sample(SplitMix64& stream, double mean, double sd) {
    if (!(sd > 0.0)) throw std::invalid_argument("gaussian_sample: sd must be positive");
    return mean + sd * inverse_normal_cdf(stream.next_open_unit());
}

inline double bernoulli_sample(SplitMix64& stream, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("bernoulli_sample: p outside [0,1]");
    return stream.next_unit() < p ? 1.0 : 0.0;
}

inline double uniform_sample(SplitMix64& stream, double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("uniform_sample: requires lo < hi");
    return lo + stream.next_unit() * (hi - lo);
}

} // namespace tbai
