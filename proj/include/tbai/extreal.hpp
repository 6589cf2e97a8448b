#pragma once

// Extended-real scalars and closed intervals. Values live in R u {-inf, +inf}
// with the subtraction convention inf - inf = 0 (same-signed infinities).
// NaN is rejected at construction; everything downstream can assume a total
// order.

#include <cmath>
#include <compare>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tbai {

class ExtReal {
public:
    constexpr ExtReal() : v_(0.0) {}
    ExtReal(double v) : v_(v) {
        if (std::isnan(v)) throw std::invalid_argument("ExtReal: NaN is not a value");
    }

    static constexpr ExtReal infinity() { return ExtReal(unchecked{}, std::numeric_limits<double>::infinity()); }
    static constexpr ExtReal neg_infinity() { return ExtReal(unchecked{}, -std::numeric_limits<double>::infinity()); }

    constexpr double raw() const { return v_; }
    constexpr bool is_finite() const { return v_ > -std::numeric_limits<double>::infinity() &&
                                              v_ < std::numeric_limits<double>::infinity(); }
    constexpr bool is_pos_inf() const { return v_ == std::numeric_limits<double>::infinity(); }
    constexpr bool is_neg_inf() const { return v_ == -std::numeric_limits<double>::infinity(); }

    /// Finite value accessor; throws if infinite.
    double finite() const {
        if (!is_finite()) throw std::domain_error("ExtReal: not finite");
        return v_;
    }

    friend constexpr bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }
    friend constexpr auto operator<=>(ExtReal a, ExtReal b) { return a.v_ <=> b.v_; }

    friend constexpr ExtReal operator-(ExtReal x) { return ExtReal(unchecked{}, -x.v_); }

private:
    struct unchecked {};
    constexpr ExtReal(unchecked, double v) : v_(v) {}
    double v_;
};

/// x - y with the convention that same-signed infinities cancel to 0.
/// Total on all extended reals; mixed-sign cases follow IEEE semantics.
inline ExtReal ext_sub(ExtReal x, ExtReal y) {
    if (!x.is_finite() && x.raw() == y.raw()) return ExtReal(0.0);
    return ExtReal(x.raw() - y.raw());
}

/// x + y, defined as ext_sub(x, -y) so that (+inf) + (-inf) = 0.
inline ExtReal ext_add(ExtReal x, ExtReal y) { return ext_sub(x, -y); }

inline ExtReal ext_abs(ExtReal x) { return x < ExtReal(0.0) ? -x : x; }

inline ExtReal ext_min(ExtReal a, ExtReal b) { return a < b ? a : b; }
inline ExtReal ext_max(ExtReal a, ExtReal b) { return a < b ? b : a; }

/// Closed interval [lo, hi] over the extended reals.
struct ExtInterval {
    ExtReal lo;
    ExtReal hi;

    ExtInterval() : lo(0.0), hi(0.0) {}
    ExtInterval(ExtReal l, ExtReal h) : lo(l), hi(h) {
        if (h < l) throw std::invalid_argument("ExtInterval: lo > hi");
    }
    ExtInterval(double l, double h) : ExtInterval(ExtReal(l), ExtReal(h)) {}

    bool finite() const { return lo.is_finite() && hi.is_finite(); }
    bool contains(ExtReal x) const { return lo <= x && x <= hi; }
    bool contains(const ExtInterval& other) const { return lo <= other.lo && other.hi <= hi; }

    friend bool operator==(const ExtInterval&, const ExtInterval&) = default;
};

/// hi - lo under the extended subtraction convention, so degenerate
/// intervals such as [-inf, -inf] have length 0.
inline ExtReal interval_length(const ExtInterval& iv) { return ext_sub(iv.hi, iv.lo); }

/// Serialization used by config files and CSV output: "inf", "-inf", or a
/// decimal literal with 17 significant digits.
inline std::string to_string(ExtReal x) {
    if (x.is_pos_inf()) return "inf";
    if (x.is_neg_inf()) return "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x.raw());
    return buf;
}

/// Parses "inf" / "-inf" / decimal literal. Rejects NaN, empty and trailing
/// garbage rather than letting an indeterminate value propagate.
inline ExtReal parse_ext_real(std::string_view text) {
    if (text == "inf" || text == "+inf") return ExtReal::infinity();
    if (text == "-inf") return ExtReal::neg_infinity();
    std::string owned(text);
    if (owned.empty()) throw std::invalid_argument("ExtReal parse: empty token");
    char* end = nullptr;
    double v = std::strtod(owned.c_str(), &end);
    if (end != owned.c_str() + owned.size()) {
        throw std::invalid_argument("ExtReal parse: bad token '" + owned + "'");
    }
    if (std::isnan(v)) throw std::invalid_argument("ExtReal parse: NaN rejected");
    return ExtReal(v);
}

} // namespace tbai
