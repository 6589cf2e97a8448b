#pragma once

// Additive transfer functions linking source means to target means, and the
// interval machinery the algorithm runs on: exact images of each component
// over a source confidence interval, summed target bounds, per-source
// uncertainty lengths and row sparsity.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tbai/extreal.hpp"

namespace tbai {

/// Finite union of real intervals with explicit open/closed endpoints.
/// Canonicalized at construction: pieces sorted, overlapping or touching
/// pieces merged, infinite endpoints forced open.
class RealSet {
public:
    struct Piece {
        double lo;
        double hi;
        bool lo_closed;
        bool hi_closed;

        friend bool operator==(const Piece&, const Piece&) = default;
    };

    RealSet() = default;                 // empty set
    explicit RealSet(std::vector<Piece> pieces);

    static RealSet whole_line();
    static RealSet open_interval(double lo, double hi);
    static RealSet closed_interval(double lo, double hi);

    bool empty() const { return pieces_.empty(); }
    bool is_whole_line() const;
    const std::vector<Piece>& pieces() const { return pieces_; }

    bool contains(double x) const;
    /// Closed [lo, hi] a subset of this set.
    bool contains_interval(double lo, double hi) const;
    /// Closed [lo, hi] meets this set.
    bool intersects_interval(double lo, double hi) const;

    /// Distance from mu to the nearer of: the complement (mu inside) or the
    /// set (mu outside). +inf when the relevant side is empty. This is the
    /// gap that controls how tightly a confidence interval must shrink
    /// before the indicator resolves.
    ExtReal boundary_distance(double mu) const;

    /// Whether [mu - r, mu + r] stays on mu's side of the set boundary
    /// (inside the piece containing mu, or inside the complementary gap).
    /// Endpoint openness is honored exactly.
    bool symmetric_window_on_side(double mu, double r) const;

    std::string to_string() const;
    /// Parses e.g. "(0,inf)", "[0.5,1]", "(-inf,0]u(1,2)".
    static RealSet parse(std::string_view text);

    friend bool operator==(const RealSet&, const RealSet&) = default;

private:
    std::vector<Piece> pieces_; // sorted, disjoint, non-touching
};

// ---------------------------------------------------------------------------
// Component functions f_{a,i}
// ---------------------------------------------------------------------------

struct ZeroComponent {};

struct LinearComponent {
    double coeff;
};

/// 1 on the property set, -inf off it.
struct IndicatorComponent {
    RealSet set;
};

/// General additive component: finitely many breakpoints, one monotone piece
/// per cell. Piece j covers [breakpoints[j-1], breakpoints[j]) (first piece
/// unbounded below, last unbounded above); each callable must be monotone
/// and finite on the closure of its cell, which is what makes endpoint
/// evaluation yield exact interval images.
struct PiecewiseMonotoneComponent {
    std::vector<double> breakpoints;                    // strictly increasing
    std::vector<std::function<double(double)>> pieces;  // size = breakpoints.size() + 1
};

class ComponentFunction {
public:
    ComponentFunction() : impl_(ZeroComponent{}) {}
    ComponentFunction(ZeroComponent z) : impl_(z) {}
    ComponentFunction(LinearComponent l) : impl_(l) {}
    ComponentFunction(IndicatorComponent i) : impl_(std::move(i)) {}
    ComponentFunction(PiecewiseMonotoneComponent p);

    static ComponentFunction zero() { return ComponentFunction(ZeroComponent{}); }
    static ComponentFunction linear(double coeff) { return ComponentFunction(LinearComponent{coeff}); }
    static ComponentFunction indicator(RealSet set) { return ComponentFunction(IndicatorComponent{std::move(set)}); }
    /// Piecewise-linear interpolation through (x_k, y_k), constant outside
    /// the knot range. Monotone between consecutive knots by construction.
    static ComponentFunction piecewise_linear(std::vector<double> xs, std::vector<double> ys);

    ExtReal evaluate(double x) const;

    /// Exact [inf, sup] of the component over finite [lo, hi].
    ExtInterval image(double lo, double hi) const;

    /// Image over all of R. Exact for zero/linear/indicator; the piecewise
    /// kind returns [-inf, +inf] since black-box pieces have no evaluable
    /// limits (only reachable when an arm has never been pulled).
    ExtInterval global_image() const;

    bool is_constant() const;

    const LinearComponent* as_linear() const { return std::get_if<LinearComponent>(&impl_); }
    const IndicatorComponent* as_indicator() const { return std::get_if<IndicatorComponent>(&impl_); }
    const PiecewiseMonotoneComponent* as_piecewise() const { return std::get_if<PiecewiseMonotoneComponent>(&impl_); }
    bool is_zero_kind() const { return std::holds_alternative<ZeroComponent>(impl_); }

private:
    std::variant<ZeroComponent, LinearComponent, IndicatorComponent, PiecewiseMonotoneComponent> impl_;
};

/// Image of f over a source confidence interval. The interval must be
/// finite; callers with a possibly-unpulled arm go through target_bounds,
/// which falls back to the global image.
ExtInterval component_interval_image(const ComponentFunction& f, const ExtInterval& ci);

// ---------------------------------------------------------------------------
// Transfer function
// ---------------------------------------------------------------------------

class TransferFunction {
public:
    TransferFunction(int n_target, int n_source, std::vector<ComponentFunction> grid,
                     std::vector<std::string> target_labels = {});

    int n_source() const { return n_source_; }
    int n_target() const { return n_target_; }

    const ComponentFunction& component(int target, int source) const;

    /// Number of non-constant components in the target's row.
    int sparsity(int target) const;

    const std::vector<std::string>& target_labels() const { return labels_; }
    const std::string& label(int target) const;

    /// nu_a = sum_i f_{a,i}(mu_i), extended-real sum.
    ExtReal evaluate_target(int target, std::span<const double> mu) const;
    std::vector<ExtReal> true_target_means(std::span<const double> mu) const;

private:
    int n_target_;
    int n_source_;
    std::vector<ComponentFunction> grid_; // row-major [target][source]
    std::vector<std::string> labels_;
    std::vector<int> sparsity_;
};

/// Target confidence intervals from per-source intervals: lower bound is the
/// sum of componentwise minima (any -inf summand pins it to -inf), upper
/// bound the sum of maxima (any +inf summand pins it to +inf). A source
/// interval with an infinite endpoint contributes the component's global
/// image.
std::vector<ExtInterval> target_bounds(const TransferFunction& tf,
                                       std::span<const ExtInterval> source_cis);

/// Length of target a's interval contributed by source i: max-image minus
/// min-image of component (a,i) over ci, under the extended subtraction
/// convention (so a fully off-set indicator contributes 0, a straddling one
/// +inf).
ExtReal uncertainty_length(const TransferFunction& tf, int target, int source,
                           const ExtInterval& ci);

} // namespace tbai
