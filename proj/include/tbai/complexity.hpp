#pragma once

// Instance-dependent sample-complexity calculators. These are harness-side
// diagnostics: they take the true means, which the algorithm never sees.
//
// For each (target a, source i) pair, tau(a,i) is the first pull count t at
// which the worst-case uncertainty that arm i can still inject into target
// a's interval drops below the separation threshold
// max(|nu_bar - nu_a|, eps/2) / s_a, where nu_bar is the midpoint of the two
// largest true target means. Per-source counts take the max over targets and
// their sum upper-bounds the stopping time with probability 1 - delta.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tbai/confidence.hpp"
#include "tbai/presets.hpp"
#include "tbai/transfer.hpp"

namespace tbai {

struct TauValue {
    std::int64_t t = 1;
    bool unbounded = false;

    friend bool operator==(const TauValue&, const TauValue&) = default;
};

struct NamedBound {
    std::string name;
    double value = 0.0;
    bool unbounded = false;
};

/// Which risk parameter feeds the boundary inside the bound. PerArm matches
/// what the algorithm actually runs (delta / 2n); Raw is the literal
/// statement, kept for side-by-side comparison.
enum class DeltaAllocation { PerArm, Raw };

struct ComplexityReport {
    ExtReal nu_bar = ExtReal(0.0);
    std::vector<std::vector<TauValue>> tau_matrix; // [target][source]
    std::vector<TauValue> tau_per_source;          // max over targets
    TauValue theorem2_total;                       // sum over sources
    std::optional<NamedBound> closed_form;         // preset hardness, if known
};

/// Search ceiling for pull counts; a pair whose threshold is never met below
/// this is reported unbounded.
inline constexpr std::int64_t kTauSearchCap = std::int64_t{1} << 40;

/// Worst-case uncertainty of component (a,i) over the width-2*beta window
/// anchored at x: max-image minus min-image over [x, x + 2 beta(t, delta)].
ExtReal complexity_length(const TransferFunction& tf, int target, int source,
                          std::int64_t t, double x, double delta_eff, double sigma);

/// Exact sup of complexity_length over the window anchors
/// x in [mu_i - 2 beta(t), mu_i]. Closed form for zero/linear/indicator
/// components; piecewise components are evaluated on an anchor grid
/// (`grid_points` cells), which callers refine when searching.
ExtReal sup_complexity_length(const ComponentFunction& f, std::int64_t t, double mu_i,
                              double delta_eff, double sigma, int grid_points = 512);

/// tau(a,i) via the per-kind closed forms: constant components need one
/// pull, linear components invert the boundary at threshold / 2|c|,
/// indicators invert at half the boundary gap of mu_i and then nudge for
/// endpoint openness, piecewise components fall back to the bracketed grid
/// search.
TauValue tau_target_source(const TransferFunction& tf, int target, int source,
                           std::span<const double> mu, std::span<const ExtReal> nu,
                           double epsilon, double delta_eff, double sigma);

/// Same quantity by direct search over t with the exact sup predicate; no
/// boundary inversion. Kept as the independent route the closed forms are
/// cross-checked against.
TauValue tau_target_source_search(const TransferFunction& tf, int target, int source,
                                  std::span<const double> mu, std::span<const ExtReal> nu,
                                  double epsilon, double delta_eff, double sigma);

/// Full report; delta enters through the chosen allocation and sigma is the
/// same boundary scale the algorithm runs with, so predicted and realized
/// widths are in the same currency.
ComplexityReport theorem2_bound(const TransferFunction& tf, std::span<const double> mu,
                                double epsilon, double delta, double sigma,
                                DeltaAllocation alloc = DeltaAllocation::PerArm);

// Closed-form hardness quantities from the preset reductions.
NamedBound bai_corollary(std::span<const double> mu);
NamedBound thresholding_corollary(std::span<const double> mu, double theta);
NamedBound topk_corollary(std::span<const double> mu, int k);
NamedBound property_testing_corollary(std::span<const double> mu,
                                      std::span<const RealSet> property_sets);
NamedBound linear_corollary(const std::vector<std::vector<double>>& matrix,
                            std::span<const double> mu, double epsilon);

/// Dispatch on the preset description; BAI/TopK/... map to their hardness sum,
/// explicit grids have no closed form.
std::optional<NamedBound> corollary_bounds(const PresetDescription& preset,
                                           std::span<const double> mu, double epsilon);

} // namespace tbai
