#pragma once

// Constructors reducing the classical pure-exploration problems to additive
// transfer instances: best-arm identification, TopK, thresholding,
// combinatorial pure exploration over an explicit decision class, and
// general property testing. Combinatorial targets are enumerated explicitly
// with caps; labels carry the 1-based subset notation used in output.

#include <string>
#include <vector>

#include "tbai/transfer.hpp"

namespace tbai {

enum class PresetKind { Bai, TopK, Thresholding, Cpe, PropertyTesting, Linear, ExplicitGrid };

const char* preset_kind_name(PresetKind kind);

/// Thresholding and property testing only separate targets at epsilon = 0;
/// config validation enforces this.
bool preset_requires_zero_epsilon(PresetKind kind);

inline constexpr int kTopKEnumerationCap = 10'000;
inline constexpr int kThresholdingMaxArms = 15; // 2^n targets

/// Identity transfer: target a mirrors source a.
TransferFunction make_bai(int n);

/// One target per K-subset of the sources (lexicographic order), each a sum
/// of its members.
TransferFunction make_topk(int n, int k, int enumeration_cap = kTopKEnumerationCap);

/// Property testing with C_i = (theta, inf) for every arm and one target per
/// subset of 2^[n] (bitmask order, empty set first).
TransferFunction make_thresholding(int n, double theta);

/// Subset-sum targets over an explicit decision class; the class must hold
/// at least two distinct subsets of [n].
TransferFunction make_cpe(int n, const std::vector<std::vector<int>>& decision_class);

/// Targets nu_M = sum_{i in M} indicator_{C_i}(mu_i). A member whose mean
/// sits on the boundary of its C_i makes the instance gap zero and every
/// bound vacuous; nothing here can detect that, since the means are unknown
/// to the algorithm.
TransferFunction make_property_testing(const std::vector<RealSet>& property_sets,
                                       const std::vector<std::vector<int>>& membership_sets);

/// Dense linear transfer from a coefficient matrix (rows = targets).
TransferFunction make_linear(const std::vector<std::vector<double>>& matrix);

/// 1-based subset label, e.g. "{1,3}" or "{}".
std::string subset_label(const std::vector<int>& subset);

/// One cell of an explicitly declared component grid; kept in a plain form
/// so configs round-trip.
struct GridEntry {
    enum class Kind { Zero, Linear, Indicator, Pwl };
    int target = 0; // 0-based
    int source = 0;
    Kind kind = Kind::Zero;
    double coeff = 0.0;
    RealSet set;
    std::vector<double> knot_x;
    std::vector<double> knot_y;

    ComponentFunction build() const;
};

/// Everything needed to rebuild a preset instance; the config layer parses
/// into this and the complexity layer reads preset parameters off it.
struct PresetDescription {
    PresetKind kind = PresetKind::Bai;
    int n_source = 0;
    int topk_k = 0;
    double threshold_theta = 0.0;
    std::vector<std::vector<int>> subsets;    // cpe / property-testing memberships (0-based)
    std::vector<RealSet> property_sets;       // property testing: one per source
    std::vector<std::vector<double>> matrix;  // linear rows
    std::vector<GridEntry> grid_entries;      // explicit grid cells
    int grid_n_target = 0;

    TransferFunction build() const;
};

} // namespace tbai
