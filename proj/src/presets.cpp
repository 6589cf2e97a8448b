#include "tbai/presets.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace tbai {

const char* preset_kind_name(PresetKind kind) {
    switch (kind) {
        case PresetKind::Bai: return "bai";
        case PresetKind::TopK: return "topk";
        case PresetKind::Thresholding: return "thresholding";
        case PresetKind::Cpe: return "cpe";
        case PresetKind::PropertyTesting: return "property_testing";
        case PresetKind::Linear: return "linear";
        case PresetKind::ExplicitGrid: return "grid";
    }
    return "?";
}

bool preset_requires_zero_epsilon(PresetKind kind) {
    return kind == PresetKind::Thresholding || kind == PresetKind::PropertyTesting;
}

std::string subset_label(const std::vector<int>& subset) {
    std::string out = "{";
    for (std::size_t k = 0; k < subset.size(); ++k) {
        if (k) out += ',';
        out += std::to_string(subset[k] + 1);
    }
    out += '}';
    return out;
}

namespace {

void validate_subsets(int n, const std::vector<std::vector<int>>& subsets) {
    std::set<std::vector<int>> seen;
    for (const auto& m : subsets) {
        std::vector<int> sorted = m;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw std::invalid_argument("subset with repeated elements");
        }
        for (int i : sorted) {
            if (i < 0 || i >= n) throw std::invalid_argument("subset element outside [1, n]");
        }
        if (!seen.insert(sorted).second) throw std::invalid_argument("duplicate subset");
    }
}

TransferFunction subset_sum_transfer(int n, const std::vector<std::vector<int>>& subsets,
                                     const ComponentFunction* per_source_members = nullptr) {
    std::vector<ComponentFunction> grid(subsets.size() * static_cast<std::size_t>(n),
                                        ComponentFunction::zero());
    std::vector<std::string> labels;
    labels.reserve(subsets.size());
    for (std::size_t a = 0; a < subsets.size(); ++a) {
        std::vector<int> sorted = subsets[a];
        std::sort(sorted.begin(), sorted.end());
        for (int i : sorted) {
            grid[a * n + i] = per_source_members ? per_source_members[i]
                                                 : ComponentFunction::linear(1.0);
        }
        labels.push_back(subset_label(sorted));
    }
    return TransferFunction(static_cast<int>(subsets.size()), n, std::move(grid), std::move(labels));
}

} // namespace

TransferFunction make_bai(int n) {
    if (n < 2) throw std::invalid_argument("make_bai: need n >= 2");
    std::vector<ComponentFunction> grid(static_cast<std::size_t>(n) * n, ComponentFunction::zero());
    std::vector<std::string> labels;
    for (int a = 0; a < n; ++a) {
        grid[static_cast<std::size_t>(a) * n + a] = ComponentFunction::linear(1.0);
        labels.push_back(std::to_string(a + 1));
    }
    return TransferFunction(n, n, std::move(grid), std::move(labels));
}

TransferFunction make_topk(int n, int k, int enumeration_cap) {
    if (n < 2) throw std::invalid_argument("make_topk: need n >= 2");
    if (k < 1 || k >= n) throw std::invalid_argument("make_topk: need 1 <= K < n");

    // C(n, k) with early cutoff against the cap.
    long long count = 1;
    for (int j = 1; j <= k; ++j) {
        count = count * (n - j + 1) / j;
        if (count > enumeration_cap) {
            throw std::invalid_argument("make_topk: C(n,K) exceeds the enumeration cap");
        }
    }

    std::vector<std::vector<int>> subsets;
    std::vector<int> cur(k);
    for (int j = 0; j < k; ++j) cur[j] = j;
    while (true) {
        subsets.push_back(cur);
        int j = k - 1;
        while (j >= 0 && cur[j] == n - k + j) --j;
        if (j < 0) break;
        ++cur[j];
        for (int l = j + 1; l < k; ++l) cur[l] = cur[l - 1] + 1;
    }
    return subset_sum_transfer(n, subsets);
}

TransferFunction make_thresholding(int n, double theta) {
    if (n < 1) throw std::invalid_argument("make_thresholding: need n >= 1");
    if (n > kThresholdingMaxArms) {
        throw std::invalid_argument("make_thresholding: 2^n targets exceed the enumeration cap");
    }
    std::vector<std::vector<int>> subsets;
    subsets.reserve(std::size_t{1} << n);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> m;
        for (int i = 0; i < n; ++i) {
            if (mask & (1u << i)) m.push_back(i);
        }
        subsets.push_back(std::move(m));
    }
    std::vector<ComponentFunction> members;
    members.reserve(n);
    for (int i = 0; i < n; ++i) {
        members.push_back(ComponentFunction::indicator(
            RealSet::open_interval(theta, std::numeric_limits<double>::infinity())));
    }
    return subset_sum_transfer(n, subsets, members.data());
}

TransferFunction make_cpe(int n, const std::vector<std::vector<int>>& decision_class) {
    if (n < 1) throw std::invalid_argument("make_cpe: need n >= 1");
    if (decision_class.size() < 2) {
        throw std::invalid_argument("make_cpe: decision class needs at least two subsets");
    }
    validate_subsets(n, decision_class);
    return subset_sum_transfer(n, decision_class);
}

TransferFunction make_property_testing(const std::vector<RealSet>& property_sets,
                                       const std::vector<std::vector<int>>& membership_sets) {
    const int n = static_cast<int>(property_sets.size());
    if (n < 1) throw std::invalid_argument("make_property_testing: need at least one source arm");
    if (membership_sets.empty()) {
        throw std::invalid_argument("make_property_testing: membership sets must be non-empty");
    }
    validate_subsets(n, membership_sets);
    std::vector<ComponentFunction> members;
    members.reserve(property_sets.size());
    for (const auto& set : property_sets) members.push_back(ComponentFunction::indicator(set));
    return subset_sum_transfer(n, membership_sets, members.data());
}

TransferFunction make_linear(const std::vector<std::vector<double>>& matrix) {
    if (matrix.empty() || matrix.front().empty()) {
        throw std::invalid_argument("make_linear: empty matrix");
    }
    const int n_target = static_cast<int>(matrix.size());
    const int n_source = static_cast<int>(matrix.front().size());
    std::vector<ComponentFunction> grid;
    grid.reserve(static_cast<std::size_t>(n_target) * n_source);
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(n_target));
    for (int a = 0; a < n_target; ++a) {
        if (static_cast<int>(matrix[a].size()) != n_source) {
            throw std::invalid_argument("make_linear: ragged matrix");
        }
        for (int i = 0; i < n_source; ++i) {
            grid.push_back(matrix[a][i] == 0.0 ? ComponentFunction::zero()
                                               : ComponentFunction::linear(matrix[a][i]));
        }
        labels.push_back(std::to_string(a + 1));
    }
    return TransferFunction(n_target, n_source, std::move(grid), std::move(labels));
}

ComponentFunction GridEntry::build() const {
    switch (kind) {
        case Kind::Zero: return ComponentFunction::zero();
        case Kind::Linear: return ComponentFunction::linear(coeff);
        case Kind::Indicator: return ComponentFunction::indicator(set);
        case Kind::Pwl: return ComponentFunction::piecewise_linear(knot_x, knot_y);
    }
    throw std::logic_error("GridEntry::build: unknown kind");
}

TransferFunction PresetDescription::build() const {
    switch (kind) {
        case PresetKind::Bai: return make_bai(n_source);
        case PresetKind::TopK: return make_topk(n_source, topk_k);
        case PresetKind::Thresholding: return make_thresholding(n_source, threshold_theta);
        case PresetKind::Cpe: return make_cpe(n_source, subsets);
        case PresetKind::PropertyTesting: return make_property_testing(property_sets, subsets);
        case PresetKind::Linear: return make_linear(matrix);
        case PresetKind::ExplicitGrid: {
            if (grid_n_target < 2) throw std::invalid_argument("grid: need at least two targets");
            std::vector<ComponentFunction> grid(
                static_cast<std::size_t>(grid_n_target) * static_cast<std::size_t>(n_source),
                ComponentFunction::zero());
            std::vector<bool> seen(grid.size(), false);
            for (const auto& entry : grid_entries) {
                if (entry.target < 0 || entry.target >= grid_n_target || entry.source < 0 ||
                    entry.source >= n_source) {
                    throw std::invalid_argument("grid: component index out of range");
                }
                std::size_t at = static_cast<std::size_t>(entry.target) * n_source + entry.source;
                if (seen[at]) throw std::invalid_argument("grid: duplicate component cell");
                seen[at] = true;
                grid[at] = entry.build();
            }
            std::vector<std::string> labels;
            for (int a = 0; a < grid_n_target; ++a) labels.push_back(std::to_string(a + 1));
            return TransferFunction(grid_n_target, n_source, std::move(grid), std::move(labels));
        }
    }
    throw std::logic_error("PresetDescription::build: unknown kind");
}

} // namespace tbai
