#include "tbai/complexity.hpp"

#include <algorithm>
#include <cmath>

namespace tbai {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Midpoint of the two largest target means. Any -inf among the top two
/// drags the midpoint to -inf (our components never produce +inf values).
ExtReal top_two_midpoint(std::span<const ExtReal> nu) {
    if (nu.size() < 2) throw std::invalid_argument("need at least two target means");
    ExtReal first = ExtReal::neg_infinity(), second = ExtReal::neg_infinity();
    for (ExtReal v : nu) {
        if (v > first) { second = first; first = v; }
        else if (v > second) { second = v; }
    }
    if (first.is_finite() && second.is_finite()) {
        return ExtReal(0.5 * (first.raw() + second.raw()));
    }
    return ext_add(first, second); // same-signed infinities collapse
}

/// max(|nu_bar - nu_a|, eps/2); zero means the instance cannot separate
/// target a at this epsilon.
ExtReal separation_gap(ExtReal nu_bar, ExtReal nu_a, double epsilon) {
    return ext_max(ext_abs(ext_sub(nu_bar, nu_a)), ExtReal(epsilon / 2.0));
}

ExtReal ext_div_positive(ExtReal x, double d) {
    if (!x.is_finite()) return x;
    return ExtReal(x.raw() / d);
}

struct PairContext {
    ExtReal threshold;  // separation gap / s_a
    bool zero_gap;      // gap == 0: unbounded regardless of the component
};

PairContext pair_context(const TransferFunction& tf, int target,
                         std::span<const ExtReal> nu, double epsilon) {
    ExtReal gap = separation_gap(top_two_midpoint(nu), nu[static_cast<std::size_t>(target)], epsilon);
    PairContext ctx;
    ctx.zero_gap = gap == ExtReal(0.0);
    int s = tf.sparsity(target);
    ctx.threshold = s > 0 ? ext_div_positive(gap, static_cast<double>(s)) : gap;
    return ctx;
}

ExtReal window_width(const ComponentFunction& f, double x, double width) {
    return interval_length(f.image(x, x + width));
}

} // namespace

ExtReal complexity_length(const TransferFunction& tf, int target, int source,
                          std::int64_t t, double x, double delta_eff, double sigma) {
    double two_beta = 2.0 * stitched_beta(t, delta_eff, sigma);
    return window_width(tf.component(target, source), x, two_beta);
}

ExtReal sup_complexity_length(const ComponentFunction& f, std::int64_t t, double mu_i,
                              double delta_eff, double sigma, int grid_points) {
    if (f.is_constant()) return ExtReal(0.0);
    const double two_beta = 2.0 * stitched_beta(t, delta_eff, sigma);
    if (f.as_linear()) {
        // Width is anchor-independent; evaluate the window at mu_i.
        return window_width(f, mu_i, two_beta);
    }
    if (const auto* ind = f.as_indicator()) {
        // Every window of width 2*beta anchored in [mu - 2beta, mu] contains
        // mu, so some window straddles the set boundary exactly when the
        // full reach [mu - 2beta, mu + 2beta] leaves mu's side.
        return ind->set.symmetric_window_on_side(mu_i, two_beta) ? ExtReal(0.0)
                                                                 : ExtReal::infinity();
    }
    // Piecewise: sweep window anchors across [mu - 2beta, mu].
    ExtReal sup(0.0);
    const double x0 = mu_i - two_beta;
    for (int g = 0; g <= grid_points; ++g) {
        double x = x0 + (two_beta * g) / grid_points;
        sup = ext_max(sup, window_width(f, x, two_beta));
    }
    return sup;
}

TauValue tau_target_source_search(const TransferFunction& tf, int target, int source,
                                  std::span<const double> mu, std::span<const ExtReal> nu,
                                  double epsilon, double delta_eff, double sigma) {
    PairContext ctx = pair_context(tf, target, nu, epsilon);
    if (ctx.zero_gap) return {0, true};
    const ComponentFunction& f = tf.component(target, source);
    const double mu_i = mu[static_cast<std::size_t>(source)];

    auto pred = [&](std::int64_t t) {
        return sup_complexity_length(f, t, mu_i, delta_eff, sigma) < ctx.threshold;
    };
    std::int64_t t = first_time_satisfying(pred, kTauSearchCap);
    if (t < 0) return {0, true};
    return {t, false};
}

TauValue tau_target_source(const TransferFunction& tf, int target, int source,
                           std::span<const double> mu, std::span<const ExtReal> nu,
                           double epsilon, double delta_eff, double sigma) {
    PairContext ctx = pair_context(tf, target, nu, epsilon);
    if (ctx.zero_gap) return {0, true};
    const ComponentFunction& f = tf.component(target, source);
    if (f.is_constant()) return {1, false};

    if (const auto* lin = f.as_linear()) {
        if (!ctx.threshold.is_finite()) return {1, false}; // finite width always beats +inf
        double width = ctx.threshold.raw() / (2.0 * std::abs(lin->coeff));
        return {invert_beta_strict(width, delta_eff, sigma), false};
    }
    if (const auto* ind = f.as_indicator()) {
        const double mu_i = mu[static_cast<std::size_t>(source)];
        ExtReal gap = ind->set.boundary_distance(mu_i);
        if (gap == ExtReal(0.0)) return {0, true}; // mean on the set boundary
        if (!gap.is_finite()) return {1, false};
        std::int64_t t = invert_beta(gap.raw() / 2.0, delta_eff, sigma);
        // Open endpoints need the reach strictly inside; one extra step of
        // the decreasing boundary settles it.
        while (!ind->set.symmetric_window_on_side(mu_i, 2.0 * stitched_beta(t, delta_eff, sigma))) {
            ++t;
            if (t > kTauSearchCap) return {0, true};
        }
        return {t, false};
    }

    // Piecewise: bracketed search on an anchor grid, then re-verify with
    // finer grids so a straddle the coarse sweep missed pushes tau up rather
    // than letting it through.
    const double mu_i = mu[static_cast<std::size_t>(source)];
    int grid = 512;
    std::int64_t t = -1;
    while (true) {
        auto pred = [&](std::int64_t u) {
            return sup_complexity_length(f, u, mu_i, delta_eff, sigma, grid) < ctx.threshold;
        };
        std::int64_t found = first_time_satisfying(pred, kTauSearchCap);
        if (found < 0) return {0, true};
        if (found == t && grid >= 2048) return {t, false};
        t = found;
        if (grid >= 8192) return {t, false};
        grid *= 4;
    }
}

ComplexityReport theorem2_bound(const TransferFunction& tf, std::span<const double> mu,
                                double epsilon, double delta, double sigma,
                                DeltaAllocation alloc) {
    if (mu.size() != static_cast<std::size_t>(tf.n_source())) {
        throw std::invalid_argument("theorem2_bound: mu length mismatch");
    }
    if (tf.n_target() < 2) {
        throw std::invalid_argument("theorem2_bound: need at least two target arms");
    }
    const double delta_eff =
        alloc == DeltaAllocation::PerArm ? delta / (2.0 * tf.n_source()) : delta;

    std::vector<ExtReal> nu = tf.true_target_means(mu);

    ComplexityReport report;
    report.nu_bar = top_two_midpoint(nu);
    report.tau_matrix.assign(static_cast<std::size_t>(tf.n_target()),
                             std::vector<TauValue>(static_cast<std::size_t>(tf.n_source())));
    report.tau_per_source.assign(static_cast<std::size_t>(tf.n_source()), TauValue{1, false});

    for (int a = 0; a < tf.n_target(); ++a) {
        for (int i = 0; i < tf.n_source(); ++i) {
            TauValue tau = tau_target_source(tf, a, i, mu, nu, epsilon, delta_eff, sigma);
            report.tau_matrix[a][i] = tau;
        }
    }
    for (int i = 0; i < tf.n_source(); ++i) {
        TauValue best{1, false};
        for (int a = 0; a < tf.n_target(); ++a) {
            const TauValue& tau = report.tau_matrix[a][i];
            if (tau.unbounded) { best = {0, true}; break; }
            best.t = std::max(best.t, tau.t);
        }
        report.tau_per_source[i] = best;
    }
    TauValue total{0, false};
    for (const auto& tau : report.tau_per_source) {
        if (tau.unbounded) { total = {0, true}; break; }
        total.t += tau.t;
    }
    report.theorem2_total = total;
    return report;
}

// ---------------------------------------------------------------------------
// Closed-form hardness bounds
// ---------------------------------------------------------------------------

namespace {

std::vector<double> sorted_desc(std::span<const double> mu) {
    std::vector<double> v(mu.begin(), mu.end());
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

NamedBound inverse_square_sum(std::string name, std::span<const double> gaps,
                              double numerator = 1.0) {
    NamedBound bound{std::move(name), 0.0, false};
    for (double g : gaps) {
        if (g == 0.0) { bound.unbounded = true; bound.value = kInf; return bound; }
        if (std::isinf(g)) continue;
        bound.value += numerator / (g * g);
    }
    return bound;
}

} // namespace

NamedBound bai_corollary(std::span<const double> mu) {
    std::vector<double> s = sorted_desc(mu);
    double mid = 0.5 * (s[0] + s[1]);
    std::vector<double> gaps;
    for (double m : mu) gaps.push_back(mid - m);
    return inverse_square_sum("bai", gaps);
}

NamedBound thresholding_corollary(std::span<const double> mu, double theta) {
    std::vector<double> gaps;
    for (double m : mu) gaps.push_back(m - theta);
    return inverse_square_sum("thresholding", gaps);
}

NamedBound topk_corollary(std::span<const double> mu, int k) {
    if (k < 1 || k >= static_cast<int>(mu.size())) {
        throw std::invalid_argument("topk_corollary: need 1 <= K < n");
    }
    std::vector<double> s = sorted_desc(mu);
    double mid = 0.5 * (s[static_cast<std::size_t>(k - 1)] + s[static_cast<std::size_t>(k)]);
    std::vector<double> gaps;
    for (double m : mu) gaps.push_back(m - mid);
    return inverse_square_sum("topk", gaps, static_cast<double>(k) * k);
}

NamedBound property_testing_corollary(std::span<const double> mu,
                                      std::span<const RealSet> property_sets) {
    if (mu.size() != property_sets.size()) {
        throw std::invalid_argument("property_testing_corollary: size mismatch");
    }
    std::vector<double> gaps;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        gaps.push_back(property_sets[i].boundary_distance(mu[i]).raw());
    }
    return inverse_square_sum("property_testing", gaps, 2.0);
}

NamedBound linear_corollary(const std::vector<std::vector<double>>& matrix,
                            std::span<const double> mu, double epsilon) {
    const int n_target = static_cast<int>(matrix.size());
    const int n_source = static_cast<int>(mu.size());
    std::vector<ExtReal> nu;
    std::vector<int> sparsity(static_cast<std::size_t>(n_target), 0);
    for (int a = 0; a < n_target; ++a) {
        if (static_cast<int>(matrix[static_cast<std::size_t>(a)].size()) != n_source) {
            throw std::invalid_argument("linear_corollary: ragged matrix");
        }
        double dot = 0.0;
        for (int i = 0; i < n_source; ++i) {
            dot += matrix[a][i] * mu[i];
            if (matrix[a][i] != 0.0) ++sparsity[static_cast<std::size_t>(a)];
        }
        nu.push_back(ExtReal(dot));
    }
    ExtReal nu_bar = top_two_midpoint(nu);

    NamedBound bound{"linear", 0.0, false};
    for (int i = 0; i < n_source; ++i) {
        double best = 0.0;
        for (int a = 0; a < n_target; ++a) {
            double coeff = matrix[a][i];
            if (coeff == 0.0) continue;
            ExtReal gap = separation_gap(nu_bar, nu[static_cast<std::size_t>(a)], epsilon);
            if (gap == ExtReal(0.0)) { bound.unbounded = true; bound.value = kInf; return bound; }
            if (!gap.is_finite()) continue;
            double s = sparsity[static_cast<std::size_t>(a)];
            double term = (s * s * coeff * coeff) / (gap.raw() * gap.raw());
            best = std::max(best, term);
        }
        bound.value += best;
    }
    return bound;
}

std::optional<NamedBound> corollary_bounds(const PresetDescription& preset,
                                           std::span<const double> mu, double epsilon) {
    switch (preset.kind) {
        case PresetKind::Bai: return bai_corollary(mu);
        case PresetKind::TopK: return topk_corollary(mu, preset.topk_k);
        case PresetKind::Thresholding: return thresholding_corollary(mu, preset.threshold_theta);
        case PresetKind::PropertyTesting:
            return property_testing_corollary(mu, preset.property_sets);
        case PresetKind::Cpe: {
            std::vector<std::vector<double>> matrix(
                preset.subsets.size(), std::vector<double>(mu.size(), 0.0));
            for (std::size_t a = 0; a < preset.subsets.size(); ++a) {
                for (int i : preset.subsets[a]) matrix[a][static_cast<std::size_t>(i)] = 1.0;
            }
            NamedBound b = linear_corollary(matrix, mu, epsilon);
            b.name = "cpe";
            return b;
        }
        case PresetKind::Linear: return linear_corollary(preset.matrix, mu, epsilon);
        case PresetKind::ExplicitGrid: return std::nullopt;
    }
    return std::nullopt;
}

} // namespace tbai
