#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "tbai/presets.hpp"

using namespace tbai;

namespace {
const ExtReal kNeg = ExtReal::neg_infinity();

int argmax_nu(const std::vector<ExtReal>& nu) {
    int best = 0;
    for (int a = 1; a < static_cast<int>(nu.size()); ++a) {
        if (nu[static_cast<std::size_t>(a)] > nu[static_cast<std::size_t>(best)]) best = a;
    }
    return best;
}
} // namespace

TEST_CASE("make_bai is the identity transfer") {
    TransferFunction tf = make_bai(2);
    CHECK(tf.n_target() == 2);
    CHECK(tf.sparsity(0) == 1);
    CHECK(tf.sparsity(1) == 1);
    std::vector<ExtInterval> cis = {ExtInterval(0.0, 0.5), ExtInterval(-1.0, 2.0)};
    auto bounds = target_bounds(tf, cis);
    CHECK(bounds[0] == cis[0]);
    CHECK(bounds[1] == cis[1]);
    CHECK_THROWS_AS(make_bai(1), std::invalid_argument);
}

TEST_CASE("make_topk enumerates lexicographic K-subsets") {
    TransferFunction tf = make_topk(3, 2);
    REQUIRE(tf.n_target() == 3);
    CHECK(tf.label(0) == "{1,2}");
    CHECK(tf.label(1) == "{1,3}");
    CHECK(tf.label(2) == "{2,3}");
    for (int a = 0; a < 3; ++a) CHECK(tf.sparsity(a) == 2);

    std::vector<double> mu = {3.0, 2.0, 1.0};
    auto nu = tf.true_target_means(mu);
    CHECK(nu[0] == ExtReal(5.0));
    CHECK(argmax_nu(nu) == 0);

    CHECK_THROWS_AS(make_topk(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_topk(3, 3), std::invalid_argument);
    CHECK_THROWS_AS(make_topk(50, 12), std::invalid_argument); // cap
}

TEST_CASE("make_topk with K = 1 matches make_bai bounds") {
    using namespace tbai::testing;
    TransferFunction topk = make_topk(4, 1);
    TransferFunction bai = make_bai(4);
    SplitMix64 rng = make_trial_stream(4242, 0);
    for (int k = 0; k < 20; ++k) {
        std::vector<ExtInterval> cis;
        for (int i = 0; i < 4; ++i) {
            double lo = uniform_in(rng, -2.0, 2.0);
            cis.emplace_back(lo, lo + uniform_in(rng, 0.0, 2.0));
        }
        CHECK(target_bounds(topk, cis) == target_bounds(bai, cis));
    }
}

TEST_CASE("make_thresholding spans the power set") {
    TransferFunction tf = make_thresholding(2, 0.5);
    REQUIRE(tf.n_target() == 4);
    CHECK(tf.label(0) == "{}");
    CHECK(tf.label(1) == "{1}");
    CHECK(tf.label(2) == "{2}");
    CHECK(tf.label(3) == "{1,2}");

    std::vector<double> mu = {0.8, 0.2};
    auto nu = tf.true_target_means(mu);
    CHECK(nu[0] == ExtReal(0.0)); // empty sum
    CHECK(nu[1] == ExtReal(1.0));
    CHECK(nu[2] == kNeg);
    CHECK(nu[3] == kNeg);
    CHECK(tf.label(argmax_nu(nu)) == "{1}");

    CHECK_THROWS_AS(make_thresholding(16, 0.5), std::invalid_argument);
    CHECK(preset_requires_zero_epsilon(PresetKind::Thresholding));
    CHECK(preset_requires_zero_epsilon(PresetKind::PropertyTesting));
    CHECK(!preset_requires_zero_epsilon(PresetKind::Bai));
}

TEST_CASE("make_cpe over an explicit decision class") {
    TransferFunction tf = make_cpe(3, {{0}, {1, 2}});
    std::vector<double> mu = {1.0, 0.4, 0.4};
    auto nu = tf.true_target_means(mu);
    CHECK(nu[0] == ExtReal(1.0));
    CHECK(nu[1].raw() == doctest::Approx(0.8));
    CHECK(argmax_nu(nu) == 0);
    CHECK(tf.sparsity(1) == 2);

    CHECK_THROWS_AS(make_cpe(3, {{0}}), std::invalid_argument);          // singleton class
    CHECK_THROWS_AS(make_cpe(3, {{0}, {0}}), std::invalid_argument);     // duplicate
    CHECK_THROWS_AS(make_cpe(3, {{0}, {0, 0}}), std::invalid_argument);  // repeated element
    CHECK_THROWS_AS(make_cpe(3, {{0}, {3}}), std::invalid_argument);     // out of range
}

TEST_CASE("make_property_testing recovers thresholding") {
    std::vector<RealSet> sets = {RealSet::parse("(0.5,inf)"), RealSet::parse("(0.5,inf)")};
    std::vector<std::vector<int>> memberships = {{}, {0}, {1}, {0, 1}};
    TransferFunction pt = make_property_testing(sets, memberships);
    TransferFunction th = make_thresholding(2, 0.5);
    std::vector<double> mu = {0.8, 0.2};
    CHECK(pt.true_target_means(mu) == th.true_target_means(mu));

    // All members satisfied: sum of ones. One violator: -inf.
    TransferFunction all_in = make_property_testing(sets, {{0, 1}, {}});
    std::vector<double> both_in = {0.8, 0.9}, one_out = {0.8, 0.2};
    CHECK(all_in.true_target_means(both_in)[0] == ExtReal(2.0));
    CHECK(all_in.true_target_means(one_out)[0] == kNeg);
    CHECK_THROWS_AS(make_property_testing(sets, {}), std::invalid_argument);
}

TEST_CASE("preset means match an independent subset-sum computation") {
    using namespace tbai::testing;
    SplitMix64 rng = make_trial_stream(4242, 1);
    for (int rep = 0; rep < 20; ++rep) {
        int n = 3 + static_cast<int>(rng.next_u64() % 3);
        int k = 1 + static_cast<int>(rng.next_u64() % (n - 1));
        TransferFunction tf = make_topk(n, k);
        std::vector<double> mu;
        for (int i = 0; i < n; ++i) mu.push_back(uniform_in(rng, -2.0, 2.0));
        auto nu = tf.true_target_means(mu);
        // Recompute by parsing the label.
        for (int a = 0; a < tf.n_target(); ++a) {
            double direct = 0.0;
            const std::string& label = tf.label(a);
            for (std::size_t pos = 1; pos < label.size();) {
                std::size_t end = label.find_first_of(",}", pos);
                direct += mu[static_cast<std::size_t>(std::stoi(label.substr(pos, end - pos))) - 1];
                pos = end + 1;
            }
            CHECK(nu[static_cast<std::size_t>(a)].raw() == doctest::Approx(direct).epsilon(1e-12));
        }
    }
}

TEST_CASE("grid entries build the declared components") {
    PresetDescription desc;
    desc.kind = PresetKind::ExplicitGrid;
    desc.n_source = 2;
    desc.grid_n_target = 2;
    GridEntry e1;
    e1.target = 0; e1.source = 0; e1.kind = GridEntry::Kind::Linear; e1.coeff = 2.0;
    GridEntry e2;
    e2.target = 1; e2.source = 1; e2.kind = GridEntry::Kind::Indicator;
    e2.set = RealSet::parse("(0,inf)");
    desc.grid_entries = {e1, e2};
    TransferFunction tf = desc.build();
    std::vector<double> mu_pos = {1.5, 1.0}, mu_neg = {1.5, -1.0};
    CHECK(tf.true_target_means(mu_pos)[0] == ExtReal(3.0));
    CHECK(tf.true_target_means(mu_neg)[1] == kNeg);
    CHECK(tf.sparsity(0) == 1);

    GridEntry dup = e1;
    desc.grid_entries.push_back(dup);
    CHECK_THROWS_AS(desc.build(), std::invalid_argument);
}
