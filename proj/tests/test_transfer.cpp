#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "tbai/transfer.hpp"

using namespace tbai;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
const ExtReal kPos = ExtReal::infinity();
const ExtReal kNeg = ExtReal::neg_infinity();

RealSet positive_halfline() { return RealSet::open_interval(0.0, kInf); }
}

TEST_CASE("RealSet membership honors endpoint openness") {
    RealSet s = RealSet({{0.0, 1.0, false, true}, {2.0, 3.0, true, false}});
    CHECK(!s.contains(0.0));
    CHECK(s.contains(0.5));
    CHECK(s.contains(1.0));
    CHECK(s.contains(2.0));
    CHECK(!s.contains(3.0));
    CHECK(!s.contains(1.5));

    CHECK(s.contains_interval(0.5, 1.0));
    CHECK(!s.contains_interval(0.0, 0.5));
    CHECK(!s.contains_interval(0.5, 2.5));
    CHECK(s.intersects_interval(1.0, 2.0));
    CHECK(!s.intersects_interval(1.25, 1.75));
    CHECK(s.intersects_interval(-1.0, 0.5));
    CHECK(!s.intersects_interval(-1.0, 0.0)); // touches only the open endpoint
}

TEST_CASE("RealSet canonicalizes touching and overlapping pieces") {
    RealSet merged = RealSet({{0.0, 1.0, true, false}, {1.0, 2.0, true, true}});
    CHECK(merged.pieces().size() == 1);
    CHECK(merged.contains(1.0));
    CHECK(merged.contains_interval(0.5, 1.5));

    RealSet split = RealSet({{0.0, 1.0, true, false}, {1.0, 2.0, false, true}});
    CHECK(split.pieces().size() == 2);
    CHECK(!split.contains(1.0));
    CHECK(!split.contains_interval(0.5, 1.5));
}

TEST_CASE("RealSet parse and format round trip") {
    for (const char* text : {"(0,inf)", "[0.5,1]", "(-inf,0]u(1,2)", "{}", "[2,2]"}) {
        RealSet s = RealSet::parse(text);
        CHECK(RealSet::parse(s.to_string()) == s);
    }
    CHECK(RealSet::parse("(0,inf)").contains(5.0));
    CHECK(!RealSet::parse("(0,inf)").contains(0.0));
    CHECK_THROWS_AS(RealSet::parse("(1,0)"), std::invalid_argument);
    CHECK_THROWS_AS(RealSet::parse("(0 1)"), std::invalid_argument);
}

TEST_CASE("boundary distance on both sides of the set") {
    RealSet s = positive_halfline();
    CHECK(s.boundary_distance(0.5) == ExtReal(0.5));  // inside, distance to 0
    CHECK(s.boundary_distance(-0.5) == ExtReal(0.5)); // outside, distance to 0
    CHECK(s.boundary_distance(0.0) == ExtReal(0.0));  // on the boundary
    CHECK(RealSet::whole_line().boundary_distance(3.0) == kPos);
    CHECK(RealSet().boundary_distance(3.0) == kPos);

    RealSet band = RealSet::closed_interval(0.0, 1.0);
    CHECK(band.boundary_distance(0.25) == ExtReal(0.25));
    CHECK(band.boundary_distance(2.0) == ExtReal(1.0));
}

TEST_CASE("symmetric windows respect openness at the boundary") {
    RealSet open = positive_halfline();
    CHECK(open.symmetric_window_on_side(0.5, 0.49));
    CHECK(!open.symmetric_window_on_side(0.5, 0.5)); // window touches the open endpoint
    CHECK(!open.symmetric_window_on_side(0.5, 0.6));
    // Complement side of (0, inf) is (-inf, 0], closed at 0.
    CHECK(open.symmetric_window_on_side(-0.5, 0.5));
    CHECK(!open.symmetric_window_on_side(-0.5, 0.51));

    RealSet closed = RealSet({{0.0, kInf, true, false}});
    CHECK(closed.symmetric_window_on_side(0.5, 0.5));
}

TEST_CASE("linear image is the reordered endpoint image") {
    ComponentFunction f = ComponentFunction::linear(-2.0);
    ExtInterval img = component_interval_image(f, ExtInterval(1.0, 3.0));
    CHECK(img == ExtInterval(-6.0, -2.0));
    CHECK(component_interval_image(ComponentFunction::linear(0.0), ExtInterval(1.0, 3.0)) ==
          ExtInterval(0.0, 0.0));
}

TEST_CASE("indicator images split by containment and intersection") {
    ComponentFunction f = ComponentFunction::indicator(positive_halfline());
    CHECK(component_interval_image(f, ExtInterval(-1.0, 1.0)) == ExtInterval(kNeg, ExtReal(1.0)));
    CHECK(component_interval_image(f, ExtInterval(0.5, 1.0)) == ExtInterval(1.0, 1.0));
    CHECK(component_interval_image(f, ExtInterval(-1.0, -0.5)) == ExtInterval(kNeg, kNeg));
}

TEST_CASE("image rejects infinite endpoints") {
    ComponentFunction f = ComponentFunction::linear(1.0);
    CHECK_THROWS_AS(component_interval_image(f, ExtInterval(kNeg, ExtReal(1.0))),
                    std::invalid_argument);
}

TEST_CASE("piecewise-linear images are exact at knots and slopes") {
    ComponentFunction f = ComponentFunction::piecewise_linear({-1.0, 0.0, 1.0}, {0.0, 2.0, -1.0});
    CHECK(f.evaluate(-2.0) == ExtReal(0.0));  // constant extension
    CHECK(f.evaluate(-0.5) == ExtReal(1.0));
    CHECK(f.evaluate(0.0) == ExtReal(2.0));
    CHECK(f.evaluate(0.5) == ExtReal(0.5));
    CHECK(f.evaluate(3.0) == ExtReal(-1.0));
    ExtInterval img = component_interval_image(f, ExtInterval(-0.5, 0.5));
    CHECK(img == ExtInterval(0.5, 2.0));
}

TEST_CASE("interval image matches the grid oracle") {
    using namespace tbai::testing;
    SplitMix64 rng = make_trial_stream(90210, 0);
    int checked = 0;
    for (int k = 0; k < 100; ++k) {
        ComponentFunction f = (k % 3 == 0)   ? random_linear(rng)
                              : (k % 3 == 1) ? random_indicator(rng)
                                             : random_pwl(rng);
        double lo = uniform_in(rng, -4.0, 3.0);
        double hi = lo + uniform_in(rng, 0.01, 4.0);
        ExtInterval impl = component_interval_image(f, ExtInterval(lo, hi));
        GridOracleResult oracle = grid_image_oracle(f, lo, hi, 20'000);
        if (f.as_indicator()) {
            CHECK(impl.lo == oracle.min);
            CHECK(impl.hi == oracle.max);
        } else {
            double budget = (hi - lo) / 20'000 * max_slope(f) + 1e-12;
            CHECK(oracle.min.raw() >= impl.lo.raw() - 1e-12);
            CHECK(oracle.min.raw() - impl.lo.raw() <= budget);
            CHECK(oracle.max.raw() <= impl.hi.raw() + 1e-12);
            CHECK(impl.hi.raw() - oracle.max.raw() <= budget);
        }
        ++checked;
    }
    CHECK(checked == 100);
}

TEST_CASE("images are monotone under interval containment") {
    using namespace tbai::testing;
    SplitMix64 rng = make_trial_stream(90210, 1);
    for (int k = 0; k < 200; ++k) {
        ComponentFunction f = (k % 3 == 0)   ? random_linear(rng)
                              : (k % 3 == 1) ? random_indicator(rng)
                                             : random_pwl(rng);
        double lo = uniform_in(rng, -4.0, 3.0);
        double hi = lo + uniform_in(rng, 0.01, 3.0);
        ExtInterval inner = component_interval_image(f, ExtInterval(lo, hi));
        ExtInterval outer = component_interval_image(
            f, ExtInterval(lo - uniform_in(rng, 0.0, 1.0), hi + uniform_in(rng, 0.0, 1.0)));
        CHECK(outer.contains(inner));
    }
}

namespace {
TransferFunction identity2() {
    return TransferFunction(2, 2,
                            {ComponentFunction::linear(1.0), ComponentFunction::zero(),
                             ComponentFunction::zero(), ComponentFunction::linear(1.0)});
}
} // namespace

TEST_CASE("target bounds on the identity transfer pass intervals through") {
    TransferFunction tf = identity2();
    std::vector<ExtInterval> cis = {ExtInterval(0.1, 0.3), ExtInterval(0.5, 0.9)};
    auto bounds = target_bounds(tf, cis);
    CHECK(bounds[0] == cis[0]);
    CHECK(bounds[1] == cis[1]);
}

TEST_CASE("target bounds add componentwise") {
    TransferFunction tf(1, 2, {ComponentFunction::linear(1.0), ComponentFunction::linear(1.0)});
    std::vector<ExtInterval> cis = {ExtInterval(0.0, 1.0), ExtInterval(2.0, 3.0)};
    auto bounds = target_bounds(tf, cis);
    REQUIRE(bounds.size() == 1);
    CHECK(bounds[0] == ExtInterval(2.0, 4.0));
}

TEST_CASE("property-testing bounds with one straddling arm") {
    TransferFunction tf(1, 2,
                        {ComponentFunction::indicator(positive_halfline()),
                         ComponentFunction::indicator(positive_halfline())});
    std::vector<ExtInterval> cis = {ExtInterval(0.2, 0.4), ExtInterval(-0.4, 0.2)};
    auto bounds = target_bounds(tf, cis);
    CHECK(bounds[0].lo == kNeg);
    CHECK(bounds[0].hi == ExtReal(2.0));
}

TEST_CASE("unpulled arms contribute the global range") {
    TransferFunction tf = identity2();
    std::vector<ExtInterval> cis = {ExtInterval(kNeg, kPos), ExtInterval(0.5, 0.9)};
    auto bounds = target_bounds(tf, cis);
    CHECK(bounds[0] == ExtInterval(kNeg, kPos));
    CHECK(bounds[1] == ExtInterval(0.5, 0.9));
    CHECK(ComponentFunction::indicator(positive_halfline()).global_image() ==
          ExtInterval(kNeg, ExtReal(1.0)));
}

TEST_CASE("uncertainty lengths by component kind") {
    TransferFunction tf(1, 3,
                        {ComponentFunction::linear(3.0),
                         ComponentFunction::indicator(positive_halfline()),
                         ComponentFunction::zero()});
    CHECK(uncertainty_length(tf, 0, 0, ExtInterval(0.1, 0.5)).raw() ==
          doctest::Approx(3.0 * 0.4).epsilon(1e-14));
    CHECK(uncertainty_length(tf, 0, 1, ExtInterval(-0.5, 0.5)) == kPos); // straddles
    CHECK(uncertainty_length(tf, 0, 1, ExtInterval(0.2, 0.5)) == ExtReal(0.0));
    CHECK(uncertainty_length(tf, 0, 1, ExtInterval(-0.5, -0.2)) == ExtReal(0.0));
    CHECK(uncertainty_length(tf, 0, 2, ExtInterval(-100.0, 100.0)) == ExtReal(0.0));
}

TEST_CASE("shape mismatches and bad indices are rejected") {
    TransferFunction tf = identity2();
    std::vector<ExtInterval> too_few = {ExtInterval(0.0, 1.0)};
    CHECK_THROWS_AS(target_bounds(tf, too_few), std::invalid_argument);
    CHECK_THROWS_AS(uncertainty_length(tf, 0, 5, ExtInterval(0.0, 1.0)), std::out_of_range);
    CHECK_THROWS_AS(tf.sparsity(-1), std::out_of_range);
    CHECK_THROWS_AS(TransferFunction(2, 2, {ComponentFunction::zero()}), std::invalid_argument);
}

TEST_CASE("sparsity counts non-constant components") {
    TransferFunction tf(2, 3,
                        {ComponentFunction::zero(), ComponentFunction::linear(3.0),
                         ComponentFunction::linear(-1.0), ComponentFunction::zero(),
                         ComponentFunction::zero(), ComponentFunction::zero()});
    CHECK(tf.sparsity(0) == 2);
    CHECK(tf.sparsity(1) == 0);
    CHECK(TransferFunction(1, 1, {ComponentFunction::linear(0.0)}).sparsity(0) == 0);
    CHECK(TransferFunction(1, 1, {ComponentFunction::indicator(RealSet::whole_line())}).sparsity(0) == 0);
}

TEST_CASE("rows with disjoint support add as interval sums") {
    // The mechanism behind the target construction: per-source images sum.
    // Combining a row acting on source 1 with a row acting on source 2 gives
    // exactly the interval sum of the two single-row bounds.
    using namespace tbai::testing;
    SplitMix64 rng = make_trial_stream(90210, 2);
    for (int k = 0; k < 50; ++k) {
        ComponentFunction f1 = (k % 2 == 0) ? random_linear(rng) : random_pwl(rng);
        ComponentFunction g2 = (k % 3 == 0) ? random_pwl(rng) : random_linear(rng);
        TransferFunction f(1, 2, {f1, ComponentFunction::zero()});
        TransferFunction g(1, 2, {ComponentFunction::zero(), g2});
        TransferFunction s(1, 2, {f1, g2});
        double lo1 = uniform_in(rng, -1.0, 0.0), hi1 = lo1 + uniform_in(rng, 0.0, 1.0);
        double lo2 = uniform_in(rng, -1.0, 0.0), hi2 = lo2 + uniform_in(rng, 0.0, 1.0);
        std::vector<ExtInterval> cis = {ExtInterval(lo1, hi1), ExtInterval(lo2, hi2)};
        auto bf = target_bounds(f, cis)[0];
        auto bg = target_bounds(g, cis)[0];
        auto bs = target_bounds(s, cis)[0];
        CHECK(bs.lo.raw() == doctest::Approx(bf.lo.raw() + bg.lo.raw()).epsilon(1e-12));
        CHECK(bs.hi.raw() == doctest::Approx(bf.hi.raw() + bg.hi.raw()).epsilon(1e-12));
    }
}

TEST_CASE("true target means evaluate the transfer exactly") {
    TransferFunction tf(2, 2,
                        {ComponentFunction::indicator(positive_halfline()),
                         ComponentFunction::indicator(positive_halfline()),
                         ComponentFunction::linear(2.0), ComponentFunction::zero()});
    std::vector<double> mu = {0.5, -0.5};
    auto nu = tf.true_target_means(mu);
    CHECK(nu[0] == kNeg);          // 1 + (-inf)
    CHECK(nu[1] == ExtReal(1.0));  // 2 * 0.5
}
