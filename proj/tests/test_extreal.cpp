#include <doctest.h>

#include <algorithm>
#include <vector>

#include "tbai/extreal.hpp"
#include "tbai/rng.hpp"

using namespace tbai;

namespace {
const ExtReal kPos = ExtReal::infinity();
const ExtReal kNeg = ExtReal::neg_infinity();
}

TEST_CASE("ext_sub follows the same-sign cancellation convention") {
    CHECK(ext_sub(kPos, kPos) == ExtReal(0.0));
    CHECK(ext_sub(kNeg, kNeg) == ExtReal(0.0));
    CHECK(ext_sub(ExtReal(3.0), ExtReal(1.0)) == ExtReal(2.0));
    CHECK(ext_sub(ExtReal(1.0), kNeg) == kPos);
    CHECK(ext_sub(kPos, ExtReal(7.0)) == kPos);
    CHECK(ext_sub(ExtReal(7.0), kPos) == kNeg);
    CHECK(ext_sub(kNeg, ExtReal(7.0)) == kNeg);
    CHECK(ext_sub(kPos, kNeg) == kPos);
    CHECK(ext_sub(kNeg, kPos) == kNeg);
}

TEST_CASE("ext_sub is antisymmetric on finite inputs") {
    SplitMix64 rng(7);
    for (int k = 0; k < 200; ++k) {
        double a = rng.next_unit() * 20.0 - 10.0;
        double b = rng.next_unit() * 20.0 - 10.0;
        CHECK(ext_sub(ExtReal(a), ExtReal(b)) == -ext_sub(ExtReal(b), ExtReal(a)));
    }
}

TEST_CASE("x - x is zero for every extended real") {
    for (ExtReal x : {ExtReal(0.0), ExtReal(-3.25), ExtReal(1e300), kPos, kNeg}) {
        CHECK(ext_sub(x, x) == ExtReal(0.0));
    }
}

TEST_CASE("interval_length on the stated cases") {
    CHECK(interval_length(ExtInterval(0.2, 0.8)) == ExtReal(0.8 - 0.2));
    CHECK(interval_length(ExtInterval(kNeg, kNeg)) == ExtReal(0.0));
    CHECK(interval_length(ExtInterval(kPos, kPos)) == ExtReal(0.0));
    CHECK(interval_length(ExtInterval(kNeg, ExtReal(1.0))) == kPos);
    CHECK(interval_length(ExtInterval(ExtReal(1.0), kPos)) == kPos);
}

TEST_CASE("interval_length is monotone under containment") {
    SplitMix64 rng(11);
    for (int k = 0; k < 200; ++k) {
        double a = rng.next_unit() * 10.0 - 5.0;
        double b = a + rng.next_unit() * 4.0;
        double pad_lo = rng.next_unit();
        double pad_hi = rng.next_unit();
        ExtInterval inner(a, b);
        ExtInterval outer(a - pad_lo, b + pad_hi);
        CHECK(outer.contains(inner));
        CHECK(interval_length(inner) <= interval_length(outer));
    }
    CHECK(interval_length(ExtInterval(ExtReal(0.0), ExtReal(1.0))) <=
          interval_length(ExtInterval(kNeg, ExtReal(1.0))));
}

TEST_CASE("ordering is total and sorting is deterministic") {
    std::vector<ExtReal> values = {ExtReal(2.0), kNeg, ExtReal(-1.0), kPos, ExtReal(0.0)};
    std::sort(values.begin(), values.end());
    CHECK(values.front() == kNeg);
    CHECK(values.back() == kPos);
    CHECK(values[1] == ExtReal(-1.0));
    CHECK(values[2] == ExtReal(0.0));
    CHECK(values[3] == ExtReal(2.0));
    CHECK(kNeg < ExtReal(-1e308));
    CHECK(ExtReal(1e308) < kPos);
}

TEST_CASE("NaN is rejected at every boundary") {
    CHECK_THROWS_AS(ExtReal(std::nan("")), std::invalid_argument);
    CHECK_THROWS_AS(parse_ext_real("nan"), std::invalid_argument);
    CHECK_THROWS_AS(parse_ext_real(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_ext_real("1.5x"), std::invalid_argument);
    CHECK_THROWS_AS(ExtInterval(ExtReal(1.0), ExtReal(0.0)), std::invalid_argument);
}

TEST_CASE("textual round trip") {
    CHECK(to_string(kPos) == "inf");
    CHECK(to_string(kNeg) == "-inf");
    CHECK(parse_ext_real("inf") == kPos);
    CHECK(parse_ext_real("-inf") == kNeg);
    SplitMix64 rng(13);
    for (int k = 0; k < 100; ++k) {
        ExtReal x(rng.next_unit() * 2e3 - 1e3);
        CHECK(parse_ext_real(to_string(x)) == x);
    }
}

TEST_CASE("ext_add mirrors the subtraction convention") {
    CHECK(ext_add(kPos, kNeg) == ExtReal(0.0));
    CHECK(ext_add(kNeg, ExtReal(5.0)) == kNeg);
    CHECK(ext_add(kPos, ExtReal(5.0)) == kPos);
    CHECK(ext_add(ExtReal(2.0), ExtReal(3.0)) == ExtReal(5.0));
}
