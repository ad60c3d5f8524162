#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "tfm/bounds.hpp"

using namespace tfm;

namespace {
constexpr double kInfimum = 0.9142135623730951;  // sqrt(2) - 1/2
constexpr double kTol = 1e-9;
}  // namespace

TEST_CASE("allocation bound curve matches its closed form along B = (sqrt2-1)A") {
    // Reference values computed independently with 30-digit arithmetic.
    double A = 100.0, B = (std::sqrt(2.0) - 1.0) * 100.0;
    CHECK(allocation_bound_curve(A, B) == doctest::Approx(0.9234480428011061).epsilon(1e-12));
    CHECK(allocation_bound_curve(A, B) ==
          doctest::Approx((2.0 * std::sqrt(2.0) - 1.0) * A / (2.0 * (A - 1.0))).epsilon(1e-12));
    CHECK(allocation_bound_curve(10.0, (std::sqrt(2.0) - 1.0) * 10.0) ==
          doctest::Approx(1.0157928470812167).epsilon(1e-12));
}

TEST_CASE("allocation bound curve dominates the infimum on random samples") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> logA(std::log(1.0001), std::log(1e8));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 20000; ++i) {
        double A = std::exp(logA(rng));
        double B = 1.0 + (A - 1.0) * unit(rng);
        if (!(A > B && B > 1.0)) continue;
        CHECK(allocation_bound_curve(A, B) >= kInfimum - kTol);
    }
    CHECK_THROWS_AS(allocation_bound_curve(2.0, 2.5), std::domain_error);
    CHECK_THROWS_AS(allocation_bound_curve(2.0, 0.5), std::domain_error);
}

TEST_CASE("minimizer approaches sqrt(2) - 1/2 as the domain widens") {
    BoundMinimum wide = minimize_allocation_bound(1e6, 1e-4);
    CHECK(wide.converged);
    CHECK(wide.value >= 0.91421);
    CHECK(wide.value <= 0.91430);
    CHECK(wide.value >= kInfimum - 1e-4);

    BoundMinimum narrow = minimize_allocation_bound(10.0, 1e-6);
    CHECK(narrow.value == doctest::Approx(1.0157928470812167).epsilon(1e-6));
    CHECK(narrow.A == doctest::Approx(10.0).epsilon(1e-3));

    BoundMinimum wider = minimize_allocation_bound(1e8, 1e-4);
    CHECK(wider.value <= wide.value + kTol);
    CHECK(wider.value >= kInfimum - 1e-4);
}

TEST_CASE("two-bidder lower bound") {
    CHECK(two_bidder_lower(19.8, 2.4, 0.842 * 19.8) ==
          doctest::Approx(0.8202068965517241).epsilon(1e-12));
    CHECK(two_bidder_lower(19.8, 2.4, 2.4) == doctest::Approx(0.0));
    CHECK(two_bidder_lower(19.8, 2.4, 19.8) == doctest::Approx(1.0));
}

TEST_CASE("two-bidder general upper bound is returned verbatim") {
    CHECK(two_bidder_upper_general(19.8, 2.4, 0.0) == doctest::Approx(1.5));
    CHECK(two_bidder_upper_general(19.8, 2.4, 1.5 * 2.4) == doctest::Approx(0.0));
    // Negative at the corollary's witness; flagged, never used there.
    CHECK(two_bidder_upper_general(19.8, 2.4, 0.842 * 19.8) ==
          doctest::Approx(-5.4465).epsilon(1e-12));
}

TEST_CASE("two-bidder extended upper bound") {
    CHECK(two_bidder_upper_extended(19.8, 2.4, 0.842 * 19.8) ==
          doctest::Approx(0.8152215387584876).epsilon(1e-10));
    CHECK(two_bidder_upper_extended(19.8, 2.4, 0.83 * 19.8) ==
          doctest::Approx(1.0118110966734231).epsilon(1e-10));
    // Limit toward the regime edge u -> (v1+v2)/2: the formula tends to
    // v1/(2 v2) = 4.125 at (19.8, 2.4).
    double edge = 0.5 * (19.8 + 2.4);
    CHECK(two_bidder_upper_extended(19.8, 2.4, edge + 1e-9) ==
          doctest::Approx(4.125).epsilon(1e-6));
    CHECK_THROWS_AS(two_bidder_upper_extended(19.8, 2.4, edge - 1e-6), std::domain_error);
}

TEST_CASE("the bounds are monotone across the extended regime") {
    double v1 = 19.8, v2 = 2.4;
    double lo = 0.5 * (v1 + v2) + 1e-6;
    double prev_lower = -1e9, prev_upper = 1e9;
    for (int k = 0; k <= 500; ++k) {
        double u = lo + (v1 - lo) * k / 500.0;
        double lower = two_bidder_lower(v1, v2, u);
        double upper = two_bidder_upper_extended(v1, v2, u);
        CHECK(lower >= prev_lower - kTol);
        CHECK(upper <= prev_upper + kTol);
        prev_lower = lower;
        prev_upper = upper;
    }
}

TEST_CASE("efficiency witness check") {
    ContradictionReport hi = efficiency_witness_check(19.8, 2.4, 0.842 * 19.8);
    CHECK(hi.used_extended);
    CHECK(hi.contradicts);
    CHECK(hi.general_bound_negative);
    CHECK(hi.lower == doctest::Approx(0.8202068965517241).epsilon(1e-12));
    CHECK(hi.upper == doctest::Approx(0.8152215387584876).epsilon(1e-10));

    ContradictionReport lo = efficiency_witness_check(19.8, 2.4, 0.83 * 19.8);
    CHECK(lo.used_extended);
    CHECK_FALSE(lo.contradicts);

    // Below the regime the general bound applies and nothing contradicts.
    ContradictionReport tiny = efficiency_witness_check(19.8, 2.4, 2.4);
    CHECK_FALSE(tiny.used_extended);
    CHECK_FALSE(tiny.contradicts);
    CHECK(tiny.lower == doctest::Approx(0.0));
}

TEST_CASE("efficiency threshold sits in (0.83, 0.842]") {
    ThresholdResult t = find_efficiency_threshold(19.8, 2.4, 1e-4);
    REQUIRE(t.found);
    CHECK(t.ratio > 0.83);
    CHECK(t.ratio <= 0.842);
    // Root of lower == upper, computed independently: 0.8417202183063391.
    CHECK(t.ratio == doctest::Approx(0.8417202183063391).epsilon(2e-4));

    // Degenerate pair: the regime is (almost) empty, no threshold.
    ThresholdResult none = find_efficiency_threshold(2.4 + 1e-9, 2.4, 1e-3);
    CHECK_FALSE(none.found);
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(two_bidder_lower(2.0, 3.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(minimize_allocation_bound(1.5, 1e-4), std::domain_error);
    CHECK_THROWS_AS(find_efficiency_threshold(19.8, 2.4, -1.0), std::domain_error);
}
