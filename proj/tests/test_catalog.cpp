#include <doctest.h>

#include "tfm/catalog.hpp"
#include "tfm/json_io.hpp"

using namespace tfm;

namespace {

MechanismSpec spec_of(Family f, Reserve r = Reserve::finite(Money(0)),
                      PaymentCurve::Kind k = PaymentCurve::Kind::Identity) {
    MechanismSpec s;
    s.family = f;
    s.r = r;
    s.f.kind = k;
    return s;
}

}  // namespace

TEST_CASE("third-price pays the third-highest bid") {
    Mechanism tp = make_mechanism(spec_of(Family::ThirdPrice));
    Outcome out = tp.evaluate(BidProfile::of_bids({Money(1), Money(1, 2), Money(1, 4)}));
    CHECK(out.alloc[0] == Money(1));
    CHECK(out.pay[0] == Money(1, 4));
    CHECK(out.burn[0] == Money(0));

    // Fewer than three bids pay nothing.
    Outcome two = tp.evaluate(BidProfile::of_bids({Money(2), Money(1)}));
    CHECK(two.pay[0] == Money(0));
}

TEST_CASE("burned second-price respects the reserve") {
    Mechanism bsp = make_mechanism(spec_of(Family::BurnedSecondPrice, Reserve::finite(Money(2))));
    Outcome below = bsp.evaluate(BidProfile::of_bids({Money(1)}));
    CHECK(below.alloc[0] == Money(0));
    CHECK(below.pay[0] == Money(0));
    CHECK(below.burn[0] == Money(0));

    // The boundary bid max == r is allocated.
    Outcome at = bsp.evaluate(BidProfile::of_bids({Money(2)}));
    CHECK(at.alloc[0] == Money(1));
    CHECK(at.pay[0] == Money(2));
    CHECK(at.burn[0] == Money(2));

    Outcome pair = bsp.evaluate(BidProfile::of_bids({Money(5), Money(3)}));
    CHECK(pair.alloc[0] == Money(1));
    CHECK(pair.pay[0] == Money(3));  // max(r, second-highest)
    CHECK(pair.burn[0] == Money(2));
}

TEST_CASE("generalized burned first-price pays f(max)") {
    Mechanism gbfp = make_mechanism(
        spec_of(Family::GeneralizedBurnedFirstPrice, Reserve::finite(Money(1))));
    Outcome out = gbfp.evaluate(BidProfile::of_bids({Money(5), Money(3)}));
    CHECK(out.alloc[0] == Money(1));
    CHECK(out.pay[0] == Money(5));
    CHECK(out.burn[0] == Money(1));

    Mechanism half = make_mechanism(spec_of(Family::GeneralizedBurnedFirstPrice,
                                            Reserve::finite(Money(1)),
                                            PaymentCurve::Kind::HalfPlusReserve));
    Outcome h = half.evaluate(BidProfile::of_bids({Money(5), Money(3)}));
    CHECK(h.pay[0] == Money(7, 2));  // 5/2 + 1

    Mechanism flat = make_mechanism(spec_of(Family::GeneralizedBurnedFirstPrice,
                                            Reserve::finite(Money(1)),
                                            PaymentCurve::Kind::ConstantReserve));
    Outcome c = flat.evaluate(BidProfile::of_bids({Money(5), Money(3)}));
    CHECK(c.pay[0] == Money(1));
}

TEST_CASE("ties break toward the lowest index") {
    for (Family f : {Family::FirstPrice, Family::SecondPrice, Family::ThirdPrice}) {
        Mechanism m = make_mechanism(spec_of(f));
        Outcome out = m.evaluate(BidProfile::of_bids({Money(2), Money(2), Money(2)}));
        CHECK(out.alloc[0] == Money(1));
        CHECK(out.alloc[1] == Money(0));
        CHECK(out.alloc[2] == Money(0));
    }
}

TEST_CASE("non-anonymous posted burn only serves its designated identity") {
    MechanismSpec s = spec_of(Family::NonAnonymousPostedBurn, Reserve::finite(Money(1)));
    s.i_star = 0;
    Mechanism napb = make_mechanism(s);

    Outcome starred = napb.evaluate(BidProfile::of_bids({Money(2), Money(5)}));
    CHECK(starred.alloc[0] == Money(1));  // b0 wins despite the higher rival bid
    CHECK(starred.pay[0] == Money(1));
    CHECK(starred.burn[0] == Money(1));

    Outcome below = napb.evaluate(BidProfile::of_bids({Money(1, 2), Money(5)}));
    CHECK(below.alloc[0] == Money(0));
    CHECK(below.alloc[1] == Money(0));

    // Fake bids never match a roster identity.
    BidProfile faked;
    faked.entries.push_back(BidEntry{Money(1, 2), false, 1});
    faked.entries.push_back(BidEntry{Money(9), true, kFakeId});
    Outcome f = napb.evaluate(faked);
    CHECK(f.alloc[0] == Money(0));
    CHECK(f.alloc[1] == Money(0));
}

TEST_CASE("enumerate_family sizes") {
    GridSpec rs;
    rs.points = {Money(0), Money(1), Money(2)};
    CHECK(enumerate_family(Family::BurnedSecondPrice, rs).size() == 3);

    std::vector<Reserve> two = {Reserve::finite(Money(0)), Reserve::finite(Money(1))};
    CHECK(enumerate_family(Family::GeneralizedBurnedFirstPrice, two).size() == 6);
    CHECK(enumerate_family(Family::SecondPrice, two).size() == 1);
}

TEST_CASE("infinite reserve collapses both families onto the trivial rule") {
    Mechanism trivial = make_mechanism(spec_of(Family::Trivial));
    std::vector<Mechanism> infs = {
        make_mechanism(spec_of(Family::BurnedSecondPrice, Reserve::inf())),
        make_mechanism(spec_of(Family::GeneralizedBurnedFirstPrice, Reserve::inf()))};
    GridSpec grid = GridSpec::linear(Money(0), Money(3), Money(1, 2));
    for (const auto& mech : infs)
        for (const auto& b0 : grid.points)
            for (const auto& b1 : grid.points) {
                BidProfile p = BidProfile::of_bids({b0, b1});
                Outcome a = mech.evaluate(p), t = trivial.evaluate(p);
                CHECK(a.alloc == t.alloc);
                CHECK(a.pay == t.pay);
                CHECK(a.burn == t.burn);
            }
}

TEST_CASE("both reserve families share the characterized allocation/burn form") {
    // Allocate to the highest bidder iff max >= r; burn exactly r whenever
    // allocated; nothing otherwise.
    GridSpec grid = GridSpec::linear(Money(0), Money(3), Money(1, 2));
    Money r(1);
    std::vector<Mechanism> family = {
        make_mechanism({Family::BurnedSecondPrice, Reserve::finite(r), {}, 0}),
        make_mechanism({Family::GeneralizedBurnedFirstPrice, Reserve::finite(r),
                        PaymentCurve{PaymentCurve::Kind::HalfPlusReserve, {}}, 0})};
    for (const auto& mech : family)
        for (const auto& b0 : grid.points)
            for (const auto& b1 : grid.points)
                for (const auto& b2 : grid.points) {
                    std::vector<Money> bids{b0, b1, b2};
                    Outcome out = mech.evaluate(BidProfile::of_bids(bids));
                    Money max_bid = std::max(b0, std::max(b1, b2));
                    int winner = bids[0] == max_bid ? 0 : bids[1] == max_bid ? 1 : 2;
                    for (int i = 0; i < 3; ++i) {
                        bool wins = i == winner && max_bid >= r;
                        CHECK(out.alloc[i] == (wins ? Money(1) : Money(0)));
                        CHECK(out.burn[i] == (wins ? r : Money(0)));
                    }
                }
}

TEST_CASE("zero-reserve burned second-price coincides with second-price on 2+ bidders") {
    Mechanism bsp0 = make_mechanism(spec_of(Family::BurnedSecondPrice, Reserve::finite(Money(0))));
    Mechanism sp = make_mechanism(spec_of(Family::SecondPrice));
    GridSpec grid = GridSpec::linear(Money(0), Money(2), Money(1, 4));
    for (const auto& b0 : grid.points)
        for (const auto& b1 : grid.points) {
            BidProfile p = BidProfile::of_bids({b0, b1});
            Outcome a = bsp0.evaluate(p), b = sp.evaluate(p);
            CHECK(a.alloc == b.alloc);
            CHECK(a.pay == b.pay);
            CHECK(a.burn == b.burn);
        }
}

TEST_CASE("deterministic rules allocate in {0,1} with at most one winner") {
    GridSpec grid = GridSpec::linear(Money(0), Money(2), Money(1, 2));
    for (const auto& mech : default_catalog()) {
        if (!mech.deterministic()) continue;
        for (const auto& b0 : grid.points)
            for (const auto& b1 : grid.points)
                for (const auto& b2 : grid.points) {
                    Outcome out = mech.evaluate(BidProfile::of_bids({b0, b1, b2}));
                    int winners = 0;
                    for (const auto& a : out.alloc) {
                        CHECK((a.is_zero() || a == Money(1)));
                        if (a == Money(1)) ++winners;
                    }
                    CHECK(winners <= 1);
                }
    }
}

TEST_CASE("invalid specs are construction errors") {
    MechanismSpec bad = spec_of(Family::GeneralizedBurnedFirstPrice, Reserve::finite(Money(1)));
    bad.f.kind = PaymentCurve::Kind::Tabulated;
    bad.f.table = {{Money(0), Money(1)}, {Money(1), Money(0)}};  // decreasing
    CHECK_THROWS_AS(make_mechanism(bad), std::invalid_argument);

    MechanismSpec low = spec_of(Family::GeneralizedBurnedFirstPrice, Reserve::finite(Money(2)));
    low.f.kind = PaymentCurve::Kind::Tabulated;
    low.f.table = {{Money(2), Money(1)}, {Money(3), Money(3)}};  // f(2) < r
    CHECK_THROWS_AS(make_mechanism(low), std::invalid_argument);

    MechanismSpec dup = spec_of(Family::GeneralizedBurnedFirstPrice, Reserve::finite(Money(0)));
    dup.f.kind = PaymentCurve::Kind::Tabulated;
    dup.f.table = {{Money(1), Money(1)}, {Money(1), Money(1)}};  // duplicate bid
    CHECK_THROWS_AS(make_mechanism(dup), std::invalid_argument);
}

TEST_CASE("tabulated payment curves refuse off-table bids") {
    MechanismSpec s = spec_of(Family::GeneralizedBurnedFirstPrice, Reserve::finite(Money(0)));
    s.f.kind = PaymentCurve::Kind::Tabulated;
    s.f.table = {{Money(0), Money(0)}, {Money(1), Money(1, 2)}, {Money(2), Money(1)}};
    Mechanism m = make_mechanism(s);
    CHECK(m.evaluate(BidProfile::of_bids({Money(1)})).pay[0] == Money(1, 2));
    CHECK_THROWS_AS(m.evaluate(BidProfile::of_bids({Money(3, 2)})), std::domain_error);
}

TEST_CASE("mechanism spec json round-trip") {
    MechanismSpec s = spec_of(Family::GeneralizedBurnedFirstPrice, Reserve::finite(Money(3, 2)),
                              PaymentCurve::Kind::HalfPlusReserve);
    nlohmann::json j = mechanism_spec_to_json(s);
    CHECK(j["family"] == "generalized-burned-first-price");
    CHECK(j["f"]["kind"] == "half-plus-r");
    MechanismSpec back = mechanism_spec_from_json(j);
    CHECK(back.family == s.family);
    CHECK(back.r == s.r);
    CHECK(back.f.kind == s.f.kind);

    MechanismSpec inf_spec = spec_of(Family::BurnedSecondPrice, Reserve::inf());
    nlohmann::json ji = mechanism_spec_to_json(inf_spec);
    CHECK(ji["r"] == "inf");
    CHECK(mechanism_spec_from_json(ji).r.infinite);

    MechanismSpec napb = spec_of(Family::NonAnonymousPostedBurn, Reserve::finite(Money(1)));
    napb.i_star = 2;
    nlohmann::json jn = mechanism_spec_to_json(napb);
    CHECK(jn["i_star"] == "b2");
    CHECK(mechanism_spec_from_json(jn).i_star == 2);
}
