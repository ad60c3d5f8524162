#include <doctest.h>

#include "tfm/json_io.hpp"
#include "tfm/report.hpp"

using namespace tfm;
using nlohmann::json;

namespace {

RunConfig third_price_config() {
    RunConfig config;
    MechanismSpec spec;
    spec.family = Family::ThirdPrice;
    config.mechanism = spec;
    config.grid = GridSpec::linear(Money(0), Money(2), Money(1, 4));
    config.properties = {PropertyJob{PropertyKind::Oca, -1}, PropertyJob{PropertyKind::Scp, 1}};
    config.deterministic = true;
    return config;
}

}  // namespace

TEST_CASE("run: third-price is oca-proof on the grid but not 1-scp") {
    json report = run(third_price_config());
    CHECK(report["schema_version"] == "1");
    REQUIRE(report["checks"].size() == 2);
    CHECK(report["checks"][0]["property"] == "oca");
    CHECK(report["checks"][0]["verdict"] == "pass-on-grid");
    CHECK(report["checks"][1]["property"] == "scp");
    CHECK(report["checks"][1]["verdict"] == "violation");
    REQUIRE(report["checks"][1].contains("witness"));

    // Any reported witness replays exactly through the utility model.
    Mechanism mech = make_mechanism(mechanism_spec_from_json(report["config"]["mechanism"]));
    ViolationWitness w = witness_from_json(report["checks"][1]["witness"]);
    auto [lhs, rhs] = replay_witness(mech, w);
    CHECK(lhs == w.lhs);
    CHECK(rhs == w.rhs);
}

TEST_CASE("run: the trivial mechanism passes everything") {
    RunConfig config;
    MechanismSpec spec;
    spec.family = Family::Trivial;
    config.mechanism = spec;
    config.grid = GridSpec::linear(Money(0), Money(1), Money(1, 2));
    for (PropertyKind k : {PropertyKind::Dsic, PropertyKind::Mmic, PropertyKind::Oca,
                           PropertyKind::Scp, PropertyKind::ScaleInvariance, PropertyKind::Ctpa,
                           PropertyKind::Anonymity})
        config.properties.push_back(PropertyJob{k, -1});
    config.deterministic = true;
    json report = run(config);
    for (const auto& check : report["checks"]) CHECK(check["verdict"] == "pass-on-grid");
}

TEST_CASE("run: second-price is truthful but exposed to fake bids") {
    RunConfig config;
    MechanismSpec spec;
    spec.family = Family::SecondPrice;
    config.mechanism = spec;
    config.grid = GridSpec::linear(Money(0), Money(5), Money(1));
    config.grid.max_profile_size = 2;
    config.properties = {PropertyJob{PropertyKind::Dsic}, PropertyJob{PropertyKind::Mmic}};
    config.deterministic = true;
    json report = run(config);
    CHECK(report["checks"][0]["verdict"] == "pass-on-grid");
    CHECK(report["checks"][1]["verdict"] == "violation");
    ViolationWitness w = witness_from_json(report["checks"][1]["witness"]);
    CHECK_FALSE(w.manipulation.fakes.empty());
}

TEST_CASE("report json round-trips and deterministic runs are byte-identical") {
    RunConfig config = third_price_config();
    json a = run(config);
    json b = run(config);
    CHECK(a.dump() == b.dump());
    CHECK(json::parse(a.dump()) == a);
}

TEST_CASE("witness json carries the manipulation structure") {
    json report = run(third_price_config());
    json w = report["checks"][1]["witness"];
    for (const char* key : {"property", "values", "manipulation", "lhs", "rhs"})
        CHECK(w.contains(key));
    for (const char* key : {"kind", "kept", "changed", "fakes", "coalition"})
        CHECK(w["manipulation"].contains(key));
    ViolationWitness parsed = witness_from_json(w);
    CHECK(witness_to_json(parsed) == w);
}

TEST_CASE("every witness kind serializes, parses back, and replays") {
    GridSpec grid = GridSpec::linear(Money(0), Money(2), Money(1, 2));
    MechanismSpec spec;
    spec.family = Family::BurnedSecondPrice;
    spec.r = Reserve::finite(Money(1));
    Mechanism bsp = make_mechanism(spec);
    spec = MechanismSpec{};
    spec.family = Family::FirstPrice;
    Mechanism fp = make_mechanism(spec);
    spec = MechanismSpec{};
    spec.family = Family::SecondPrice;
    Mechanism sp = make_mechanism(spec);
    spec = MechanismSpec{};
    spec.family = Family::NonAnonymousPostedBurn;
    spec.r = Reserve::finite(Money(1));
    Mechanism napb = make_mechanism(spec);

    std::vector<Money> factors{Money(2), Money(1, 2)};
    std::vector<std::pair<const Mechanism*, CheckResult>> found;
    found.push_back({&fp, check_dsic(fp, grid)});
    found.push_back({&sp, check_mmic(sp, grid)});
    found.push_back({&sp, check_scp(sp, grid, 1)});
    found.push_back({&bsp, check_scale_invariance(bsp, grid, factors)});
    found.push_back({&bsp, check_ctpa(bsp, grid)});
    found.push_back({&napb, check_anonymity(napb, grid)});

    for (const auto& [mech, result] : found) {
        REQUIRE_FALSE(result.pass);
        json serialized = witness_to_json(*result.witness);
        ViolationWitness back = witness_from_json(serialized);
        CHECK(witness_to_json(back) == serialized);
        auto [lhs, rhs] = replay_witness(*mech, back);
        CHECK(lhs == result.witness->lhs);
        CHECK(rhs == result.witness->rhs);
    }
}

TEST_CASE("suite: paper tables reproduce the headline values") {
    SuiteOutcome outcome = suite_paper_tables();
    CHECK(outcome.suite_pass);
    const json& r = outcome.report;
    CHECK(r["third_price_collusion"]["pass"] == true);
    CHECK(r["third_price_collusion"]["scp_targeted"]["witness"]["lhs"] == 0.25);
    CHECK(r["third_price_collusion"]["scp_targeted"]["witness"]["rhs"] == 0.5);
    CHECK(r["allocation_bound"]["pass"] == true);
    CHECK(r["efficiency_bound"]["pass"] == true);
}

TEST_CASE("suite: impossibility on a coarse grid keeps only the trivial rules") {
    std::vector<Reserve> reserves = {Reserve::finite(Money(0)), Reserve::finite(Money(1)),
                                     Reserve::inf()};
    GridSpec grid = GridSpec::linear(Money(0), Money(2), Money(1, 2));
    grid.max_profile_size = 2;
    grid.max_fake_bids = 1;
    SuiteOutcome outcome = suite_deterministic_impossibility(reserves, grid, true);
    CHECK(outcome.suite_pass);
    bool saw_triple = false, saw_posted_burn = false;
    for (const auto& row : outcome.report["mechanisms"]) {
        if (!row["triple_pass"].get<bool>()) continue;
        saw_triple = true;
        if (row["anonymous"].get<bool>()) {
            CHECK(row["trivial_equivalent"] == true);
            CHECK(row["max_abs_miner_utility"] == 0);
        } else {
            // The identity-keyed posted-burn class survives the triple and
            // is reported without failing the (anonymity-scoped) suite.
            saw_posted_burn = true;
            CHECK(row["trivial_equivalent"] == false);
        }
    }
    CHECK(saw_triple);  // the infinite-reserve instances and the trivial rule
    CHECK(saw_posted_burn);
}
