// tfm-lab: property checks, reproduction suites, and bound computations for
// single-item transaction fee mechanisms on discretized bid grids.
//
// Violations are findings and exit 0; only operational errors and suite
// failures exit nonzero. Reports are JSON (schema version 1).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "tfm/json_io.hpp"
#include "tfm/report.hpp"

namespace {

using tfm::Money;

// "lo..hi:step" with rationals accepted as p/q.
tfm::GridSpec parse_linear_grid(const std::string& text) {
    auto dots = text.find("..");
    auto colon = text.rfind(':');
    if (dots == std::string::npos || colon == std::string::npos || colon < dots)
        throw CLI::ValidationError("--grid", "expected lo..hi:step, e.g. 0..2:1/4");
    Money lo = Money::parse(text.substr(0, dots));
    Money hi = Money::parse(text.substr(dots + 2, colon - dots - 2));
    Money step = Money::parse(text.substr(colon + 1));
    return tfm::GridSpec::linear(lo, hi, step);
}

// "base:ratio:count".
tfm::GridSpec parse_geom_grid(const std::string& text) {
    auto c1 = text.find(':');
    auto c2 = text.rfind(':');
    if (c1 == std::string::npos || c2 == c1)
        throw CLI::ValidationError("--grid-geom", "expected base:ratio:count, e.g. 1:3/2:20");
    Money base = Money::parse(text.substr(0, c1));
    Money ratio = Money::parse(text.substr(c1 + 1, c2 - c1 - 1));
    int count = std::stoi(text.substr(c2 + 1));
    return tfm::GridSpec::geometric(base, ratio, count);
}

int parse_coalition(const std::string& text) {
    if (text == "all") return -1;
    int c = std::stoi(text);
    if (c < 0) throw CLI::ValidationError("--coalition", "expected a non-negative count or 'all'");
    return c;
}

// "dsic,mmic,oca:1,scp:all,scale,ctpa,anon"
std::vector<tfm::PropertyJob> parse_properties(const std::string& text, int default_cap) {
    std::vector<tfm::PropertyJob> jobs;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                      : comma - pos);
        pos = comma == std::string::npos ? text.size() + 1 : comma + 1;
        if (tok.empty()) continue;
        std::string head = tok, arg;
        if (auto c = tok.find(':'); c != std::string::npos) {
            head = tok.substr(0, c);
            arg = tok.substr(c + 1);
        }
        tfm::PropertyJob job;
        job.coalition_cap = arg.empty() ? default_cap : parse_coalition(arg);
        if (head == "dsic") job.kind = tfm::PropertyKind::Dsic;
        else if (head == "mmic") job.kind = tfm::PropertyKind::Mmic;
        else if (head == "oca") job.kind = tfm::PropertyKind::Oca;
        else if (head == "oca-joint") job.kind = tfm::PropertyKind::OcaJointForm;
        else if (head == "scp") job.kind = tfm::PropertyKind::Scp;
        else if (head == "scale") job.kind = tfm::PropertyKind::ScaleInvariance;
        else if (head == "ctpa") job.kind = tfm::PropertyKind::Ctpa;
        else if (head == "anon") job.kind = tfm::PropertyKind::Anonymity;
        else throw CLI::ValidationError("--props", "unknown property '" + head + "'");
        jobs.push_back(job);
    }
    return jobs;
}

tfm::MechanismSpec spec_from_flags(const std::string& family, const std::string& r,
                                   const std::string& fcurve, const std::string& i_star,
                                   const std::string& mech_json) {
    if (!mech_json.empty()) {
        nlohmann::json j = nlohmann::json::parse(mech_json);
        return tfm::mechanism_spec_from_json(j);
    }
    tfm::MechanismSpec spec;
    spec.family = tfm::family_from_name(family);
    if (!r.empty()) spec.r = r == "inf" ? tfm::Reserve::inf() : tfm::Reserve::finite(Money::parse(r));
    if (!fcurve.empty()) {
        if (fcurve == "identity") spec.f.kind = tfm::PaymentCurve::Kind::Identity;
        else if (fcurve == "half-plus-r") spec.f.kind = tfm::PaymentCurve::Kind::HalfPlusReserve;
        else if (fcurve == "const-r") spec.f.kind = tfm::PaymentCurve::Kind::ConstantReserve;
        else throw CLI::ValidationError("--fcurve", "expected identity|half-plus-r|const-r");
    }
    if (!i_star.empty()) spec.i_star = tfm::identity_from_token(i_star);
    return spec;
}

void emit(const nlohmann::json& report, const std::string& out_path) {
    if (!out_path.empty()) {
        std::ofstream os(out_path);
        if (!os) throw std::runtime_error("cannot write report to " + out_path);
        os << report.dump(2) << "\n";
    }
    std::cout << report.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification lab for single-item transaction fee mechanisms"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string out_path;
    bool deterministic = false;
    app.add_option("--out", out_path, "also write the JSON report to this path");
    app.add_flag("--deterministic", deterministic,
                 "sequential canonical-order search; byte-identical reports");

    // check
    auto* check = app.add_subcommand("check", "run property checkers on one mechanism");
    check->fallthrough();
    std::string family = "second-price", r_text, fcurve, i_star, mech_json;
    std::string grid_text = "0..2:1/4", props_text = "dsic,mmic,oca:all,scp:all";
    std::string coalition_text = "all";
    int fake_bids = 2, profile_size = 3;
    check->add_option("--family", family, "mechanism family name");
    check->add_option("--r", r_text, "reserve / burn level (rational or 'inf')");
    check->add_option("--fcurve", fcurve, "payment curve: identity|half-plus-r|const-r");
    check->add_option("--i-star", i_star, "allocatable identity for the non-anonymous family");
    check->add_option("--mech-json", mech_json, "full mechanism spec as inline JSON");
    check->add_option("--grid", grid_text, "bid grid lo..hi:step");
    check->add_option("--props", props_text,
                      "comma list: dsic,mmic,oca[:c],oca-joint,scp[:c],scale,ctpa,anon");
    check->add_option("--coalition", coalition_text, "default coalition cap (count or 'all')");
    check->add_option("--fake-bids", fake_bids, "fake-bid cap for the searches");
    check->add_option("--profile-size", profile_size, "max bidders per profile");

    // suite
    auto* suite = app.add_subcommand("suite", "pre-built reproduction suites");
    suite->fallthrough();
    suite->require_subcommand(1);
    auto* suite_imp = suite->add_subcommand(
        "impossibility", "only the trivial rule survives DSIC+MMIC+OCA(1)");
    suite_imp->fallthrough();
    std::string r_grid_text = "0,1/2,1,2,inf", imp_grid_text = "0..4:1/2";
    suite_imp->add_option("--r-grid", r_grid_text, "comma list of reserves (rationals or 'inf')");
    suite_imp->add_option("--grid", imp_grid_text, "bid grid lo..hi:step");
    auto* suite_paper = suite->add_subcommand("paper", "headline value reproductions");
    suite_paper->fallthrough();

    // bounds
    auto* bounds = app.add_subcommand("bounds", "randomized-mechanism bounds");
    bounds->fallthrough();
    bounds->require_subcommand(1);
    auto* balloc = bounds->add_subcommand("allocation", "single-bid allocation cap");
    balloc->fallthrough();
    double a_max = 1e6, tol = 1e-4;
    balloc->add_option("--a-max", a_max, "largest ratio A in the search domain");
    balloc->add_option("--tol", tol, "search tolerance");
    auto* beff = bounds->add_subcommand("efficiency", "two-bidder efficiency bound");
    beff->fallthrough();
    double v1 = 19.8, v2 = 2.4, u_ratio = 0.842, eff_tol = 1e-4;
    beff->add_option("--v1", v1, "higher value")->required();
    beff->add_option("--v2", v2, "lower value")->required();
    beff->add_option("--u-ratio", u_ratio, "candidate utility as a fraction of v1");
    beff->add_option("--tol", eff_tol, "bisection tolerance");

    // lp
    auto* lp = app.add_subcommand("lp", "build and solve the two-bidder feasibility LP");
    lp->fallthrough();
    std::string geom_text = "1:3/2:20", mps_path;
    lp->add_option("--grid-geom", geom_text, "geometric grid base:ratio:count");
    lp->add_option("--mps", mps_path, "export the instance in MPS format");

    // catalog
    auto* catalog = app.add_subcommand("catalog", "mechanism catalog");
    catalog->fallthrough();
    catalog->require_subcommand(1);
    catalog->add_subcommand("list", "list catalog mechanisms with their specs")->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*check) {
            tfm::RunConfig config;
            config.mechanism = spec_from_flags(family, r_text, fcurve, i_star, mech_json);
            config.grid = parse_linear_grid(grid_text);
            config.grid.max_fake_bids = fake_bids;
            config.grid.max_profile_size = profile_size;
            config.properties = parse_properties(props_text, parse_coalition(coalition_text));
            config.deterministic = deterministic;
            config.out_path = out_path;
            emit(tfm::run(config), "");
            return 0;
        }
        if (*suite_imp) {
            std::vector<tfm::Reserve> reserves;
            std::size_t pos = 0;
            while (pos <= r_grid_text.size()) {
                auto comma = r_grid_text.find(',', pos);
                std::string tok = r_grid_text.substr(
                    pos, comma == std::string::npos ? std::string::npos : comma - pos);
                pos = comma == std::string::npos ? r_grid_text.size() + 1 : comma + 1;
                if (tok.empty()) continue;
                reserves.push_back(tok == "inf" ? tfm::Reserve::inf()
                                                : tfm::Reserve::finite(Money::parse(tok)));
            }
            auto outcome = tfm::suite_deterministic_impossibility(
                reserves, parse_linear_grid(imp_grid_text), deterministic);
            emit(outcome.report, out_path);
            return outcome.suite_pass ? 0 : 1;
        }
        if (*suite_paper) {
            auto outcome = tfm::suite_paper_tables();
            emit(outcome.report, out_path);
            return outcome.suite_pass ? 0 : 1;
        }
        if (*balloc) {
            tfm::RunConfig config;
            config.grid = tfm::GridSpec::linear(Money(0), Money(1), Money(1));
            tfm::BoundsJob job;
            job.kind = tfm::BoundsJob::Kind::AllocationBound;
            job.a_max = a_max;
            job.tol = tol;
            config.bounds.push_back(job);
            config.deterministic = deterministic;
            config.out_path = out_path;
            emit(tfm::run(config), "");
            return 0;
        }
        if (*beff) {
            tfm::RunConfig config;
            config.grid = tfm::GridSpec::linear(Money(0), Money(1), Money(1));
            tfm::BoundsJob job;
            job.kind = tfm::BoundsJob::Kind::Efficiency;
            job.v1 = v1;
            job.v2 = v2;
            job.u_ratio = u_ratio;
            job.tol = eff_tol;
            config.bounds.push_back(job);
            config.deterministic = deterministic;
            config.out_path = out_path;
            emit(tfm::run(config), "");
            return 0;
        }
        if (*lp) {
            tfm::RunConfig config;
            config.grid = tfm::GridSpec::linear(Money(0), Money(1), Money(1));
            tfm::BoundsJob job;
            job.kind = tfm::BoundsJob::Kind::Lp;
            job.lp_grid = parse_geom_grid(geom_text);
            job.mps_path = mps_path;
            config.bounds.push_back(job);
            config.deterministic = deterministic;
            config.out_path = out_path;
            emit(tfm::run(config), "");
            return 0;
        }
        if (*catalog) {
            nlohmann::json rows = nlohmann::json::array();
            for (const auto& mech : tfm::default_catalog()) {
                nlohmann::json row;
                row["name"] = mech.name();
                row["anonymous"] = mech.anonymous();
                row["deterministic"] = mech.deterministic();
                if (mech.spec()) row["spec"] = tfm::mechanism_spec_to_json(*mech.spec());
                rows.push_back(row);
            }
            nlohmann::json report;
            report["schema_version"] = tfm::kSchemaVersion;
            report["catalog"] = rows;
            emit(report, out_path);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
