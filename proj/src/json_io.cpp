#include "tfm/json_io.hpp"

#include <cmath>
#include <stdexcept>

#include "tfm/catalog.hpp"

namespace tfm {

nlohmann::json rational_to_json(const Rational& r) {
    std::int64_t den = r.den();
    bool pow2 = (den & (den - 1)) == 0;
    if (pow2 && std::llabs(r.num()) < (1LL << 53)) {
        if (r.is_integer()) return nlohmann::json(r.num());
        return nlohmann::json(r.to_double());
    }
    return nlohmann::json(r.str());
}

Rational rational_from_json(const nlohmann::json& j) {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_number_float()) {
        double d = j.get<double>();
        if (!std::isfinite(d)) throw std::invalid_argument("rational: non-finite number");
        // Exact binary expansion: d = mant * 2^exp with integer mant.
        int exp = 0;
        double m = std::frexp(d, &exp);
        auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
        exp -= 53;
        Rational r(mant);
        while (exp > 0) { r *= Rational(2); --exp; }
        while (exp < 0) { r /= Rational(2); ++exp; }
        return r;
    }
    throw std::invalid_argument("rational: expected number or string");
}

nlohmann::json reserve_to_json(const Reserve& r) {
    if (r.infinite) return nlohmann::json("inf");
    return rational_to_json(r.value);
}

Reserve reserve_from_json(const nlohmann::json& j) {
    if (j.is_string() && j.get<std::string>() == "inf") return Reserve::inf();
    return Reserve::finite(rational_from_json(j));
}

std::string identity_token(int id) {
    if (id == kFakeId) return "fake";
    return "b" + std::to_string(id);
}

int identity_from_token(const std::string& token) {
    if (token == "fake") return kFakeId;
    std::string digits = token;
    if (!digits.empty() && digits[0] == 'b') digits = digits.substr(1);
    try {
        std::size_t pos = 0;
        int id = std::stoi(digits, &pos);
        if (pos == digits.size() && id >= 0) return id;
    } catch (const std::exception&) {}
    throw std::invalid_argument("bad identity token '" + token + "'");
}

nlohmann::json mechanism_spec_to_json(const MechanismSpec& spec) {
    nlohmann::json j;
    j["family"] = family_name(spec.family);
    switch (spec.family) {
        case Family::BurnedSecondPrice:
            j["r"] = reserve_to_json(spec.r);
            break;
        case Family::GeneralizedBurnedFirstPrice: {
            j["r"] = reserve_to_json(spec.r);
            nlohmann::json f;
            f["kind"] = spec.f.kind_name();
            if (spec.f.kind == PaymentCurve::Kind::Tabulated) {
                nlohmann::json pts = nlohmann::json::array();
                for (const auto& [b, v] : spec.f.table)
                    pts.push_back({rational_to_json(b), rational_to_json(v)});
                f["points"] = pts;
            }
            j["f"] = f;
            break;
        }
        case Family::NonAnonymousPostedBurn:
            j["r"] = reserve_to_json(spec.r);
            j["i_star"] = identity_token(spec.i_star);
            break;
        default:
            break;
    }
    return j;
}

MechanismSpec mechanism_spec_from_json(const nlohmann::json& j) {
    MechanismSpec spec;
    spec.family = family_from_name(j.at("family").get<std::string>());
    if (j.contains("r")) spec.r = reserve_from_json(j.at("r"));
    if (j.contains("f")) {
        const auto& f = j.at("f");
        std::string kind = f.at("kind").get<std::string>();
        if (kind == "identity") {
            spec.f.kind = PaymentCurve::Kind::Identity;
        } else if (kind == "half-plus-r") {
            spec.f.kind = PaymentCurve::Kind::HalfPlusReserve;
        } else if (kind == "const-r") {
            spec.f.kind = PaymentCurve::Kind::ConstantReserve;
        } else if (kind == "tabulated") {
            spec.f.kind = PaymentCurve::Kind::Tabulated;
            for (const auto& row : f.at("points"))
                spec.f.table.emplace_back(rational_from_json(row.at(0)),
                                          rational_from_json(row.at(1)));
        } else {
            throw std::invalid_argument("unknown payment curve kind '" + kind + "'");
        }
    }
    if (j.contains("i_star")) spec.i_star = identity_from_token(j.at("i_star").get<std::string>());
    return spec;
}

nlohmann::json grid_to_json(const GridSpec& grid) {
    nlohmann::json j;
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : grid.points) pts.push_back(rational_to_json(p));
    j["points"] = pts;
    j["max_profile_size"] = grid.max_profile_size;
    j["max_fake_bids"] = grid.max_fake_bids;
    return j;
}

GridSpec grid_from_json(const nlohmann::json& j) {
    GridSpec g;
    for (const auto& p : j.at("points")) g.points.push_back(rational_from_json(p));
    g.max_profile_size = j.value("max_profile_size", 3);
    g.max_fake_bids = j.value("max_fake_bids", 2);
    g.validate();
    return g;
}

}  // namespace tfm
