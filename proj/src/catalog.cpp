#include "tfm/catalog.hpp"

#include <algorithm>
#include <stdexcept>

namespace tfm {
namespace {

// Lowest index among the maxima; -1 on an empty profile.
int argmax_bid(const BidProfile& p) {
    int best = -1;
    for (std::size_t i = 0; i < p.entries.size(); ++i)
        if (best < 0 || p.entries[i].bid > p.entries[best].bid)
            best = static_cast<int>(i);
    return best;
}

Money highest_other(const BidProfile& p, int skip) {
    Money best(0);
    bool any = false;
    for (std::size_t i = 0; i < p.entries.size(); ++i) {
        if (static_cast<int>(i) == skip) continue;
        if (!any || p.entries[i].bid > best) best = p.entries[i].bid;
        any = true;
    }
    return any ? best : Money(0);
}

Money third_highest(const BidProfile& p) {
    if (p.entries.size() < 3) return Money(0);
    // Top three of a handful of bids; profiles are tiny.
    Money a(0), b(0), c(0);
    bool ha = false, hb = false, hc = false;
    for (const auto& e : p.entries) {
        const Money& x = e.bid;
        if (!ha || x > a) { c = b; hc = hb; b = a; hb = ha; a = x; ha = true; }
        else if (!hb || x > b) { c = b; hc = hb; b = x; hb = true; }
        else if (!hc || x > c) { c = x; hc = true; }
    }
    return c;
}

void check_curve(const PaymentCurve& f, const Reserve& r) {
    if (f.kind != PaymentCurve::Kind::Tabulated) return;
    if (f.table.empty())
        throw std::invalid_argument("payment curve: empty table");
    for (std::size_t i = 0; i + 1 < f.table.size(); ++i) {
        if (!(f.table[i].first < f.table[i + 1].first))
            throw std::invalid_argument("payment curve: table bids not strictly increasing");
        if (f.table[i + 1].second < f.table[i].second)
            throw std::invalid_argument("payment curve: table not monotone non-decreasing");
    }
    for (const auto& [bid, value] : f.table) {
        if (value.is_negative())
            throw std::invalid_argument("payment curve: negative payment");
        if (!r.infinite && bid >= r.value && value < r.value)
            throw std::invalid_argument("payment curve: f(v) < r at an allocatable bid");
    }
}

}  // namespace

Money PaymentCurve::evaluate(const Money& winning_bid, const Money& reserve) const {
    switch (kind) {
        case Kind::Identity:
            return winning_bid;
        case Kind::HalfPlusReserve:
            return winning_bid / Money(2) + reserve;
        case Kind::ConstantReserve:
            return reserve;
        case Kind::Tabulated: {
            auto it = std::lower_bound(table.begin(), table.end(), winning_bid,
                                       [](const auto& row, const Money& b) { return row.first < b; });
            if (it == table.end() || it->first != winning_bid)
                throw std::domain_error("payment curve: bid " + winning_bid.str() + " not tabulated");
            return it->second;
        }
    }
    throw std::logic_error("payment curve: bad kind");
}

std::string PaymentCurve::kind_name() const {
    switch (kind) {
        case Kind::Identity: return "identity";
        case Kind::HalfPlusReserve: return "half-plus-r";
        case Kind::ConstantReserve: return "const-r";
        case Kind::Tabulated: return "tabulated";
    }
    return "?";
}

std::string family_name(Family f) {
    switch (f) {
        case Family::Trivial: return "trivial";
        case Family::FirstPrice: return "first-price";
        case Family::SecondPrice: return "second-price";
        case Family::ThirdPrice: return "third-price";
        case Family::BurnedSecondPrice: return "burned-second-price";
        case Family::GeneralizedBurnedFirstPrice: return "generalized-burned-first-price";
        case Family::NonAnonymousPostedBurn: return "non-anonymous-posted-burn";
    }
    return "?";
}

Family family_from_name(const std::string& name) {
    for (Family f : {Family::Trivial, Family::FirstPrice, Family::SecondPrice, Family::ThirdPrice,
                     Family::BurnedSecondPrice, Family::GeneralizedBurnedFirstPrice,
                     Family::NonAnonymousPostedBurn})
        if (family_name(f) == name) return f;
    throw std::invalid_argument("unknown mechanism family '" + name + "'");
}

Mechanism make_mechanism(const MechanismSpec& spec) {
    switch (spec.family) {
        case Family::Trivial:
            return Mechanism("trivial", true, true, [](const BidProfile&, Outcome&) {}, spec);

        case Family::FirstPrice:
            return Mechanism(
                "first-price", true, true,
                [](const BidProfile& p, Outcome& out) {
                    int w = argmax_bid(p);
                    if (w < 0) return;
                    out.alloc[w] = Money(1);
                    out.pay[w] = p.entries[w].bid;
                },
                spec);

        case Family::SecondPrice:
            return Mechanism(
                "second-price", true, true,
                [](const BidProfile& p, Outcome& out) {
                    int w = argmax_bid(p);
                    if (w < 0) return;
                    out.alloc[w] = Money(1);
                    out.pay[w] = highest_other(p, w);
                },
                spec);

        case Family::ThirdPrice:
            return Mechanism(
                "third-price", true, true,
                [](const BidProfile& p, Outcome& out) {
                    int w = argmax_bid(p);
                    if (w < 0) return;
                    out.alloc[w] = Money(1);
                    out.pay[w] = third_highest(p);
                },
                spec);

        case Family::BurnedSecondPrice: {
            Reserve r = spec.r;
            std::string name = "burned-second-price(r=" + r.str() + ")";
            return Mechanism(
                name, true, true,
                [r](const BidProfile& p, Outcome& out) {
                    if (r.infinite) return;
                    int w = argmax_bid(p);
                    if (w < 0 || p.entries[w].bid < r.value) return;
                    out.alloc[w] = Money(1);
                    out.pay[w] = std::max(r.value, highest_other(p, w));
                    out.burn[w] = r.value;
                },
                spec);
        }

        case Family::GeneralizedBurnedFirstPrice: {
            Reserve r = spec.r;
            check_curve(spec.f, r);
            PaymentCurve f = spec.f;
            std::string name =
                "generalized-burned-first-price(f=" + f.kind_name() + ",r=" + r.str() + ")";
            return Mechanism(
                name, true, true,
                [r, f](const BidProfile& p, Outcome& out) {
                    if (r.infinite) return;
                    int w = argmax_bid(p);
                    if (w < 0 || p.entries[w].bid < r.value) return;
                    out.alloc[w] = Money(1);
                    out.pay[w] = f.evaluate(p.entries[w].bid, r.value);
                    out.burn[w] = r.value;
                },
                spec);
        }

        case Family::NonAnonymousPostedBurn: {
            Reserve r = spec.r;
            int i_star = spec.i_star;
            if (i_star < 0)
                throw std::invalid_argument("non-anonymous posted burn: bad identity");
            std::string name =
                "non-anonymous-posted-burn(i*=b" + std::to_string(i_star) + ",r=" + r.str() + ")";
            return Mechanism(
                name, /*anonymous=*/false, true,
                [r, i_star](const BidProfile& p, Outcome& out) {
                    if (r.infinite) return;
                    for (std::size_t i = 0; i < p.entries.size(); ++i) {
                        if (p.entries[i].id != i_star) continue;
                        if (p.entries[i].bid >= r.value) {
                            out.alloc[i] = Money(1);
                            out.pay[i] = r.value;
                            out.burn[i] = r.value;
                        }
                        return;
                    }
                },
                spec);
        }
    }
    throw std::logic_error("make_mechanism: bad family");
}

std::vector<PaymentCurve> payment_curve_menu() {
    return {PaymentCurve{PaymentCurve::Kind::Identity, {}},
            PaymentCurve{PaymentCurve::Kind::HalfPlusReserve, {}},
            PaymentCurve{PaymentCurve::Kind::ConstantReserve, {}}};
}

std::vector<Mechanism> enumerate_family(Family family, const std::vector<Reserve>& reserves) {
    std::vector<Mechanism> out;
    switch (family) {
        case Family::BurnedSecondPrice:
            for (const auto& r : reserves) {
                MechanismSpec s;
                s.family = family;
                s.r = r;
                out.push_back(make_mechanism(s));
            }
            break;
        case Family::GeneralizedBurnedFirstPrice:
            for (const auto& r : reserves)
                for (const auto& f : payment_curve_menu()) {
                    MechanismSpec s;
                    s.family = family;
                    s.r = r;
                    s.f = f;
                    out.push_back(make_mechanism(s));
                }
            break;
        case Family::NonAnonymousPostedBurn:
            for (const auto& r : reserves) {
                MechanismSpec s;
                s.family = family;
                s.r = r;
                s.i_star = 0;
                out.push_back(make_mechanism(s));
            }
            break;
        default: {
            MechanismSpec s;
            s.family = family;
            out.push_back(make_mechanism(s));
            break;
        }
    }
    return out;
}

std::vector<Mechanism> enumerate_family(Family family, const GridSpec& param_grid) {
    std::vector<Reserve> reserves;
    reserves.reserve(param_grid.points.size());
    for (const auto& p : param_grid.points) reserves.push_back(Reserve::finite(p));
    return enumerate_family(family, reserves);
}

std::vector<Mechanism> default_catalog() {
    std::vector<Mechanism> out;
    MechanismSpec s;
    for (Family f : {Family::Trivial, Family::FirstPrice, Family::SecondPrice, Family::ThirdPrice}) {
        s = MechanismSpec{};
        s.family = f;
        out.push_back(make_mechanism(s));
    }
    s = MechanismSpec{};
    s.family = Family::BurnedSecondPrice;
    s.r = Reserve::finite(Money(1));
    out.push_back(make_mechanism(s));

    for (auto kind : {PaymentCurve::Kind::Identity, PaymentCurve::Kind::ConstantReserve}) {
        s = MechanismSpec{};
        s.family = Family::GeneralizedBurnedFirstPrice;
        s.r = Reserve::finite(Money(1));
        s.f.kind = kind;
        out.push_back(make_mechanism(s));
    }

    s = MechanismSpec{};
    s.family = Family::NonAnonymousPostedBurn;
    s.r = Reserve::finite(Money(1));
    s.i_star = 0;
    out.push_back(make_mechanism(s));
    return out;
}

}  // namespace tfm
