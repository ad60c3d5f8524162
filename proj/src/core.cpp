#include "tfm/core.hpp"

#include <algorithm>
#include <stdexcept>

namespace tfm {

void BidProfile::validate() const {
    bool seen_fake = false;
    int reals = 0;
    for (const auto& e : entries) {
        if (e.bid.is_negative())
            throw std::invalid_argument("BidProfile: negative bid");
        if (e.fake) {
            seen_fake = true;
        } else {
            if (seen_fake)
                throw std::invalid_argument("BidProfile: real entry after a fake entry");
            ++reals;
        }
    }
    if (true_values) {
        if (static_cast<int>(true_values->size()) != reals)
            throw std::invalid_argument("BidProfile: true_values length != number of real entries");
        for (const auto& v : *true_values)
            if (v.is_negative())
                throw std::invalid_argument("BidProfile: negative true value");
    }
}

BidProfile BidProfile::of_bids(const std::vector<Money>& bids) {
    BidProfile p;
    p.entries.reserve(bids.size());
    for (std::size_t i = 0; i < bids.size(); ++i)
        p.entries.push_back(BidEntry{bids[i], false, static_cast<int>(i)});
    return p;
}

BidProfile BidProfile::of_values(const std::vector<Money>& values) {
    BidProfile p = of_bids(values);
    p.true_values = values;
    return p;
}

void GridSpec::validate() const {
    if (points.empty())
        throw std::invalid_argument("GridSpec: empty grid");
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
        if (!(points[i] < points[i + 1]))
            throw std::invalid_argument("GridSpec: points not strictly increasing");
    if (points.front().is_negative())
        throw std::invalid_argument("GridSpec: negative grid point");
    if (!contains(Money(0)))
        throw std::invalid_argument("GridSpec: grid must contain 0");
    if (max_profile_size < 1)
        throw std::invalid_argument("GridSpec: max_profile_size must be >= 1");
    if (max_fake_bids < 0)
        throw std::invalid_argument("GridSpec: max_fake_bids must be >= 0");
}

bool GridSpec::contains(const Money& m) const {
    return std::binary_search(points.begin(), points.end(), m);
}

GridSpec GridSpec::linear(Money lo, Money hi, Money step) {
    if (!(step > Money(0)) || hi < lo)
        throw std::invalid_argument("GridSpec::linear: need step > 0 and hi >= lo");
    GridSpec g;
    if (Money(0) < lo) g.points.push_back(Money(0));
    for (Money x = lo; x <= hi; x += step) g.points.push_back(x);
    g.validate();
    return g;
}

GridSpec GridSpec::geometric(Money base, Money ratio, int count) {
    if (!(base > Money(0)) || !(ratio > Money(1)) || count < 1)
        throw std::invalid_argument("GridSpec::geometric: need base > 0, ratio > 1, count >= 1");
    GridSpec g;
    g.points.push_back(Money(0));
    Money x = base;
    for (int i = 0; i < count; ++i, x *= ratio) g.points.push_back(x);
    g.validate();
    return g;
}

Money bidder_utility(const Mechanism& mech, const BidProfile& profile, int i, const Money& v_i) {
    if (i < 0 || i >= static_cast<int>(profile.entries.size()))
        throw std::out_of_range("bidder_utility: index out of range");
    Outcome out = mech.evaluate(profile);
    return bidder_utility_of(out, i, v_i);
}

Money miner_utility(const Mechanism& mech, const BidProfile& profile) {
    Outcome out = mech.evaluate(profile);
    return miner_utility_of(out, profile);
}

Money joint_utility(const Mechanism& mech, const BidProfile& profile,
                    const std::vector<Money>& values) {
    if (static_cast<int>(values.size()) != profile.real_count())
        throw std::invalid_argument("joint_utility: values length != number of real entries");
    Outcome out = mech.evaluate(profile);
    Money joint = joint_utility_of(out, profile, values);

    // The joint utility decomposes as miner utility plus the bidders' sum;
    // both routes are exact, so any mismatch is an arithmetic bug.
    Money check = miner_utility_of(out, profile);
    for (std::size_t i = 0; i < values.size(); ++i)
        check += bidder_utility_of(out, static_cast<int>(i), values[i]);
    if (check != joint)
        throw std::logic_error("joint_utility: decomposition identity failed");
    return joint;
}

Money bidder_utility_of(const Outcome& out, int i, const Money& v_i) {
    return v_i * out.alloc[i] - out.pay[i];
}

Money miner_utility_of(const Outcome& out, const BidProfile& profile) {
    Money total(0);
    for (std::size_t i = 0; i < profile.entries.size(); ++i) {
        if (profile.entries[i].fake)
            total -= out.burn[i];
        else
            total += out.pay[i] - out.burn[i];
    }
    return total;
}

Money joint_utility_of(const Outcome& out, const BidProfile& profile,
                       const std::vector<Money>& values) {
    Money total(0);
    std::size_t real = 0;
    for (std::size_t i = 0; i < profile.entries.size(); ++i) {
        if (profile.entries[i].fake) {
            total -= out.burn[i];
        } else {
            total += values[real] * out.alloc[i] - out.burn[i];
            ++real;
        }
    }
    return total;
}

std::string basic_violation_name(BasicViolation v) {
    switch (v) {
        case BasicViolation::Feasibility: return "Feasibility";
        case BasicViolation::IndividualRationality: return "IndividualRationality";
        case BasicViolation::BurnBalance: return "BurnBalance";
    }
    return "?";
}

std::vector<BasicViolation> validate_outcome(const Outcome& out, const BidProfile& profile) {
    std::vector<BasicViolation> violations;
    const std::size_t n = profile.entries.size();
    if (out.alloc.size() != n || out.pay.size() != n || out.burn.size() != n)
        throw std::invalid_argument("validate_outcome: outcome size mismatch");

    Money total_alloc(0);
    bool alloc_ok = true;
    for (const auto& a : out.alloc) {
        if (a.is_negative() || a > Money(1)) alloc_ok = false;
        total_alloc += a;
    }
    if (!alloc_ok || total_alloc > Money(1))
        violations.push_back(BasicViolation::Feasibility);

    bool ir_ok = true, bb_ok = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (out.pay[i] > out.alloc[i] * profile.entries[i].bid) ir_ok = false;
        if (out.burn[i].is_negative() || out.burn[i] > out.pay[i]) bb_ok = false;
    }
    if (!ir_ok) violations.push_back(BasicViolation::IndividualRationality);
    if (!bb_ok) violations.push_back(BasicViolation::BurnBalance);
    return violations;
}

}  // namespace tfm
