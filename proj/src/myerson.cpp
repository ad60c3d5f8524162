#include "tfm/myerson.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

#include "tfm/json_io.hpp"

namespace tfm {
namespace {

void all_bid_vectors(const std::vector<Money>& pts, int n, std::vector<Money>& cur,
                     const std::function<void(const std::vector<Money>&)>& fn) {
    if (static_cast<int>(cur.size()) == n) {
        fn(cur);
        return;
    }
    for (const auto& p : pts) {
        cur.push_back(p);
        all_bid_vectors(pts, n, cur, fn);
        cur.pop_back();
    }
}

}  // namespace

const std::vector<Money>& TabulatedAllocation::alloc_for(const std::vector<Money>& bids) const {
    auto it = table.find(bids);
    if (it == table.end())
        throw std::domain_error("TabulatedAllocation: profile not tabulated");
    return it->second;
}

void TabulatedAllocation::validate() const {
    grid.validate();
    for (const auto& [bids, alloc] : table) {
        if (alloc.size() != bids.size())
            throw std::invalid_argument("TabulatedAllocation: row size mismatch");
        Money total(0);
        for (const auto& a : alloc) {
            if (a.is_negative() || a > Money(1))
                throw std::invalid_argument("TabulatedAllocation: probability outside [0,1]");
            total += a;
        }
        if (total > Money(1))
            throw std::invalid_argument("TabulatedAllocation: allocations sum above 1");
        for (const auto& b : bids)
            if (!grid.contains(b))
                throw std::invalid_argument("TabulatedAllocation: off-grid bid in key");
    }
}

MonotoneCheck is_monotone(const TabulatedAllocation& alloc) {
    MonotoneCheck result;
    const auto& pts = alloc.grid.points;
    for (const auto& [bids, probs] : alloc.table) {
        for (std::size_t i = 0; i < bids.size(); ++i) {
            auto pos = std::lower_bound(pts.begin(), pts.end(), bids[i]);
            if (pos == pts.end() || *pos != bids[i] || pos + 1 == pts.end()) continue;
            std::vector<Money> up = bids;
            up[i] = *(pos + 1);
            auto it = alloc.table.find(up);
            if (it == alloc.table.end()) continue;
            if (it->second[i] < probs[i]) {
                result.monotone = false;
                result.low_profile = bids;
                result.high_profile = up;
                result.index = static_cast<int>(i);
                return result;
            }
        }
    }
    return result;
}

Money myerson_payment(const TabulatedAllocation& alloc, int i, const std::vector<Money>& bids) {
    if (i < 0 || i >= static_cast<int>(bids.size()))
        throw std::out_of_range("myerson_payment: index out of range");
    const auto& pts = alloc.grid.points;
    auto pos = std::lower_bound(pts.begin(), pts.end(), bids[i]);
    if (pos == pts.end() || *pos != bids[i])
        throw std::domain_error("myerson_payment: bid off the grid");

    Money own_prob = alloc.alloc_for(bids)[i];
    Money riemann(0);
    Money prev(0);
    std::vector<Money> probe = bids;
    // The sum walks the own-bid axis anyway, so monotonicity along the
    // integrated prefix is verified as it goes (is_monotone covers the
    // whole table).
    for (auto it = pts.begin(); it != pos; ++it) {
        probe[i] = *it;
        Money a = alloc.alloc_for(probe)[i];
        if (a < prev)
            throw std::domain_error("myerson_payment: allocation not monotone below the bid");
        prev = a;
        riemann += a * (*(it + 1) - *it);
    }
    if (own_prob < prev)
        throw std::domain_error("myerson_payment: allocation not monotone below the bid");
    return own_prob * bids[i] - riemann;
}

namespace {

// Equivariance under adjacent transpositions generates the full symmetric
// group, so checking swaps of neighbouring slots decides equivariance of a
// table; rows whose swapped key is absent are skipped (partial tables).
//
// The check is strict: tie rows count, so a table with a deterministic
// tie-break comes out non-equivariant and the derived mechanism gets the
// full (uncanonicalized) search space in the checkers. That costs time,
// never soundness. Fully symmetric tables (randomized split ties) keep the
// canonicalized search.
bool table_is_equivariant(const std::map<std::vector<Money>, std::vector<Money>>& table) {
    for (const auto& [bids, values] : table) {
        for (std::size_t k = 0; k + 1 < bids.size(); ++k) {
            std::vector<Money> swapped = bids;
            std::swap(swapped[k], swapped[k + 1]);
            auto it = table.find(swapped);
            if (it == table.end()) continue;
            for (std::size_t i = 0; i < bids.size(); ++i) {
                std::size_t j = i == k ? k + 1 : i == k + 1 ? k : i;
                if (it->second[j] != values[i]) return false;
            }
        }
    }
    return true;
}

}  // namespace

Mechanism derive_dsic_mechanism(const TabulatedAllocation& alloc,
                                const std::map<std::vector<Money>, std::vector<Money>>& burn,
                                const std::string& name) {
    alloc.validate();
    MonotoneCheck mono = is_monotone(alloc);
    if (!mono.monotone)
        throw std::domain_error("derive_dsic_mechanism: allocation table not monotone");
    bool anonymous = table_is_equivariant(alloc.table) && table_is_equivariant(burn);

    // Precompute the whole outcome table; evaluation is then a lookup.
    auto outcomes = std::make_shared<std::map<std::vector<Money>, Outcome>>();
    bool deterministic = true;
    for (const auto& [bids, probs] : alloc.table) {
        Outcome out;
        out.alloc = probs;
        out.pay.resize(bids.size());
        out.burn.assign(bids.size(), Money(0));
        auto bit = burn.find(bids);
        for (std::size_t i = 0; i < bids.size(); ++i) {
            out.pay[i] = myerson_payment(alloc, static_cast<int>(i), bids);
            if (bit != burn.end()) out.burn[i] = bit->second[i];
            if (out.burn[i].is_negative() || out.burn[i] > out.pay[i])
                throw std::invalid_argument(
                    "derive_dsic_mechanism: burn outside [0, derived payment]");
            if (!probs[i].is_zero() && probs[i] != Money(1)) deterministic = false;
        }
        (*outcomes)[bids] = std::move(out);
    }

    return Mechanism(
        name, anonymous, deterministic,
        [outcomes](const BidProfile& p, Outcome& out) {
            std::vector<Money> bids;
            bids.reserve(p.entries.size());
            for (const auto& e : p.entries) bids.push_back(e.bid);
            auto it = outcomes->find(bids);
            if (it == outcomes->end())
                throw std::domain_error("table-backed mechanism: profile not tabulated");
            out = it->second;
        });
}

TabulatedAllocation tabulate_mechanism(const Mechanism& mech, const GridSpec& grid, int max_size) {
    TabulatedAllocation tab;
    tab.grid = grid;
    std::vector<Money> cur;
    for (int n = 1; n <= max_size; ++n)
        all_bid_vectors(grid.points, n, cur, [&](const std::vector<Money>& bids) {
            tab.table[bids] = mech.evaluate(BidProfile::of_bids(bids)).alloc;
        });
    return tab;
}

std::map<std::vector<Money>, std::vector<Money>> tabulate_burn(const Mechanism& mech,
                                                               const GridSpec& grid, int max_size) {
    std::map<std::vector<Money>, std::vector<Money>> burn;
    std::vector<Money> cur;
    for (int n = 1; n <= max_size; ++n)
        all_bid_vectors(grid.points, n, cur, [&](const std::vector<Money>& bids) {
            burn[bids] = mech.evaluate(BidProfile::of_bids(bids)).burn;
        });
    return burn;
}

std::string tabulated_allocation_to_json(const TabulatedAllocation& tab) {
    nlohmann::json j;
    j["grid"] = grid_to_json(tab.grid);
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [bids, alloc] : tab.table) {
        nlohmann::json row;
        nlohmann::json b = nlohmann::json::array(), a = nlohmann::json::array();
        for (const auto& x : bids) b.push_back(rational_to_json(x));
        for (const auto& x : alloc) a.push_back(rational_to_json(x));
        row["bids"] = b;
        row["alloc"] = a;
        rows.push_back(row);
    }
    j["rows"] = rows;
    return j.dump();
}

TabulatedAllocation tabulated_allocation_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    TabulatedAllocation tab;
    tab.grid = grid_from_json(j.at("grid"));
    for (const auto& row : j.at("rows")) {
        std::vector<Money> bids, alloc;
        for (const auto& x : row.at("bids")) bids.push_back(rational_from_json(x));
        for (const auto& x : row.at("alloc")) alloc.push_back(rational_from_json(x));
        tab.table[std::move(bids)] = std::move(alloc);
    }
    tab.validate();
    return tab;
}

std::string tabulated_allocation_to_csv(const TabulatedAllocation& tab) {
    std::string out = "n,bids,alloc\n";
    for (const auto& [bids, alloc] : tab.table) {
        out += std::to_string(bids.size());
        for (const auto& b : bids) out += "," + b.str();
        for (const auto& a : alloc) out += "," + a.str();
        out += "\n";
    }
    return out;
}

}  // namespace tfm
