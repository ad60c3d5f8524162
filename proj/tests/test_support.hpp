#pragma once

#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "tfm/catalog.hpp"
#include "tfm/core.hpp"

namespace tfm_test {

using tfm::BidEntry;
using tfm::BidProfile;
using tfm::Mechanism;
using tfm::Money;
using tfm::Outcome;

// Deliberately broken rule: allocates to the highest positive bidder and
// both charges and burns half the winning bid, so a coalition can shrink
// the burn by scaling every bid down.
inline Mechanism half_burn_mechanism() {
    return Mechanism(
        "broken-half-burn", true, true,
        [](const BidProfile& p, Outcome& out) {
            if (p.entries.empty()) return;
            int w = 0;
            for (std::size_t i = 1; i < p.entries.size(); ++i)
                if (p.entries[i].bid > p.entries[w].bid) w = static_cast<int>(i);
            if (p.entries[w].bid.is_zero()) return;
            out.alloc[w] = Money(1);
            out.pay[w] = p.entries[w].bid / Money(2);
            out.burn[w] = out.pay[w];
        });
}

inline Mechanism table_mechanism(std::string name,
                                 std::map<std::vector<Money>, Outcome> table,
                                 bool deterministic) {
    auto shared = std::make_shared<std::map<std::vector<Money>, Outcome>>(std::move(table));
    return Mechanism(
        std::move(name), /*anonymous=*/false, deterministic,
        [shared](const BidProfile& p, Outcome& out) {
            std::vector<Money> bids;
            bids.reserve(p.entries.size());
            for (const auto& e : p.entries) bids.push_back(e.bid);
            auto it = shared->find(bids);
            if (it == shared->end())
                throw std::domain_error("table mechanism: profile not tabulated");
            out = it->second;
        });
}

// Randomly perturbed but basically-valid rules: feasibility, individual
// rationality and burn balance hold by construction, everything else (DSIC,
// MMIC, collusion resistance, anonymity) is up to chance. Tabulated over all
// ordered bid vectors up to max_profile_size + max_fake_bids entries.
inline std::vector<Mechanism> random_valid_mechanisms(const tfm::GridSpec& grid, int count,
                                                      unsigned seed) {
    std::mt19937_64 rng(seed);
    std::vector<Mechanism> out;
    const int max_len = grid.max_profile_size + grid.max_fake_bids;

    for (int m = 0; m < count; ++m) {
        bool randomized = m % 2 == 1;
        std::map<std::vector<Money>, Outcome> table;
        std::vector<Money> bids;
        std::uniform_int_distribution<int> quarter(0, 4);

        auto fill = [&](auto&& self, int len) -> void {
            if (static_cast<int>(bids.size()) == len) {
                Outcome o;
                o.resize_zero(bids.size());
                std::uniform_int_distribution<int> pick(0, static_cast<int>(bids.size()));
                int w = pick(rng);  // == size means nobody wins
                if (w < static_cast<int>(bids.size())) {
                    Money a = randomized ? Money(quarter(rng), 4) : Money(1);
                    o.alloc[w] = a;
                    o.pay[w] = a * bids[w] * Money(quarter(rng), 4);
                    o.burn[w] = o.pay[w] * Money(quarter(rng), 4);
                }
                table[bids] = std::move(o);
                return;
            }
            for (const auto& p : grid.points) {
                bids.push_back(p);
                self(self, len);
                bids.pop_back();
            }
        };
        for (int len = 1; len <= max_len; ++len) fill(fill, len);
        out.push_back(table_mechanism("random-perturbed-" + std::to_string(m), std::move(table),
                                      !randomized));
    }
    return out;
}

}  // namespace tfm_test
