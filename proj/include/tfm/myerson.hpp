#pragma once

#include <map>
#include <optional>

#include "tfm/core.hpp"

namespace tfm {

/// Allocation probabilities tabulated per ordered bid vector on a grid.
/// Keys must stay on the grid; lookups off the table throw
/// std::domain_error. Sum of entries per profile must be <= 1.
struct TabulatedAllocation {
    GridSpec grid;
    std::map<std::vector<Money>, std::vector<Money>> table;

    const std::vector<Money>& alloc_for(const std::vector<Money>& bids) const;
    void validate() const;
};

struct MonotoneCheck {
    bool monotone = true;
    // First offending pair: same rivals, higher own bid, lower allocation.
    std::optional<std::vector<Money>> low_profile;
    std::optional<std::vector<Money>> high_profile;
    std::optional<int> index;
};

/// True iff for each fixed set of rival bids, the allocation of entry i is
/// non-decreasing along the grid in its own bid.
MonotoneCheck is_monotone(const TabulatedAllocation& alloc);

/// The unique payment making a monotone tabulated allocation truthful:
/// a(b_i, b_-i) * b_i minus the left-Riemann sum of a(t, b_-i) over [0, b_i]
/// on the grid (a(t) held constant on [g_k, g_{k+1})). Exact for step
/// functions, which covers every deterministic rule; for smooth randomized
/// tables the discretization error is O(grid step).
Money myerson_payment(const TabulatedAllocation& alloc, int i, const std::vector<Money>& bids);

/// Packages a monotone allocation table plus a per-profile burn table as a
/// Mechanism whose payment is myerson_payment everywhere. Throws if the
/// table is not monotone or some burn exceeds the derived payment.
Mechanism derive_dsic_mechanism(const TabulatedAllocation& alloc,
                                const std::map<std::vector<Money>, std::vector<Money>>& burn,
                                const std::string& name);

/// Tabulates an existing mechanism on all ordered bid vectors of sizes
/// 1..max_size (helper for table round-trips and the derived-rule tests).
TabulatedAllocation tabulate_mechanism(const Mechanism& mech, const GridSpec& grid, int max_size);

/// Companion burn table for tabulate_mechanism.
std::map<std::vector<Money>, std::vector<Money>> tabulate_burn(const Mechanism& mech,
                                                               const GridSpec& grid, int max_size);

/// Dense row-per-profile serialization:
/// {"grid": ..., "rows": [{"bids": [...], "alloc": [...]}, ...]}.
std::string tabulated_allocation_to_json(const TabulatedAllocation& tab);
TabulatedAllocation tabulated_allocation_from_json(const std::string& text);

/// CSV with one row per profile: n, bid_1..bid_n, alloc_1..alloc_n.
std::string tabulated_allocation_to_csv(const TabulatedAllocation& tab);

}  // namespace tfm
