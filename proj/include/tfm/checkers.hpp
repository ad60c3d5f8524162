#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tfm/core.hpp"

namespace tfm {

enum class PropertyKind {
    Dsic,
    Mmic,
    Oca,
    OcaJointForm,
    Scp,
    ScaleInvariance,
    Ctpa,
    Anonymity,
};

std::string property_name(PropertyKind p);

enum class ManipulationKind { MinerStrategy, OffChainAgreement, SideContract };

std::string manipulation_kind_name(ManipulationKind k);

/// A deviation from the honest protocol: which real bids are kept at their
/// true value, which are changed (coalition members only), which are dropped
/// to 0, and which fake bids the miner injects. A miner strategy never
/// changes a real bid.
struct Manipulation {
    ManipulationKind kind = ManipulationKind::MinerStrategy;
    std::vector<int> kept;
    std::map<int, Money> changed;
    std::vector<Money> fakes;
    std::vector<int> coalition;

    void validate(int n_real) const;

    /// The profile the mechanism sees when this manipulation is applied to
    /// truthful values v: kept bids stay v_i, changed bids take their new
    /// value, every other real bid drops to 0, fakes are appended.
    BidProfile apply(const std::vector<Money>& values) const;
};

/// A concrete, replayable demonstration that a property fails: margin
/// rhs - lhs is strictly positive. The aux fields carry what the scale /
/// total-allocation / anonymity replays need beyond the manipulation.
struct ViolationWitness {
    PropertyKind property = PropertyKind::Dsic;
    std::string mechanism;
    std::vector<Money> values;
    Manipulation manipulation;
    Money lhs{0};
    Money rhs{0};

    std::optional<int> entry_index;              // Dsic / ScaleInvariance / Anonymity
    std::optional<Money> scale_factor;           // ScaleInvariance
    std::optional<std::vector<Money>> other_bids;  // Ctpa: the second profile
    std::optional<std::vector<int>> permutation;   // Anonymity
    std::optional<int> rule_index;                 // Anonymity: 0 alloc, 1 pay, 2 burn

    Money margin() const { return rhs - lhs; }
};

struct CheckOptions {
    /// Sequential canonical-order scan; the returned witness is the first in
    /// enumeration order. When false the search is partitioned across
    /// workers and any witness may be returned.
    bool deterministic = true;
    int threads = 0;  // 0 = hardware concurrency
    /// Restrict the search to a single value vector (used to replay the
    /// known counterexamples); the manipulation space is still exhaustive.
    std::optional<std::vector<Money>> only_values;
};

/// Verdicts are grid-relative: "pass" means no violation was found on this
/// grid with these caps, and grid_label records exactly what was searched.
struct CheckResult {
    PropertyKind property = PropertyKind::Dsic;
    bool pass = false;
    std::optional<ViolationWitness> witness;
    std::string grid_label;
    std::uint64_t evaluations = 0;

    std::optional<bool> dsic_strict_clause;  // informational, never a failure
    std::optional<Money> ctpa_alpha;         // the constant, on pass
    std::uint64_t skipped_pairs = 0;         // scale check: off-grid rescalings
};

// Exhaustive grid checkers. coalition_cap < 0 means "all".

CheckResult check_dsic(const Mechanism& mech, const GridSpec& grid, const CheckOptions& opts = {});
CheckResult check_mmic(const Mechanism& mech, const GridSpec& grid, const CheckOptions& opts = {});
CheckResult check_oca(const Mechanism& mech, const GridSpec& grid, int coalition_cap,
                      const CheckOptions& opts = {});
CheckResult check_oca_joint_form(const Mechanism& mech, const GridSpec& grid,
                                 const CheckOptions& opts = {});
CheckResult check_scp(const Mechanism& mech, const GridSpec& grid, int coalition_cap,
                      const CheckOptions& opts = {});
CheckResult check_scale_invariance(const Mechanism& mech, const GridSpec& grid,
                                   const std::vector<Money>& scale_factors,
                                   const CheckOptions& opts = {});
CheckResult check_ctpa(const Mechanism& mech, const GridSpec& grid, const CheckOptions& opts = {});
CheckResult check_anonymity(const Mechanism& mech, const GridSpec& grid,
                            const CheckOptions& opts = {});

/// Recomputes both sides of a witness from scratch through the utility
/// model and checks them against the stored values; throws on any mismatch.
/// Returns {lhs, rhs}.
std::pair<Money, Money> replay_witness(const Mechanism& mech, const ViolationWitness& witness);

}  // namespace tfm
