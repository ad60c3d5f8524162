#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tfm/rational.hpp"

namespace tfm {

/// One bid as the mechanism sees it. `id` is the bidder identity slot:
/// real bidders use their roster index (0..n-1), fake miner-created bids
/// use kFakeId so identity-keyed mechanisms can never be impersonated.
struct BidEntry {
    Money bid;
    bool fake = false;
    int id = 0;
};

inline constexpr int kFakeId = -1;

/// A finite bid vector with identities and real/fake flags. Real entries
/// occupy the leading indices so that entry i pairs with value v_i; an
/// omitted real bidder is represented by bid 0 and stays in place. Fake
/// entries follow and never carry true values.
struct BidProfile {
    std::vector<BidEntry> entries;
    std::optional<std::vector<Money>> true_values;  // parallel to the real prefix

    int real_count() const {
        int n = 0;
        for (const auto& e : entries)
            if (!e.fake) ++n;
        return n;
    }

    /// Throws std::invalid_argument if the real-prefix / fake-suffix layout
    /// or the true-value pairing is broken.
    void validate() const;

    static BidProfile of_bids(const std::vector<Money>& bids);
    static BidProfile of_values(const std::vector<Money>& values);
};

/// Per-entry allocation probability, payment and burn for one profile.
struct Outcome {
    std::vector<Money> alloc;
    std::vector<Money> pay;
    std::vector<Money> burn;

    void resize_zero(std::size_t n) {
        alloc.assign(n, Money(0));
        pay.assign(n, Money(0));
        burn.assign(n, Money(0));
    }
};

enum class Family {
    Trivial,
    FirstPrice,
    SecondPrice,
    ThirdPrice,
    BurnedSecondPrice,
    GeneralizedBurnedFirstPrice,
    NonAnonymousPostedBurn,
};

/// Reserve / burn level; mechanisms with an infinite reserve never allocate.
struct Reserve {
    bool infinite = false;
    Money value{0};

    static Reserve finite(Money m) { return Reserve{false, m}; }
    static Reserve inf() { return Reserve{true, Money(0)}; }
    std::string str() const { return infinite ? "inf" : value.str(); }
    friend bool operator==(const Reserve& a, const Reserve& b) {
        return a.infinite == b.infinite && (a.infinite || a.value == b.value);
    }
};

/// Monotone payment curve applied to the winning bid.
struct PaymentCurve {
    enum class Kind { Identity, HalfPlusReserve, ConstantReserve, Tabulated };
    Kind kind = Kind::Identity;
    std::vector<std::pair<Money, Money>> table;  // Tabulated only, sorted by bid

    Money evaluate(const Money& winning_bid, const Money& reserve) const;
    std::string kind_name() const;
};

/// Parameter block for one catalog mechanism.
struct MechanismSpec {
    Family family = Family::Trivial;
    Reserve r;                 // BurnedSecondPrice / GeneralizedBurnedFirstPrice / NonAnonymousPostedBurn
    PaymentCurve f;            // GeneralizedBurnedFirstPrice only
    int i_star = 0;            // NonAnonymousPostedBurn only; roster index of the allocatable identity
};

/// A mechanism is a pure rule triple: same profile, same outcome. Catalog
/// mechanisms carry their spec; table-backed and test mechanisms do not.
///
/// The anonymous flag asserts permutation equivariance and lets the
/// checkers canonicalize their search spaces (sorted value vectors, one
/// deviator slot). Set it only when that symmetry actually holds; a false
/// flag on an identity- or slot-sensitive rule silently narrows searches.
class Mechanism {
public:
    Mechanism() = default;
    Mechanism(std::string name, bool anonymous, bool deterministic,
              std::function<void(const BidProfile&, Outcome&)> impl,
              std::optional<MechanismSpec> spec = std::nullopt)
        : name_(std::move(name)),
          anonymous_(anonymous),
          deterministic_(deterministic),
          spec_(std::move(spec)),
          impl_(std::move(impl)) {}

    const std::string& name() const { return name_; }
    bool anonymous() const { return anonymous_; }
    bool deterministic() const { return deterministic_; }
    const std::optional<MechanismSpec>& spec() const { return spec_; }

    Outcome evaluate(const BidProfile& profile) const {
        Outcome out;
        evaluate_into(profile, out);
        return out;
    }

    /// Allocation-free fast path for the exhaustive searches.
    void evaluate_into(const BidProfile& profile, Outcome& out) const {
        out.resize_zero(profile.entries.size());
        impl_(profile, out);
    }

private:
    std::string name_;
    bool anonymous_ = true;
    bool deterministic_ = true;
    std::optional<MechanismSpec> spec_;
    std::function<void(const BidProfile&, Outcome&)> impl_;
};

/// Discretization of the bid space plus the search caps of the checkers.
struct GridSpec {
    std::vector<Money> points;  // sorted, distinct, contains 0
    int max_profile_size = 3;
    int max_fake_bids = 2;

    void validate() const;
    bool contains(const Money& m) const;

    /// {lo, lo+step, ..., hi}; 0 is added if the range misses it.
    static GridSpec linear(Money lo, Money hi, Money step);
    /// {0, base, base*ratio, base*ratio^2, ...} with `count` geometric points.
    static GridSpec geometric(Money base, Money ratio, int count);
};

// ---------------------------------------------------------------------------
// Utility arithmetic.
//
// Utilities are signed; everything is exact. `values` pairs with the real
// prefix of the profile (0 for omitted bidders). The joint utility equals
// miner utility plus the sum of bidder utilities by construction, and
// joint_utility asserts that identity on every call.
// ---------------------------------------------------------------------------

/// v_i * alloc_i - pay_i for entry i of the evaluated profile.
Money bidder_utility(const Mechanism& mech, const BidProfile& profile, int i, const Money& v_i);

/// Sum over real entries of (pay - burn) minus total fake burn.
Money miner_utility(const Mechanism& mech, const BidProfile& profile);

/// Sum over real entries of (v_i * alloc_i - burn_i) minus total fake burn.
Money joint_utility(const Mechanism& mech, const BidProfile& profile,
                    const std::vector<Money>& values);

// Outcome-level variants used by the search loops (single evaluation shared
// across the utilities of one profile).
Money bidder_utility_of(const Outcome& out, int i, const Money& v_i);
Money miner_utility_of(const Outcome& out, const BidProfile& profile);
Money joint_utility_of(const Outcome& out, const BidProfile& profile,
                       const std::vector<Money>& values);

enum class BasicViolation { Feasibility, IndividualRationality, BurnBalance };

std::string basic_violation_name(BasicViolation v);

/// Empty iff the outcome satisfies feasibility (sum of allocations <= 1,
/// entries in [0,1]), individual rationality (pay <= alloc * bid) and burn
/// balance (0 <= burn <= pay) on this profile.
std::vector<BasicViolation> validate_outcome(const Outcome& out, const BidProfile& profile);

}  // namespace tfm
