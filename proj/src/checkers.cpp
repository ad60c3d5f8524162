#include "tfm/checkers.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace tfm {
namespace {

struct Scratch {
    const Mechanism* mech = nullptr;
    BidProfile profile;
    Outcome out;
    std::uint64_t evals = 0;

    void eval() {
        mech->evaluate_into(profile, out);
        ++evals;
    }
};

void tuples_rec(const std::vector<Money>& pts, int n, std::vector<Money>& cur,
                std::vector<std::vector<Money>>& out, bool non_increasing) {
    if (static_cast<int>(cur.size()) == n) {
        out.push_back(cur);
        return;
    }
    for (const auto& p : pts) {
        if (non_increasing && !cur.empty() && p > cur.back()) break;
        cur.push_back(p);
        tuples_rec(pts, n, cur, out, non_increasing);
        cur.pop_back();
    }
}

std::vector<std::vector<Money>> tuples(const std::vector<Money>& pts, int n, bool non_increasing) {
    std::vector<std::vector<Money>> out;
    std::vector<Money> cur;
    tuples_rec(pts, n, cur, out, non_increasing);
    return out;
}

// Anonymous mechanisms give permutation-equivalent verdicts, so their value
// space is canonicalized to non-increasing vectors.
std::vector<std::vector<Money>> value_vectors(const Mechanism& mech, const GridSpec& grid,
                                              const CheckOptions& opts) {
    if (opts.only_values) return {*opts.only_values};
    std::vector<std::vector<Money>> all;
    for (int n = 1; n <= grid.max_profile_size; ++n) {
        auto chunk = tuples(grid.points, n, mech.anonymous());
        all.insert(all.end(), chunk.begin(), chunk.end());
    }
    return all;
}

std::string grid_label(const GridSpec& grid, const std::string& extra = "") {
    std::string s = "grid[" + grid.points.front().str() + ".." + grid.points.back().str() + ", " +
                    std::to_string(grid.points.size()) + "pts] n<=" +
                    std::to_string(grid.max_profile_size) +
                    " fakes<=" + std::to_string(grid.max_fake_bids);
    if (!extra.empty()) s += " " + extra;
    return s;
}

std::string cap_label(int cap) { return cap < 0 ? "c=all" : "c=" + std::to_string(cap); }

void set_real_entries(BidProfile& profile, const std::vector<Money>& bids) {
    profile.entries.clear();
    for (std::size_t i = 0; i < bids.size(); ++i)
        profile.entries.push_back(BidEntry{bids[i], false, static_cast<int>(i)});
}

// ---------------------------------------------------------------------------
// Shared search over miner strategies / off-chain agreements / side
// contracts: every assignment of real bids (kept at v_i, dropped to 0, or
// changed to another grid value within the change budget) crossed with every
// fake-bid multiset up to the cap.
// ---------------------------------------------------------------------------

class CollusionScan {
public:
    CollusionScan(const Mechanism& mech, const GridSpec& grid, PropertyKind property,
                  int coalition_cap, Scratch& scratch)
        : mech_(mech), grid_(grid), property_(property), cap_(coalition_cap), scratch_(scratch) {}

    bool scan(const std::vector<Money>& v, std::optional<ViolationWitness>& witness) {
        v_ = &v;
        n_ = static_cast<int>(v.size());
        witness_ = &witness;

        // Honest reference point, evaluated once.
        set_real_entries(scratch_.profile, v);
        scratch_.profile.entries.reserve(v.size() + grid_.max_fake_bids);
        scratch_.eval();
        honest_miner_ = miner_utility_of(scratch_.out, scratch_.profile);
        honest_joint_ = joint_utility_of(scratch_.out, scratch_.profile, v);
        honest_bidder_.assign(n_, Money(0));
        for (int i = 0; i < n_; ++i)
            honest_bidder_[i] = bidder_utility_of(scratch_.out, i, v[i]);

        changed_.clear();
        int budget = 0;
        if (property_ == PropertyKind::Oca || property_ == PropertyKind::Scp)
            budget = cap_ < 0 ? n_ : std::min(cap_, n_);
        else if (property_ == PropertyKind::OcaJointForm)
            budget = n_;
        return assign(0, budget);
    }

private:
    bool assign(int pos, int budget) {
        if (pos == n_) return fakes(0, 0);
        // Indexed access throughout: the fake-bid recursion push_backs into
        // the same vector, so references into it must not be held here.
        auto& entries = scratch_.profile.entries;
        const Money v_i = (*v_)[pos];

        entries[pos].bid = v_i;  // kept
        if (assign(pos + 1, budget)) return true;

        if (!v_i.is_zero()) {  // omitted (identical to kept when v_i == 0)
            entries[pos].bid = Money(0);
            if (assign(pos + 1, budget)) return true;
        }

        if (budget > 0) {
            changed_.push_back(pos);
            for (const auto& w : grid_.points) {
                if (w == v_i || w.is_zero()) continue;
                entries[pos].bid = w;
                if (assign(pos + 1, budget - 1)) return true;
            }
            changed_.pop_back();
        }
        entries[pos].bid = v_i;
        return false;
    }

    bool fakes(int count, std::size_t min_idx) {
        if (evaluate_condition()) return true;
        if (count == grid_.max_fake_bids) return false;
        for (std::size_t i = min_idx; i < grid_.points.size(); ++i) {
            scratch_.profile.entries.push_back(BidEntry{grid_.points[i], true, kFakeId});
            if (fakes(count + 1, i)) return true;
            scratch_.profile.entries.pop_back();
        }
        return false;
    }

    bool evaluate_condition() {
        scratch_.eval();
        const Outcome& out = scratch_.out;
        const BidProfile& profile = scratch_.profile;
        Money miner_dev = miner_utility_of(out, profile);

        switch (property_) {
            case PropertyKind::Mmic:
                if (miner_dev > honest_miner_)
                    return emit(honest_miner_, miner_dev, {});
                return false;

            case PropertyKind::OcaJointForm: {
                Money joint_dev = joint_utility_of(out, profile, *v_);
                if (joint_dev > honest_joint_)
                    return emit(honest_joint_, joint_dev, changed_);
                return false;
            }

            case PropertyKind::Oca: {
                Money rhs = miner_dev;
                for (int i : changed_) rhs += bidder_utility_of(out, i, (*v_)[i]);
                auto coalition = changed_;
                int room = cap_ < 0 ? n_ : cap_ - static_cast<int>(changed_.size());
                pick_best(out, coalition, room,
                          [&](int i) { return bidder_utility_of(out, i, (*v_)[i]); });
                for (std::size_t k = changed_.size(); k < coalition.size(); ++k)
                    rhs += bidder_utility_of(out, coalition[k], (*v_)[coalition[k]]);
                if (rhs > honest_joint_)
                    return emit(honest_joint_, rhs, coalition);
                return false;
            }

            case PropertyKind::Scp: {
                auto coalition = changed_;
                int room = cap_ < 0 ? n_ : cap_ - static_cast<int>(changed_.size());
                pick_best(out, coalition, room, [&](int i) {
                    return bidder_utility_of(out, i, (*v_)[i]) - honest_bidder_[i];
                });
                Money lhs = honest_miner_;
                Money rhs = miner_dev;
                for (int i : coalition) {
                    lhs += honest_bidder_[i];
                    rhs += bidder_utility_of(out, i, (*v_)[i]);
                }
                if (rhs > lhs)
                    return emit(lhs, rhs, coalition);
                return false;
            }

            default:
                throw std::logic_error("CollusionScan: unsupported property");
        }
    }

    // Greedily extend the coalition with up to `room` bidders whose score is
    // strictly positive (the coalition sum is maximized by exactly those).
    template <typename Score>
    void pick_best(const Outcome&, std::vector<int>& coalition, int room, Score score) {
        if (room <= 0) return;
        std::vector<std::pair<Money, int>> candidates;
        for (int i = 0; i < n_; ++i) {
            if (std::find(coalition.begin(), coalition.end(), i) != coalition.end()) continue;
            Money s = score(i);
            if (s > Money(0)) candidates.emplace_back(s, i);
        }
        std::sort(candidates.begin(), candidates.end(),
                  [](const auto& a, const auto& b) { return b.first < a.first; });
        for (int k = 0; k < room && k < static_cast<int>(candidates.size()); ++k)
            coalition.push_back(candidates[k].second);
    }

    bool emit(const Money& lhs, const Money& rhs, std::vector<int> coalition) {
        ViolationWitness w;
        w.property = property_;
        w.mechanism = mech_.name();
        w.values = *v_;
        w.lhs = lhs;
        w.rhs = rhs;
        std::sort(coalition.begin(), coalition.end());
        Manipulation& m = w.manipulation;
        m.kind = property_ == PropertyKind::Mmic ? ManipulationKind::MinerStrategy
                 : property_ == PropertyKind::Scp ? ManipulationKind::SideContract
                                                  : ManipulationKind::OffChainAgreement;
        m.coalition = coalition;
        for (int i = 0; i < n_; ++i) {
            bool changed = std::find(changed_.begin(), changed_.end(), i) != changed_.end();
            const Money& bid = scratch_.profile.entries[i].bid;
            if (changed)
                m.changed[i] = bid;
            else if (bid == (*v_)[i])
                m.kept.push_back(i);
            // else omitted: bid 0, not listed
        }
        for (std::size_t i = n_; i < scratch_.profile.entries.size(); ++i)
            m.fakes.push_back(scratch_.profile.entries[i].bid);
        *witness_ = std::move(w);
        return true;
    }

    const Mechanism& mech_;
    const GridSpec& grid_;
    PropertyKind property_;
    int cap_;
    Scratch& scratch_;

    const std::vector<Money>* v_ = nullptr;
    std::optional<ViolationWitness>* witness_ = nullptr;
    int n_ = 0;
    Money honest_miner_{0};
    Money honest_joint_{0};
    std::vector<Money> honest_bidder_;
    std::vector<int> changed_;
};

// Runs `per_value` over every value vector; sequential in deterministic mode
// (first witness in enumeration order), otherwise work-stealing across
// threads with any witness accepted.
template <typename PerValue>
CheckResult run_value_search(const Mechanism& mech, const GridSpec& grid, const CheckOptions& opts,
                             PropertyKind property, const std::string& label, PerValue per_value) {
    grid.validate();
    CheckResult result;
    result.property = property;
    result.grid_label = label;

    auto vlist = value_vectors(mech, grid, opts);

    if (opts.deterministic) {
        Scratch scratch;
        scratch.mech = &mech;
        std::optional<ViolationWitness> witness;
        for (const auto& v : vlist)
            if (per_value(v, scratch, witness)) break;
        result.evaluations = scratch.evals;
        result.witness = std::move(witness);
        result.pass = !result.witness.has_value();
        return result;
    }

    unsigned hw = std::thread::hardware_concurrency();
    int threads = opts.threads > 0 ? opts.threads : static_cast<int>(hw ? hw : 2);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::atomic<std::uint64_t> evals{0};
    std::mutex witness_mutex;
    std::optional<ViolationWitness> found;

    auto worker = [&]() {
        Scratch scratch;
        scratch.mech = &mech;
        std::optional<ViolationWitness> witness;
        while (!stop.load(std::memory_order_relaxed)) {
            std::size_t idx = next.fetch_add(1, std::memory_order_relaxed);
            if (idx >= vlist.size()) break;
            if (per_value(vlist[idx], scratch, witness)) {
                std::lock_guard<std::mutex> lk(witness_mutex);
                if (!found) found = std::move(witness);
                stop.store(true, std::memory_order_relaxed);
                break;
            }
        }
        evals.fetch_add(scratch.evals, std::memory_order_relaxed);
    };

    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    result.evaluations = evals.load();
    result.witness = std::move(found);
    result.pass = !result.witness.has_value();
    return result;
}

// All profiles (as bid vectors) of sizes 1..max_profile_size, canonicalized
// for anonymous mechanisms.
std::vector<std::vector<Money>> profile_space(const Mechanism& mech, const GridSpec& grid) {
    std::vector<std::vector<Money>> all;
    for (int n = 1; n <= grid.max_profile_size; ++n) {
        auto chunk = tuples(grid.points, n, mech.anonymous());
        all.insert(all.end(), chunk.begin(), chunk.end());
    }
    return all;
}

}  // namespace

std::string property_name(PropertyKind p) {
    switch (p) {
        case PropertyKind::Dsic: return "dsic";
        case PropertyKind::Mmic: return "mmic";
        case PropertyKind::Oca: return "oca";
        case PropertyKind::OcaJointForm: return "oca-joint-form";
        case PropertyKind::Scp: return "scp";
        case PropertyKind::ScaleInvariance: return "scale-invariance";
        case PropertyKind::Ctpa: return "ctpa";
        case PropertyKind::Anonymity: return "anonymity";
    }
    return "?";
}

std::string manipulation_kind_name(ManipulationKind k) {
    switch (k) {
        case ManipulationKind::MinerStrategy: return "miner-strategy";
        case ManipulationKind::OffChainAgreement: return "off-chain-agreement";
        case ManipulationKind::SideContract: return "side-contract";
    }
    return "?";
}

void Manipulation::validate(int n_real) const {
    if (kind == ManipulationKind::MinerStrategy && !changed.empty())
        throw std::invalid_argument("miner strategy cannot change real bids");
    for (const auto& [i, bid] : changed) {
        if (i < 0 || i >= n_real)
            throw std::invalid_argument("changed index out of range");
        if (bid.is_negative())
            throw std::invalid_argument("changed bid negative");
        if (std::find(coalition.begin(), coalition.end(), i) == coalition.end())
            throw std::invalid_argument("changed bidder outside the coalition");
    }
    for (int i : kept)
        if (i < 0 || i >= n_real)
            throw std::invalid_argument("kept index out of range");
    for (int i : coalition)
        if (i < 0 || i >= n_real)
            throw std::invalid_argument("coalition index out of range");
    for (const auto& f : fakes)
        if (f.is_negative())
            throw std::invalid_argument("fake bid negative");
}

BidProfile Manipulation::apply(const std::vector<Money>& values) const {
    validate(static_cast<int>(values.size()));
    BidProfile p;
    for (std::size_t i = 0; i < values.size(); ++i) {
        Money bid(0);
        if (auto it = changed.find(static_cast<int>(i)); it != changed.end())
            bid = it->second;
        else if (std::find(kept.begin(), kept.end(), static_cast<int>(i)) != kept.end())
            bid = values[i];
        p.entries.push_back(BidEntry{bid, false, static_cast<int>(i)});
    }
    for (const auto& f : fakes) p.entries.push_back(BidEntry{f, true, kFakeId});
    return p;
}

CheckResult check_dsic(const Mechanism& mech, const GridSpec& grid, const CheckOptions&) {
    // The scan is cheap enough to stay sequential; the options' value
    // restriction does not apply to a per-bidder deviation search.
    grid.validate();
    CheckResult result;
    result.property = PropertyKind::Dsic;
    result.grid_label = grid_label(grid, "(no fakes)");

    Scratch scratch;
    scratch.mech = &mech;
    bool strict_seen = false;

    // A deviation by bidder i against arbitrary rival bids; rivals are
    // canonicalized for anonymous mechanisms and the deviator sits in slot 0.
    for (int n = 1; n <= grid.max_profile_size && !result.witness; ++n) {
        auto rivals_list = tuples(grid.points, n - 1, mech.anonymous());
        int positions = mech.anonymous() ? 1 : n;
        for (int slot = 0; slot < positions && !result.witness; ++slot) {
            for (const auto& rivals : rivals_list) {
                std::vector<Money> bids(n);
                int k = 0;
                for (int j = 0; j < n; ++j)
                    if (j != slot) bids[j] = rivals[k++];
                for (const auto& v_i : grid.points) {
                    bids[slot] = v_i;
                    set_real_entries(scratch.profile, bids);
                    scratch.eval();
                    Money truthful = bidder_utility_of(scratch.out, slot, v_i);
                    for (const auto& b_i : grid.points) {
                        if (b_i == v_i) continue;
                        scratch.profile.entries[slot].bid = b_i;
                        scratch.eval();
                        Money deviating = bidder_utility_of(scratch.out, slot, v_i);
                        if (deviating > truthful) {
                            ViolationWitness w;
                            w.property = PropertyKind::Dsic;
                            w.mechanism = mech.name();
                            bids[slot] = v_i;
                            w.values = bids;
                            w.manipulation.kind = ManipulationKind::SideContract;
                            for (int j = 0; j < n; ++j)
                                if (j != slot) w.manipulation.kept.push_back(j);
                            w.manipulation.changed[slot] = b_i;
                            w.manipulation.coalition = {slot};
                            w.entry_index = slot;
                            w.lhs = truthful;
                            w.rhs = deviating;
                            result.witness = std::move(w);
                            break;
                        }
                        if (truthful > deviating) strict_seen = true;
                    }
                    scratch.profile.entries[slot].bid = v_i;
                    if (result.witness) break;
                }
                if (result.witness) break;
            }
        }
    }
    result.evaluations = scratch.evals;
    result.pass = !result.witness.has_value();
    result.dsic_strict_clause = strict_seen;
    return result;
}

CheckResult check_mmic(const Mechanism& mech, const GridSpec& grid, const CheckOptions& opts) {
    return run_value_search(
        mech, grid, opts, PropertyKind::Mmic, grid_label(grid),
        [&](const std::vector<Money>& v, Scratch& s, std::optional<ViolationWitness>& w) {
            CollusionScan scan(mech, grid, PropertyKind::Mmic, 0, s);
            return scan.scan(v, w);
        });
}

CheckResult check_oca(const Mechanism& mech, const GridSpec& grid, int coalition_cap,
                      const CheckOptions& opts) {
    return run_value_search(
        mech, grid, opts, PropertyKind::Oca, grid_label(grid, cap_label(coalition_cap)),
        [&, coalition_cap](const std::vector<Money>& v, Scratch& s,
                           std::optional<ViolationWitness>& w) {
            CollusionScan scan(mech, grid, PropertyKind::Oca, coalition_cap, s);
            return scan.scan(v, w);
        });
}

CheckResult check_oca_joint_form(const Mechanism& mech, const GridSpec& grid,
                                 const CheckOptions& opts) {
    return run_value_search(
        mech, grid, opts, PropertyKind::OcaJointForm, grid_label(grid),
        [&](const std::vector<Money>& v, Scratch& s, std::optional<ViolationWitness>& w) {
            CollusionScan scan(mech, grid, PropertyKind::OcaJointForm, -1, s);
            return scan.scan(v, w);
        });
}

CheckResult check_scp(const Mechanism& mech, const GridSpec& grid, int coalition_cap,
                      const CheckOptions& opts) {
    return run_value_search(
        mech, grid, opts, PropertyKind::Scp, grid_label(grid, cap_label(coalition_cap)),
        [&, coalition_cap](const std::vector<Money>& v, Scratch& s,
                           std::optional<ViolationWitness>& w) {
            CollusionScan scan(mech, grid, PropertyKind::Scp, coalition_cap, s);
            return scan.scan(v, w);
        });
}

CheckResult check_scale_invariance(const Mechanism& mech, const GridSpec& grid,
                                   const std::vector<Money>& scale_factors,
                                   const CheckOptions&) {
    grid.validate();
    for (const auto& a : scale_factors)
        if (!(a > Money(0)))
            throw std::invalid_argument("check_scale_invariance: factors must be positive");

    CheckResult result;
    result.property = PropertyKind::ScaleInvariance;
    result.grid_label = grid_label(grid, "factors=" + std::to_string(scale_factors.size()));

    Scratch base, scaled;
    base.mech = scaled.mech = &mech;

    for (const auto& bids : profile_space(mech, grid)) {
        set_real_entries(base.profile, bids);
        base.eval();
        for (const auto& alpha : scale_factors) {
            std::vector<Money> sb(bids.size());
            for (std::size_t i = 0; i < bids.size(); ++i) sb[i] = alpha * bids[i];
            set_real_entries(scaled.profile, sb);
            try {
                scaled.eval();
            } catch (const std::domain_error&) {
                // Tabulated mechanisms cannot price off-grid bids.
                ++result.skipped_pairs;
                continue;
            }
            for (std::size_t i = 0; i < bids.size(); ++i) {
                if (base.out.alloc[i] == scaled.out.alloc[i]) continue;
                ViolationWitness w;
                w.property = PropertyKind::ScaleInvariance;
                w.mechanism = mech.name();
                w.values = bids;
                w.scale_factor = alpha;
                w.entry_index = static_cast<int>(i);
                w.manipulation.kind = ManipulationKind::OffChainAgreement;
                for (std::size_t j = 0; j < bids.size(); ++j) {
                    w.manipulation.changed[static_cast<int>(j)] = sb[j];
                    w.manipulation.coalition.push_back(static_cast<int>(j));
                }
                w.lhs = std::min(base.out.alloc[i], scaled.out.alloc[i]);
                w.rhs = std::max(base.out.alloc[i], scaled.out.alloc[i]);
                result.witness = std::move(w);
                break;
            }
            if (result.witness) break;
        }
        if (result.witness) break;
    }
    result.evaluations = base.evals + scaled.evals;
    result.pass = !result.witness.has_value();
    return result;
}

CheckResult check_ctpa(const Mechanism& mech, const GridSpec& grid, const CheckOptions&) {
    grid.validate();
    CheckResult result;
    result.property = PropertyKind::Ctpa;
    result.grid_label = grid_label(grid);

    Scratch scratch;
    scratch.mech = &mech;
    std::optional<Money> alpha;
    std::vector<Money> reference;

    for (const auto& bids : profile_space(mech, grid)) {
        set_real_entries(scratch.profile, bids);
        scratch.eval();
        Money total(0);
        for (const auto& a : scratch.out.alloc) total += a;
        if (!alpha) {
            alpha = total;
            reference = bids;
            continue;
        }
        if (total != *alpha) {
            ViolationWitness w;
            w.property = PropertyKind::Ctpa;
            w.mechanism = mech.name();
            w.values = reference;
            w.other_bids = bids;
            w.lhs = std::min(*alpha, total);
            w.rhs = std::max(*alpha, total);
            result.witness = std::move(w);
            break;
        }
    }
    result.evaluations = scratch.evals;
    result.pass = !result.witness.has_value();
    if (result.pass) result.ctpa_alpha = alpha;
    return result;
}

CheckResult check_anonymity(const Mechanism& mech, const GridSpec& grid, const CheckOptions&) {
    grid.validate();
    CheckResult result;
    result.property = PropertyKind::Anonymity;
    result.grid_label = grid_label(grid, "(tie-free)");

    Scratch base, permuted;
    base.mech = permuted.mech = &mech;

    for (int n = 1; n <= grid.max_profile_size && !result.witness; ++n) {
        // Tie-free only: the deterministic tie-break cannot be
        // permutation-equivariant on tied bids.
        std::vector<std::vector<Money>> reps;
        {
            std::vector<std::vector<Money>> sorted = tuples(grid.points, n, true);
            for (auto& t : sorted) {
                bool distinct = true;
                for (std::size_t i = 0; i + 1 < t.size(); ++i)
                    if (t[i] == t[i + 1]) distinct = false;
                if (distinct) reps.push_back(std::move(t));
            }
        }
        std::vector<int> sigma(n);
        for (const auto& bids : reps) {
            for (int i = 0; i < n; ++i) sigma[i] = i;
            set_real_entries(base.profile, bids);
            base.eval();
            do {
                std::vector<Money> pb(n);
                for (int j = 0; j < n; ++j) pb[j] = bids[sigma[j]];
                set_real_entries(permuted.profile, pb);
                permuted.eval();
                for (int rule = 0; rule < 3 && !result.witness; ++rule) {
                    const auto& xs_base = rule == 0   ? base.out.alloc
                                          : rule == 1 ? base.out.pay
                                                      : base.out.burn;
                    const auto& xs_perm = rule == 0   ? permuted.out.alloc
                                          : rule == 1 ? permuted.out.pay
                                                      : permuted.out.burn;
                    for (int j = 0; j < n; ++j) {
                        if (xs_perm[j] == xs_base[sigma[j]]) continue;
                        ViolationWitness w;
                        w.property = PropertyKind::Anonymity;
                        w.mechanism = mech.name();
                        w.values = bids;
                        w.permutation = sigma;
                        w.entry_index = j;
                        w.rule_index = rule;
                        w.manipulation.kind = ManipulationKind::OffChainAgreement;
                        for (int t = 0; t < n; ++t) {
                            w.manipulation.changed[t] = pb[t];
                            w.manipulation.coalition.push_back(t);
                        }
                        w.lhs = std::min(xs_perm[j], xs_base[sigma[j]]);
                        w.rhs = std::max(xs_perm[j], xs_base[sigma[j]]);
                        result.witness = std::move(w);
                        break;
                    }
                }
                if (result.witness) break;
            } while (std::next_permutation(sigma.begin(), sigma.end()));
            if (result.witness) break;
        }
    }
    result.evaluations = base.evals + permuted.evals;
    result.pass = !result.witness.has_value();
    return result;
}

std::pair<Money, Money> replay_witness(const Mechanism& mech, const ViolationWitness& witness) {
    Money lhs(0), rhs(0);
    const auto& v = witness.values;

    switch (witness.property) {
        case PropertyKind::Dsic: {
            int i = witness.entry_index.value();
            Outcome truthful = mech.evaluate(BidProfile::of_bids(v));
            Outcome deviating = mech.evaluate(witness.manipulation.apply(v));
            lhs = bidder_utility_of(truthful, i, v[i]);
            rhs = bidder_utility_of(deviating, i, v[i]);
            break;
        }
        case PropertyKind::Mmic: {
            BidProfile honest = BidProfile::of_bids(v);
            BidProfile dev = witness.manipulation.apply(v);
            lhs = miner_utility_of(mech.evaluate(honest), honest);
            rhs = miner_utility_of(mech.evaluate(dev), dev);
            break;
        }
        case PropertyKind::Oca: {
            BidProfile honest = BidProfile::of_bids(v);
            BidProfile dev = witness.manipulation.apply(v);
            lhs = joint_utility_of(mech.evaluate(honest), honest, v);
            Outcome out = mech.evaluate(dev);
            rhs = miner_utility_of(out, dev);
            for (int i : witness.manipulation.coalition) rhs += bidder_utility_of(out, i, v[i]);
            break;
        }
        case PropertyKind::OcaJointForm: {
            BidProfile honest = BidProfile::of_bids(v);
            BidProfile dev = witness.manipulation.apply(v);
            lhs = joint_utility_of(mech.evaluate(honest), honest, v);
            rhs = joint_utility_of(mech.evaluate(dev), dev, v);
            break;
        }
        case PropertyKind::Scp: {
            BidProfile honest = BidProfile::of_bids(v);
            BidProfile dev = witness.manipulation.apply(v);
            Outcome oh = mech.evaluate(honest);
            Outcome od = mech.evaluate(dev);
            lhs = miner_utility_of(oh, honest);
            rhs = miner_utility_of(od, dev);
            for (int i : witness.manipulation.coalition) {
                lhs += bidder_utility_of(oh, i, v[i]);
                rhs += bidder_utility_of(od, i, v[i]);
            }
            break;
        }
        case PropertyKind::ScaleInvariance: {
            int i = witness.entry_index.value();
            Money alpha = witness.scale_factor.value();
            std::vector<Money> scaled(v.size());
            for (std::size_t j = 0; j < v.size(); ++j) scaled[j] = alpha * v[j];
            Money a0 = mech.evaluate(BidProfile::of_bids(v)).alloc[i];
            Money a1 = mech.evaluate(BidProfile::of_bids(scaled)).alloc[i];
            lhs = std::min(a0, a1);
            rhs = std::max(a0, a1);
            break;
        }
        case PropertyKind::Ctpa: {
            auto total = [&](const std::vector<Money>& bids) {
                Outcome out = mech.evaluate(BidProfile::of_bids(bids));
                Money t(0);
                for (const auto& a : out.alloc) t += a;
                return t;
            };
            Money t0 = total(v);
            Money t1 = total(witness.other_bids.value());
            lhs = std::min(t0, t1);
            rhs = std::max(t0, t1);
            break;
        }
        case PropertyKind::Anonymity: {
            const auto& sigma = witness.permutation.value();
            int j = witness.entry_index.value();
            int rule = witness.rule_index.value();
            std::vector<Money> pb(v.size());
            for (std::size_t t = 0; t < v.size(); ++t) pb[t] = v[sigma[t]];
            Outcome ob = mech.evaluate(BidProfile::of_bids(v));
            Outcome op = mech.evaluate(BidProfile::of_bids(pb));
            auto pick = [&](const Outcome& o, int idx) {
                return rule == 0 ? o.alloc[idx] : rule == 1 ? o.pay[idx] : o.burn[idx];
            };
            Money x0 = pick(op, j);
            Money x1 = pick(ob, sigma[j]);
            lhs = std::min(x0, x1);
            rhs = std::max(x0, x1);
            break;
        }
    }

    if (lhs != witness.lhs || rhs != witness.rhs)
        throw std::logic_error("replay_witness: recomputed sides differ from the stored witness");
    if (!(rhs > lhs))
        throw std::logic_error("replay_witness: margin is not strictly positive");
    return {lhs, rhs};
}

}  // namespace tfm
