#include "tfm/lp.hpp"

#include <stdexcept>

namespace tfm {

namespace {
int grid_size(const MechanismLp& lp) { return static_cast<int>(lp.grid.points.size()); }
}  // namespace

int MechanismLp::idx_a_single(int k) const { return k; }
int MechanismLp::idx_beta_single(int k) const { return grid_size(*this) + k; }
int MechanismLp::idx_a_pair(int own, int other) const {
    int g = grid_size(*this);
    return 2 * g + own * g + other;
}
int MechanismLp::idx_beta_pair(int own, int other) const {
    int g = grid_size(*this);
    return 2 * g + g * g + own * g + other;
}

std::vector<std::pair<int, double>> MechanismLp::payment_single(int m) const {
    // a(g_m)*g_m - sum_{k<m} a(g_k) * (g_{k+1} - g_k)
    std::vector<std::pair<int, double>> terms;
    terms.emplace_back(idx_a_single(m), grid.points[m].to_double());
    for (int k = 0; k < m; ++k)
        terms.emplace_back(idx_a_single(k),
                           -(grid.points[k + 1] - grid.points[k]).to_double());
    return terms;
}

std::vector<std::pair<int, double>> MechanismLp::payment_pair(int m, int y) const {
    std::vector<std::pair<int, double>> terms;
    terms.emplace_back(idx_a_pair(m, y), grid.points[m].to_double());
    for (int k = 0; k < m; ++k)
        terms.emplace_back(idx_a_pair(k, y),
                           -(grid.points[k + 1] - grid.points[k]).to_double());
    return terms;
}

MechanismLp build_lp(const GridSpec& grid, int objective_index) {
    grid.validate();
    const int g = static_cast<int>(grid.points.size());
    if (g > 44) {
        std::size_t vars = 2u * g + 2u * static_cast<std::size_t>(g) * g;
        throw std::invalid_argument("build_lp: grid with " + std::to_string(g) +
                                    " points would need " + std::to_string(vars) +
                                    " variables; keep it at or below 44 points");
    }
    if (objective_index < 0) objective_index = g - 1;
    if (objective_index >= g)
        throw std::invalid_argument("build_lp: objective index off the grid");

    MechanismLp lp;
    lp.grid = grid;
    LpInstance& in = lp.instance;
    in.name = "tfm-two-bidder";
    in.maximize = true;

    // Row and column names use grid indices (MPS-safe identifiers); the
    // actual bid values live in the grid echo of any report.
    auto pt = [&](int k) { return std::to_string(k); };

    // Variables. Allocation probabilities live in [0,1]; burns are >= 0 with
    // their upper side enforced by the burnle rows.
    for (int k = 0; k < g; ++k) in.vars.push_back({"as_" + pt(k), 0.0, 1.0});
    for (int k = 0; k < g; ++k)
        in.vars.push_back({"bs_" + pt(k), 0.0, std::numeric_limits<double>::infinity()});
    for (int x = 0; x < g; ++x)
        for (int y = 0; y < g; ++y)
            in.vars.push_back({"ap_" + pt(x) + "_" + pt(y), 0.0, 1.0});
    for (int x = 0; x < g; ++x)
        for (int y = 0; y < g; ++y)
            in.vars.push_back({"bp_" + pt(x) + "_" + pt(y), 0.0,
                               std::numeric_limits<double>::infinity()});
    in.objective.assign(in.vars.size(), 0.0);
    in.objective[lp.idx_a_single(objective_index)] = 1.0;

    auto add = [&](const std::string& name, std::vector<std::pair<int, double>> terms, char rel,
                   double rhs) {
        in.rows.push_back(LpRow{name, std::move(terms), rel, rhs});
    };

    // feas: pair feasibility over unordered pairs (x == y doubles the slot).
    for (int x = 0; x < g; ++x)
        for (int y = x; y < g; ++y) {
            std::vector<std::pair<int, double>> terms;
            if (x == y)
                terms.emplace_back(lp.idx_a_pair(x, x), 2.0);
            else {
                terms.emplace_back(lp.idx_a_pair(x, y), 1.0);
                terms.emplace_back(lp.idx_a_pair(y, x), 1.0);
            }
            add("feas_" + pt(x) + "_" + pt(y), std::move(terms), '<', 1.0);
        }

    // mono: non-decreasing along the own-bid axis.
    for (int k = 0; k + 1 < g; ++k)
        add("mono_s_" + pt(k),
            {{lp.idx_a_single(k), 1.0}, {lp.idx_a_single(k + 1), -1.0}}, '<', 0.0);
    for (int y = 0; y < g; ++y)
        for (int k = 0; k + 1 < g; ++k)
            add("mono_p_" + pt(k) + "_" + pt(y),
                {{lp.idx_a_pair(k, y), 1.0}, {lp.idx_a_pair(k + 1, y), -1.0}}, '<', 0.0);

    // zerorev: single-bid revenue is zero, i.e. payment == burn.
    for (int k = 0; k < g; ++k) {
        auto terms = lp.payment_single(k);
        terms.emplace_back(lp.idx_beta_single(k), -1.0);
        add("zerorev_" + pt(k), std::move(terms), '=', 0.0);
    }

    // payburn: the pair payment is covered by the profile's total burn.
    for (int x = 0; x < g; ++x)
        for (int y = 0; y < g; ++y) {
            auto terms = lp.payment_pair(x, y);
            // For x == y both slots share beta(x,x): payment <= 2 beta(x,x).
            terms.emplace_back(lp.idx_beta_pair(x, y), -1.0);
            terms.emplace_back(lp.idx_beta_pair(y, x), -1.0);
            add("payburn_" + pt(x) + "_" + pt(y), std::move(terms), '<', 0.0);
        }

    // twobid: a(y,x)*y + int_0^x a(t,y) dt >= int_0^x a_single(t) dt, x >= y.
    for (int x = 0; x < g; ++x)
        for (int y = 0; y <= x; ++y) {
            std::vector<std::pair<int, double>> terms;
            terms.emplace_back(lp.idx_a_pair(y, x), grid.points[y].to_double());
            for (int k = 0; k < x; ++k) {
                double dt = (grid.points[k + 1] - grid.points[k]).to_double();
                terms.emplace_back(lp.idx_a_pair(k, y), dt);
                terms.emplace_back(lp.idx_a_single(k), -dt);
            }
            add("twobid_" + pt(x) + "_" + pt(y), std::move(terms), '>', 0.0);
        }

    // mincap: the minimum bidder's probability is at most the pair average,
    // i.e. a(y,x) <= a(x,y) for x > y.
    for (int x = 0; x < g; ++x)
        for (int y = 0; y < x; ++y)
            add("mincap_" + pt(x) + "_" + pt(y),
                {{lp.idx_a_pair(y, x), 0.5}, {lp.idx_a_pair(x, y), -0.5}}, '<', 0.0);

    // burnle: burn never exceeds the payment (beta >= 0 is a bound; the
    // single-bid side is pinned by the zerorev equality).
    for (int x = 0; x < g; ++x)
        for (int y = 0; y < g; ++y) {
            auto terms = lp.payment_pair(x, y);
            for (auto& [idx, c] : terms) c = -c;
            terms.emplace_back(lp.idx_beta_pair(x, y), 1.0);
            add("burnle_" + pt(x) + "_" + pt(y), std::move(terms), '<', 0.0);
        }

    in.validate();
    return lp;
}

std::vector<double> lp_assignment_from_mechanism(const MechanismLp& lp, const Mechanism& mech) {
    const int g = static_cast<int>(lp.grid.points.size());
    std::vector<double> x(lp.instance.vars.size(), 0.0);
    for (int k = 0; k < g; ++k) {
        Outcome out = mech.evaluate(BidProfile::of_bids({lp.grid.points[k]}));
        x[lp.idx_a_single(k)] = out.alloc[0].to_double();
        x[lp.idx_beta_single(k)] = out.burn[0].to_double();
    }
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            Outcome out =
                mech.evaluate(BidProfile::of_bids({lp.grid.points[i], lp.grid.points[j]}));
            if (i == j) {
                // One shared variable per tied pair: average the two slots.
                x[lp.idx_a_pair(i, i)] = 0.5 * (out.alloc[0] + out.alloc[1]).to_double();
                x[lp.idx_beta_pair(i, i)] = 0.5 * (out.burn[0] + out.burn[1]).to_double();
            } else {
                x[lp.idx_a_pair(i, j)] = out.alloc[0].to_double();
                x[lp.idx_beta_pair(i, j)] = out.burn[0].to_double();
            }
        }
    return x;
}

std::string lp_row_class(const std::string& row_name) {
    auto pos = row_name.find('_');
    return pos == std::string::npos ? row_name : row_name.substr(0, pos);
}

}  // namespace tfm
