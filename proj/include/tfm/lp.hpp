#pragma once

#include "tfm/core.hpp"
#include "tfm/simplex.hpp"

namespace tfm {

/// The feasibility system for an anonymous randomized rule on one- and
/// two-bid grid profiles. Variables: single-bid allocation a(b) and burn
/// beta(b), plus pair allocation a(x,y) and burn beta(x,y) where x is the
/// own bid and y the rival bid; a(x,y) is one shared variable for both
/// slots, which is the anonymity tie-in. Payments are not variables: they
/// are the truthful-payment expressions (left-Riemann sums of the
/// allocation along the own-bid axis).
///
/// Row classes (prefix = class):
///   feas     a(x,y) + a(y,x) <= 1 per unordered pair (a(b) <= 1 is a bound)
///   mono     allocation non-decreasing in the own bid along the grid
///   zerorev  single-bid payment equals single-bid burn (equality)
///   payburn  pair payment <= total burn of the pair profile
///   twobid   a(y,x)*y + int a(t,y) >= int a_single(t), for x >= y
///   mincap   the lower bidder's allocation is at most the pair average
///   burnle   0 <= beta <= payment (the lower half is a variable bound)
struct MechanismLp {
    LpInstance instance;
    GridSpec grid;

    int idx_a_single(int k) const;
    int idx_beta_single(int k) const;
    int idx_a_pair(int own, int other) const;
    int idx_beta_pair(int own, int other) const;

    /// Myerson payment of the single bid g_m as (coefficient, variable) terms.
    std::vector<std::pair<int, double>> payment_single(int m) const;
    /// Myerson payment of own bid g_m against rival bid g_y.
    std::vector<std::pair<int, double>> payment_pair(int m, int y) const;
};

/// Builds the LP on the given grid, maximizing the single-bid allocation at
/// objective_index (default: the largest grid bid). Refuses grids beyond
/// ~44 points with a size estimate in the message.
MechanismLp build_lp(const GridSpec& grid, int objective_index = -1);

/// Assignment table for feeding a tabulated mechanism into lp_violations:
/// a(b), beta(b) from single-bid profiles and a(x,y), beta(x,y) from pair
/// profiles. Slot ties (x == y) must be symmetric for the anonymous
/// variable encoding, so tied deterministic outcomes are averaged.
std::vector<double> lp_assignment_from_mechanism(const MechanismLp& lp, const Mechanism& mech);

/// Row-class name of a violated row ("payburn", "twobid", ...).
std::string lp_row_class(const std::string& row_name);

}  // namespace tfm
