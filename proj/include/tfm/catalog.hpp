#pragma once

#include <vector>

#include "tfm/core.hpp"

namespace tfm {

std::string family_name(Family f);
Family family_from_name(const std::string& name);

/// Builds the rule triple for a validated spec. Ties in the argmax break
/// toward the lowest index, and the reserve boundary max == r allocates.
/// Throws std::invalid_argument on an invalid spec (non-monotone curve,
/// curve below the reserve, bad identity).
Mechanism make_mechanism(const MechanismSpec& spec);

/// One mechanism per reserve value (and per payment curve from the fixed
/// menu identity / half-plus-r / const-r for the generalized burned
/// first-price family). Families without parameters yield one instance.
std::vector<Mechanism> enumerate_family(Family family, const std::vector<Reserve>& reserves);

/// GridSpec overload: reserves are exactly the (finite) grid points.
std::vector<Mechanism> enumerate_family(Family family, const GridSpec& param_grid);

/// The named mechanisms with representative parameters, used by the
/// property suites: trivial, first/second/third-price, burned second-price
/// (r=1), generalized burned first-price (identity and const-r, r=1), and
/// the non-anonymous posted-burn auction (i*=b0, r=1).
std::vector<Mechanism> default_catalog();

/// The menu of payment curves for a given reserve.
std::vector<PaymentCurve> payment_curve_menu();

}  // namespace tfm
