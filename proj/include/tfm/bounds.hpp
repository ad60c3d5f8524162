#pragma once

#include <string>

namespace tfm {

// Floating-point reproduction of the quantitative limits on randomized
// mechanisms. Unlike the exact checkers, these mirror real-analysis
// arguments, so everything here is double precision with explicit
// tolerances (default 1e-9 absolute).

/// (2A^2 + AB + B^2) / (2(A-1)(A+B)) on the domain A > B > 1; the curve's
/// infimum over the whole domain is sqrt(2) - 1/2.
double allocation_bound_curve(double A, double B);

struct BoundMinimum {
    double A = 0;
    double B = 0;
    double value = 0;
    bool converged = false;
};

/// 2-D minimization of allocation_bound_curve over A_max >= A > B > 1
/// (log-spaced scan plus golden-section refinement in each coordinate).
BoundMinimum minimize_allocation_bound(double A_max, double search_tol);

/// (u - v2) / (v1 - v2): how much the rule must favor the higher bidder.
double two_bidder_lower(double v1, double v2, double u);

/// 3/2 - u/v2, returned verbatim (it can be negative; see the report flag).
double two_bidder_upper_general(double v1, double v2, double u);

/// 1 - (1/v2) * (2u - (3/2)v1 + (v1-u) * log(2(v1-u)/(v1-v2))), valid only
/// when u > (v1+v2)/2; throws std::domain_error outside that regime.
double two_bidder_upper_extended(double v1, double v2, double u);

struct ContradictionReport {
    double lower = 0;
    double upper = 0;
    bool used_extended = false;
    bool contradicts = false;
    /// The general printed bound goes negative for large u, which would
    /// claim far more than the analysis supports; flagged, never relied on.
    bool general_bound_negative = false;
};

/// Pits the lower bound against the applicable upper bound (extended when
/// its regime holds, general otherwise). contradicts == true means no
/// feasible rule can deliver single-bidder utility u at values (v1, v2).
ContradictionReport efficiency_witness_check(double v1, double v2, double u);

struct ThresholdResult {
    bool found = false;
    double ratio = 0;  // u / v1 at the flip
    std::string note;
};

/// Bisection on u/v1 inside the extended regime for the smallest ratio at
/// which the contradiction appears. The flip is unique: the lower bound
/// rises and the extended upper bound falls in u.
ThresholdResult find_efficiency_threshold(double v1, double v2, double tol);

}  // namespace tfm
