#include "tfm/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tfm {
namespace {

// Golden-section minimization of a unimodal 1-D function on [lo, hi].
template <typename F>
double golden_min(F f, double lo, double hi, double tol) {
    constexpr double phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

void require(bool cond, const char* msg) {
    if (!cond) throw std::domain_error(msg);
}

}  // namespace

double allocation_bound_curve(double A, double B) {
    require(std::isfinite(A) && std::isfinite(B), "allocation_bound_curve: non-finite input");
    require(A > B && B > 1.0, "allocation_bound_curve: need A > B > 1");
    return (2.0 * A * A + A * B + B * B) / (2.0 * (A - 1.0) * (A + B));
}

BoundMinimum minimize_allocation_bound(double A_max, double search_tol) {
    require(A_max > 2.0, "minimize_allocation_bound: need A_max > 2");
    require(search_tol > 0.0, "minimize_allocation_bound: need search_tol > 0");

    auto best_b_for = [&](double A) {
        double lo = 1.0 + 1e-9 * A, hi = A - 1e-9 * A;
        if (hi <= lo) return std::pair<double, double>(0.0, HUGE_VAL);
        double B = golden_min([&](double b) { return allocation_bound_curve(A, b); }, lo, hi,
                              1e-10 * A);
        return std::pair<double, double>(B, allocation_bound_curve(A, B));
    };

    // Coarse log-spaced scan in A, then golden refinement of both coordinates.
    BoundMinimum best;
    best.value = HUGE_VAL;
    const int steps = 200;
    double lo = std::log(2.0000001), hi = std::log(A_max);
    for (int k = 0; k <= steps; ++k) {
        double A = std::exp(lo + (hi - lo) * k / steps);
        auto [B, value] = best_b_for(A);
        if (value < best.value) best = BoundMinimum{A, B, value, false};
    }

    double span = best.A * 0.5;
    double a_lo = std::max(2.0000001, best.A - span);
    double a_hi = std::min(A_max, best.A + span);
    double A_ref = golden_min([&](double A) { return best_b_for(A).second; }, a_lo, a_hi,
                              search_tol * std::max(1.0, best.A));
    auto [B_ref, v_ref] = best_b_for(A_ref);
    if (v_ref < best.value) best = BoundMinimum{A_ref, B_ref, v_ref, false};

    best.converged = std::isfinite(best.value);
    return best;
}

double two_bidder_lower(double v1, double v2, double u) {
    require(v1 > v2 && v2 > 0.0, "two_bidder_lower: need v1 > v2 > 0");
    return (u - v2) / (v1 - v2);
}

double two_bidder_upper_general(double v1, double v2, double u) {
    require(v1 > v2 && v2 > 0.0, "two_bidder_upper_general: need v1 > v2 > 0");
    (void)v1;
    return 1.5 - u / v2;
}

double two_bidder_upper_extended(double v1, double v2, double u) {
    require(v1 > v2 && v2 > 0.0, "two_bidder_upper_extended: need v1 > v2 > 0");
    require(u > 0.5 * (v1 + v2), "two_bidder_upper_extended: need u > (v1+v2)/2");
    require(u <= v1, "two_bidder_upper_extended: need u <= v1");
    // (v1-u) * log(2(v1-u)/(v1-v2)) -> 0 as u -> v1.
    double gap = v1 - u;
    double log_term = gap > 0.0 ? gap * std::log(2.0 * gap / (v1 - v2)) : 0.0;
    return 1.0 - (2.0 * u - 1.5 * v1 + log_term) / v2;
}

ContradictionReport efficiency_witness_check(double v1, double v2, double u) {
    require(v1 > v2 && v2 > 0.0, "efficiency_witness_check: need v1 > v2 > 0");
    ContradictionReport report;
    report.lower = two_bidder_lower(v1, v2, u);
    double general = two_bidder_upper_general(v1, v2, u);
    report.general_bound_negative = general < 0.0;
    if (u > 0.5 * (v1 + v2) && u <= v1) {
        report.used_extended = true;
        report.upper = two_bidder_upper_extended(v1, v2, u);
    } else {
        report.upper = general;
    }
    report.contradicts = report.lower > report.upper;
    return report;
}

ThresholdResult find_efficiency_threshold(double v1, double v2, double tol) {
    require(v1 > v2 && v2 > 0.0, "find_efficiency_threshold: need v1 > v2 > 0");
    require(tol > 0.0, "find_efficiency_threshold: need tol > 0");

    ThresholdResult result;
    double rho_edge = 0.5 * (v1 + v2) / v1;  // extended regime opens just above this
    double lo = rho_edge + std::max(tol, 1e-12) * 0.5;
    double hi = 1.0;
    if (lo >= hi) {
        result.note = "extended-bound regime is empty";
        return result;
    }
    auto contradicts = [&](double rho) {
        return efficiency_witness_check(v1, v2, rho * v1).contradicts;
    };
    if (contradicts(lo)) {
        result.note = "contradiction already holds at the regime edge";
        return result;
    }
    if (!contradicts(hi)) {
        result.note = "no contradiction anywhere in the regime";
        return result;
    }
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (contradicts(mid))
            hi = mid;
        else
            lo = mid;
    }
    result.found = true;
    result.ratio = hi;
    return result;
}

}  // namespace tfm
