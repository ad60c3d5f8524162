#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace tfm {

struct LpVariableDef {
    std::string name;
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();
};

struct LpRow {
    std::string name;
    std::vector<std::pair<int, double>> terms;  // (variable index, coefficient)
    char relation = '<';                        // '<' (<=), '>' (>=), '='
    double rhs = 0.0;
};

/// A linear program in list form: bounded variables, sparse constraint
/// rows, one linear objective.
struct LpInstance {
    std::string name = "lp";
    std::vector<LpVariableDef> vars;
    std::vector<LpRow> rows;
    std::vector<double> objective;  // one coefficient per variable
    bool maximize = true;

    void validate() const;  // throws on dangling indices or size mismatches
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

std::string lp_status_name(LpStatus s);

struct LpSolution {
    LpStatus status = LpStatus::IterationLimit;
    double objective = 0.0;
    std::vector<double> x;
    /// |primal objective - dual objective| at the final basis plus the worst
    /// primal residual; an optimality certificate when small.
    double duality_gap = 0.0;
    int iterations = 0;
};

struct SimplexOptions {
    double tol = 1e-9;
    int max_iterations = 500000;
};

/// Dense two-phase tableau simplex (Dantzig pricing with a Bland fallback
/// under degeneracy). Sized for the desk-scale instances this project
/// builds; behind this interface a library solver could be swapped in.
LpSolution solve_lp(const LpInstance& instance, const SimplexOptions& options = {});

/// Violated rows (name, activity, rhs) of an assignment, plus variable
/// bound violations; empty means the point is feasible within tol.
struct RowViolation {
    std::string row;
    double activity = 0.0;
    double rhs = 0.0;
};
std::vector<RowViolation> lp_violations(const LpInstance& instance, const std::vector<double>& x,
                                        double tol = 1e-9);

/// Free-format MPS export (ROWS / COLUMNS triplets / RHS / BOUNDS) so
/// external solvers can cross-check instances.
void write_mps(const LpInstance& instance, std::ostream& os);

}  // namespace tfm
