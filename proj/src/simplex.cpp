#include "tfm/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace tfm {

void LpInstance::validate() const {
    if (objective.size() != vars.size())
        throw std::invalid_argument("LpInstance: objective size != variable count");
    for (const auto& v : vars) {
        if (!(v.lower <= v.upper))
            throw std::invalid_argument("LpInstance: variable '" + v.name + "' has empty range");
        if (!std::isfinite(v.lower))
            throw std::invalid_argument("LpInstance: variable '" + v.name +
                                        "' needs a finite lower bound");
    }
    for (const auto& r : rows) {
        if (r.relation != '<' && r.relation != '>' && r.relation != '=')
            throw std::invalid_argument("LpInstance: bad relation in row '" + r.name + "'");
        for (const auto& [j, coef] : r.terms) {
            if (j < 0 || j >= static_cast<int>(vars.size()))
                throw std::invalid_argument("LpInstance: undeclared variable in row '" + r.name +
                                            "'");
            if (!std::isfinite(coef))
                throw std::invalid_argument("LpInstance: non-finite coefficient in row '" +
                                            r.name + "'");
        }
    }
}

std::string lp_status_name(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
        case LpStatus::IterationLimit: return "iteration-limit";
    }
    return "?";
}

namespace {

// Internal standard form: maximize c'x, Ax {<=,=} b, x >= 0, b >= 0.
// Variables are shifted by their lower bounds; finite upper bounds become
// extra rows. '>=' rows are negated into '<=' where possible, i.e. when
// that keeps b >= 0 we avoid an artificial.
struct Standard {
    int n_struct = 0;
    std::vector<std::vector<double>> rowcoef;  // dense per row over structurals
    std::vector<double> rhs;
    std::vector<char> rel;  // '<' or '=' or '>'
    std::vector<double> cost;
    double cost_shift = 0.0;  // from lower-bound shifting
};

Standard build_standard(const LpInstance& in) {
    Standard st;
    const int n = static_cast<int>(in.vars.size());
    st.n_struct = n;
    st.cost.assign(n, 0.0);
    double sign = in.maximize ? 1.0 : -1.0;
    for (int j = 0; j < n; ++j) {
        st.cost[j] = sign * in.objective[j];
        st.cost_shift += sign * in.objective[j] * in.vars[j].lower;
    }

    auto add_row = [&](const std::vector<double>& coef, char rel, double rhs) {
        std::vector<double> c = coef;
        // Negating ">= 0" rows into "<= 0" avoids their artificials.
        if (rhs < 0.0 || (rhs == 0.0 && rel == '>')) {
            for (auto& v : c) v = -v;
            rhs = -rhs;
            rel = rel == '<' ? '>' : rel == '>' ? '<' : '=';
        }
        st.rowcoef.push_back(std::move(c));
        st.rhs.push_back(rhs);
        st.rel.push_back(rel);
    };

    for (const auto& r : in.rows) {
        std::vector<double> coef(n, 0.0);
        double shift = 0.0;
        for (const auto& [j, v] : r.terms) {
            coef[j] += v;
            shift += v * in.vars[j].lower;
        }
        add_row(coef, r.relation, r.rhs - shift);
    }
    for (int j = 0; j < n; ++j) {
        if (std::isfinite(in.vars[j].upper)) {
            std::vector<double> coef(n, 0.0);
            coef[j] = 1.0;
            add_row(coef, '<', in.vars[j].upper - in.vars[j].lower);
        }
    }
    return st;
}

}  // namespace

LpSolution solve_lp(const LpInstance& instance, const SimplexOptions& options) {
    instance.validate();
    Standard st = build_standard(instance);
    const int m = static_cast<int>(st.rowcoef.size());
    const int n = st.n_struct;
    const double tol = options.tol;

    // Column layout: structurals, then one slack/surplus per row, then
    // artificials for rows that need them ('>' and '=').
    int ncols = n;
    std::vector<int> slack_col(m, -1), art_col(m, -1);
    for (int i = 0; i < m; ++i) {
        if (st.rel[i] == '<' || st.rel[i] == '>') slack_col[i] = ncols++;
    }
    int first_art = ncols;
    for (int i = 0; i < m; ++i) {
        if (st.rel[i] == '>' || st.rel[i] == '=') art_col[i] = ncols++;
    }

    std::vector<std::vector<double>> T(m, std::vector<double>(ncols + 1, 0.0));
    std::vector<int> basis(m, -1);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) T[i][j] = st.rowcoef[i][j];
        if (slack_col[i] >= 0) T[i][slack_col[i]] = st.rel[i] == '<' ? 1.0 : -1.0;
        if (art_col[i] >= 0) T[i][art_col[i]] = 1.0;
        T[i][ncols] = st.rhs[i];
        basis[i] = art_col[i] >= 0 ? art_col[i] : slack_col[i];
    }

    std::vector<double> z(ncols + 1, 0.0);
    LpSolution sol;
    int iterations = 0;

    auto pivot = [&](int row, int col) {
        double p = T[row][col];
        std::vector<double>& pr = T[row];
        double inv = 1.0 / p;
        for (double& v : pr) v *= inv;
        for (int i = 0; i < m; ++i) {
            if (i == row) continue;
            double f = T[i][col];
            if (f == 0.0) continue;
            std::vector<double>& ri = T[i];
            for (int j = 0; j <= ncols; ++j) ri[j] -= f * pr[j];
        }
        double f = z[col];
        if (f != 0.0)
            for (int j = 0; j <= ncols; ++j) z[j] -= f * pr[j];
        basis[row] = col;
    };

    // Lexicographic ratio test: among the rows tied on b_i / a_ic, compare
    // the scaled rows column by column. Keeps every row lex-positive, so no
    // basis ever repeats, which is what kills the heavy degeneracy of the
    // all-zero vertex here.
    auto lex_less = [&](int i, int j, int col) {
        double ai = T[i][col], aj = T[j][col];
        double d = T[i][ncols] / ai - T[j][ncols] / aj;
        if (std::abs(d) > 1e-12) return d < 0.0;
        for (int k = 0; k < ncols; ++k) {
            d = T[i][k] / ai - T[j][k] / aj;
            if (std::abs(d) > 1e-12) return d < 0.0;
        }
        return false;
    };

    auto run_phase = [&](bool allow_artificials) -> LpStatus {
        while (true) {
            if (++iterations > options.max_iterations) return LpStatus::IterationLimit;
            int col = -1;
            double best = tol;
            int limit = allow_artificials ? ncols : first_art;
            for (int j = 0; j < limit; ++j) {
                if (z[j] > best) {
                    col = j;
                    best = z[j];
                }
            }
            if (col < 0) return LpStatus::Optimal;

            int row = -1;
            double best_ratio = 0.0;
            for (int i = 0; i < m; ++i) {
                double a = T[i][col];
                if (a <= tol) continue;
                double ratio = T[i][ncols] / a;
                if (row < 0) {
                    row = i;
                    best_ratio = ratio;
                } else if (ratio < best_ratio - 1e-12) {
                    row = i;
                    best_ratio = ratio;
                } else if (ratio <= best_ratio + 1e-12 && lex_less(i, row, col)) {
                    row = i;
                    best_ratio = std::min(best_ratio, ratio);
                }
            }
            if (row < 0) return LpStatus::Unbounded;
            pivot(row, col);
        }
    };

    // Phase 1: minimize the artificial sum when artificials exist.
    if (first_art < ncols) {
        // z_j = -sum of artificial rows (maximize -sum of artificials).
        for (int i = 0; i < m; ++i) {
            if (art_col[i] < 0) continue;
            for (int j = 0; j <= ncols; ++j) z[j] += T[i][j];
        }
        for (int j = first_art; j < ncols; ++j) z[j] = 0.0;
        LpStatus s = run_phase(/*allow_artificials=*/false);
        if (s == LpStatus::IterationLimit) {
            sol.status = s;
            return sol;
        }
        double infeas = z[ncols];  // = sum of artificials at the end
        if (infeas > 1e-7) {
            sol.status = LpStatus::Infeasible;
            sol.iterations = iterations;
            return sol;
        }
        // Drive basic artificials (stuck at zero) out where possible.
        for (int i = 0; i < m; ++i) {
            if (basis[i] < first_art) continue;
            int col = -1;
            for (int j = 0; j < first_art; ++j)
                if (std::abs(T[i][j]) > 1e-7) { col = j; break; }
            if (col >= 0) pivot(i, col);
            // Otherwise the row is redundant; its artificial stays basic at 0.
        }
    }

    // Phase 2 objective.
    std::fill(z.begin(), z.end(), 0.0);
    for (int j = 0; j < n; ++j) z[j] = st.cost[j];
    for (int i = 0; i < m; ++i) {
        int b = basis[i];
        if (b < n && st.cost[b] != 0.0) {
            double f = st.cost[b];
            for (int j = 0; j <= ncols; ++j) z[j] -= f * T[i][j];
        }
    }
    LpStatus s = run_phase(/*allow_artificials=*/false);
    sol.status = s;
    sol.iterations = iterations;
    if (s != LpStatus::Optimal) return sol;

    // Recover the solution (shift the lower bounds back in).
    std::vector<double> xs(ncols, 0.0);
    for (int i = 0; i < m; ++i) xs[basis[i]] = T[i][ncols];
    sol.x.assign(n, 0.0);
    for (int j = 0; j < n; ++j) sol.x[j] = xs[j] + instance.vars[j].lower;

    double internal_obj = -z[ncols];  // z rhs = -(c_B B^-1 b)
    sol.objective = (instance.maximize ? 1.0 : -1.0) * (internal_obj + st.cost_shift);

    // Certificate: duals from the slack/artificial reduced costs, plus the
    // worst primal residual of the internal rows.
    double dual_obj = 0.0;
    for (int i = 0; i < m; ++i) {
        double y;
        if (slack_col[i] >= 0)
            y = st.rel[i] == '<' ? -z[slack_col[i]] : z[slack_col[i]];
        else
            y = -z[art_col[i]];
        dual_obj += y * st.rhs[i];
    }
    double resid = 0.0;
    for (int i = 0; i < m; ++i) {
        double act = 0.0;
        for (int j = 0; j < n; ++j) act += st.rowcoef[i][j] * xs[j];
        double r = 0.0;
        if (st.rel[i] == '<') r = act - st.rhs[i];
        else if (st.rel[i] == '>') r = st.rhs[i] - act;
        else r = std::abs(act - st.rhs[i]);
        resid = std::max(resid, r);
    }
    sol.duality_gap = std::max(std::abs(internal_obj - dual_obj), resid);
    return sol;
}

std::vector<RowViolation> lp_violations(const LpInstance& instance, const std::vector<double>& x,
                                        double tol) {
    instance.validate();
    if (x.size() != instance.vars.size())
        throw std::invalid_argument("lp_violations: assignment size mismatch");
    std::vector<RowViolation> out;
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (x[j] < instance.vars[j].lower - tol || x[j] > instance.vars[j].upper + tol)
            out.push_back({"bound:" + instance.vars[j].name, x[j], 0.0});
    }
    for (const auto& r : instance.rows) {
        double act = 0.0;
        for (const auto& [j, c] : r.terms) act += c * x[j];
        bool bad = (r.relation == '<' && act > r.rhs + tol) ||
                   (r.relation == '>' && act < r.rhs - tol) ||
                   (r.relation == '=' && std::abs(act - r.rhs) > tol);
        if (bad) out.push_back({r.name, act, r.rhs});
    }
    return out;
}

void write_mps(const LpInstance& instance, std::ostream& os) {
    instance.validate();
    os << "NAME " << instance.name << "\n";
    os << "OBJSENSE\n    " << (instance.maximize ? "MAX" : "MIN") << "\n";
    os << "ROWS\n N OBJ\n";
    for (const auto& r : instance.rows) {
        char tag = r.relation == '<' ? 'L' : r.relation == '>' ? 'G' : 'E';
        os << " " << tag << " " << r.name << "\n";
    }
    os << "COLUMNS\n";
    // Column-major triplets, one (column, row, coefficient) pair per line.
    std::vector<std::vector<std::pair<std::string, double>>> cols(instance.vars.size());
    for (std::size_t j = 0; j < instance.vars.size(); ++j)
        if (instance.objective[j] != 0.0) cols[j].push_back({"OBJ", instance.objective[j]});
    for (const auto& r : instance.rows)
        for (const auto& [j, c] : r.terms)
            if (c != 0.0) cols[j].push_back({r.name, c});
    os.precision(17);
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (const auto& [row, c] : cols[j])
            os << "    " << instance.vars[j].name << " " << row << " " << c << "\n";
    os << "RHS\n";
    for (const auto& r : instance.rows)
        if (r.rhs != 0.0) os << "    RHS " << r.name << " " << r.rhs << "\n";
    os << "BOUNDS\n";
    for (const auto& v : instance.vars) {
        if (v.lower != 0.0) os << " LO BND " << v.name << " " << v.lower << "\n";
        if (std::isfinite(v.upper)) os << " UP BND " << v.name << " " << v.upper << "\n";
    }
    os << "ENDATA\n";
}

}  // namespace tfm
