#include "extform/simplex.hpp"

#include "extform/csp.hpp"

#include <iostream>

namespace extform {

namespace {

struct Tableau {
    // columns: [0,n) structural, [n,2n) bound slacks, [2n,2n+m) artificials
    int n = 0, m = 0;
    std::vector<std::vector<Rat>> a;  // row-major, active rows only indexed via `active`
    std::vector<Rat> rhs;
    std::vector<int> basis;           // per row, basic column
    std::vector<bool> active;
    long pivots = 0;
    long pivot_limit = 0;

    int cols() const { return 2 * n + m; }

    void pivot(int r, int c, std::vector<Rat>& cost, Rat& objval) {
        ++pivots;
        if (pivots > pivot_limit)
            throw CspErrorLike("pivot limit exceeded");
        Rat p = a[r][c];
        for (int j = 0; j < cols(); ++j) a[r][j] /= p;
        rhs[r] /= p;
        for (size_t i = 0; i < a.size(); ++i) {
            if (static_cast<int>(i) == r || !active[i]) continue;
            Rat f = a[i][c];
            if (f == 0) continue;
            for (int j = 0; j < cols(); ++j)
                if (a[r][j] != 0) a[i][j] -= f * a[r][j];
            rhs[i] -= f * rhs[r];
        }
        Rat f = cost[c];
        if (f != 0) {
            for (int j = 0; j < cols(); ++j)
                if (a[r][j] != 0) cost[j] -= f * a[r][j];
            objval -= f * rhs[r];
        }
        basis[r] = c;
    }

    // Bland: entering = lowest-index eligible column with negative reduced
    // cost; leaving = min ratio, ties by lowest basic column index.
    // Returns false when optimal, throws on unboundedness.
    bool step(std::vector<Rat>& cost, Rat& objval, bool allow_artificial) {
        int enter = -1;
        int limit = allow_artificial ? cols() : 2 * n;
        for (int j = 0; j < limit; ++j)
            if (cost[j] < 0) {
                enter = j;
                break;
            }
        if (enter == -1) return false;
        int leave = -1;
        Rat best_ratio;
        for (size_t i = 0; i < a.size(); ++i) {
            if (!active[i] || a[i][enter] <= 0) continue;
            Rat ratio = rhs[i] / a[i][enter];
            if (leave == -1 || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = static_cast<int>(i);
                best_ratio = ratio;
            }
        }
        if (leave == -1) throw CspErrorLike("unbounded direction in box-bounded model");
        pivot(leave, enter, cost, objval);
        return true;
    }

    struct CspErrorLike : std::runtime_error {
        explicit CspErrorLike(const std::string& w) : std::runtime_error(w) {}
    };
};

}  // namespace

LpSolution solve(const LpModel& model, const SolveOptions& opts) {
    const int n = static_cast<int>(model.vars.size());
    const int m = static_cast<int>(model.rows.size());

    Tableau t;
    t.n = n;
    t.m = m;
    t.pivot_limit = opts.pivot_limit;
    t.a.assign(m + n, std::vector<Rat>(t.cols(), Rat(0)));
    t.rhs.assign(m + n, Rat(0));
    t.basis.assign(m + n, -1);
    t.active.assign(m + n, true);

    // equality rows, normalized to rhs >= 0, with one artificial each
    for (int i = 0; i < m; ++i) {
        const auto& row = model.rows[i];
        bool flip = row.rhs < 0;
        for (const auto& [j, coef] : row.terms) t.a[i][j] += flip ? -coef : coef;
        t.rhs[i] = flip ? -row.rhs : row.rhs;
        if (t.rhs[i] < 0) {  // all-zero terms could not flip sign; re-check
            for (int j = 0; j < t.cols(); ++j) t.a[i][j] = -t.a[i][j];
            t.rhs[i] = -t.rhs[i];
        }
        t.a[i][2 * n + i] = 1;
        t.basis[i] = 2 * n + i;
    }
    // upper-bound rows x_j + s_j = 1
    for (int j = 0; j < n; ++j) {
        t.a[m + j][j] = 1;
        t.a[m + j][n + j] = 1;
        t.rhs[m + j] = 1;
        t.basis[m + j] = n + j;
    }

    LpSolution sol;
    try {
        // phase 1: minimize sum of artificials
        std::vector<Rat> cost(t.cols(), Rat(0));
        Rat objval = 0;
        for (int i = 0; i < m; ++i) cost[2 * n + i] = 1;
        for (int i = 0; i < m; ++i) {  // price out the initial artificial basis
            for (int j = 0; j < t.cols(); ++j) cost[j] -= t.a[i][j];
            objval -= t.rhs[i];
        }
        while (t.step(cost, objval, true)) {
        }
        if (objval < 0) {  // objval tracks -(sum of artificials)
            sol.status = SolveStatus::Infeasible;
            return sol;
        }
        // drive leftover zero-level artificials out of the basis
        for (int i = 0; i < m; ++i) {
            if (t.basis[i] < 2 * n) continue;
            int c = -1;
            for (int j = 0; j < 2 * n; ++j)
                if (t.a[i][j] != 0) {
                    c = j;
                    break;
                }
            if (c == -1) {
                t.active[i] = false;  // redundant row
            } else {
                t.pivot(i, c, cost, objval);
            }
        }

        // phase 2
        std::vector<Rat> cost2(t.cols(), Rat(0));
        Rat obj2 = 0;
        const bool maximize = model.sense == LpSense::Maximize;
        for (int j = 0; j < n; ++j) cost2[j] = maximize ? -model.objective[j] : model.objective[j];
        for (size_t i = 0; i < t.a.size(); ++i) {
            if (!t.active[i]) continue;
            Rat cb = cost2[t.basis[i]];
            if (cb == 0) continue;
            for (int j = 0; j < t.cols(); ++j)
                if (t.a[i][j] != 0) cost2[j] -= cb * t.a[i][j];
            obj2 -= cb * t.rhs[i];
        }
        // the pricing pass zeroes basic columns; obj2 currently holds -c_B b
        while (t.step(cost2, obj2, false)) {
        }

        sol.status = SolveStatus::Optimal;
        sol.values.assign(n, Rat(0));
        for (size_t i = 0; i < t.a.size(); ++i)
            if (t.active[i] && t.basis[i] < n) sol.values[t.basis[i]] = t.rhs[i];
        sol.objective = 0;
        for (int j = 0; j < n; ++j) sol.objective += model.objective[j] * sol.values[j];
        for (size_t i = 0; i < t.a.size(); ++i)
            if (t.active[i]) sol.basis.push_back(t.basis[i]);

        if (opts.dump_tableau) {
            std::cerr << "final tableau (" << t.a.size() << " rows x " << t.cols() << " cols)\n";
            for (size_t i = 0; i < t.a.size(); ++i) {
                if (!t.active[i]) continue;
                std::cerr << "b" << t.basis[i] << " |";
                for (int j = 0; j < t.cols(); ++j) std::cerr << " " << rat_str(t.a[i][j]);
                std::cerr << " = " << rat_str(t.rhs[i]) << "\n";
            }
        }
    } catch (const std::runtime_error& e) {
        throw CspError("SolverDiagnostic", e.what());
    }
    return sol;
}

bool is_integral(const LpModel& model, const LpSolution& sol) {
    if (sol.status != SolveStatus::Optimal)
        throw CspError("NotOptimal", "integrality check requires an optimal solution");
    for (const auto& v : sol.values)
        if (!is_zero_one(v)) return false;
    return true;
}

bool is_integral(const LpModel& model, const LpSolution& sol, const std::vector<int>& subset) {
    if (sol.status != SolveStatus::Optimal)
        throw CspError("NotOptimal", "integrality check requires an optimal solution");
    for (int j : subset)
        if (!is_zero_one(sol.values[j])) return false;
    return true;
}

bool verify_solution(const LpModel& model, const LpSolution& sol) {
    if (sol.status != SolveStatus::Optimal) return false;
    return model.satisfied_by(sol.values);
}

}  // namespace extform
