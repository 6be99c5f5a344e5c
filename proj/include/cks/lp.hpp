#pragma once

#include <utility>
#include <vector>

namespace cks {

/// One <=-row: sparse coefficients over variable ids plus a right-hand side.
struct LpRow {
    std::vector<std::pair<int, double>> coef;
    double rhs = 0.0;
};

/// Maximize objective . x subject to rows (all <=) and per-variable bounds.
/// Bounds default to [0, 1]; callers tighten them to fix variables.
struct LpModel {
    int nvars = 0;
    std::vector<double> objective;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<LpRow> rows;

    explicit LpModel(int nvars);
    void add_row(LpRow row);
};

/// Simplex basis: one basic variable per row (slack ids start at nvars) and
/// the at-upper flags of the nonbasic variables.  A basis stays valid across
/// row additions (new slacks enter basic) and bound changes.
struct LpBasis {
    std::vector<int> basic;
    std::vector<char> at_upper;
};

enum class LpStatus { optimal, infeasible };

struct LpSolution {
    LpStatus status = LpStatus::optimal;
    double objective = 0.0;
    std::vector<double> x;
    LpBasis basis;
    int iterations = 0;
};

struct LpOptions {
    double feas_tol = 1e-7;    // bound/row feasibility
    double pivot_tol = 1e-9;   // reduced-cost and pivot-element threshold
    int max_iterations = 200000;
    int refactor_every = 50;
    int stall_limit = 100;     // degenerate pivots before switching to Bland's rule
};

/// Factorization handed back by lp_solve for reuse.  A later call picks it up
/// when its warm basis extends `basic` by freshly appended slack rows, which
/// replaces the dense refactorization with a cheap bordered update.
struct LpFactorCache {
    std::vector<int> basic;
    std::vector<std::vector<double>> binv;
    int pivots = 0;  // pivots applied since the last true refactorization
};

/// Bounded-variable primal simplex (dense basis inverse, Dantzig pricing with
/// Bland fallback, composite phase 1).  Deterministic; numerical trouble
/// raises std::runtime_error rather than returning a wrong status.
LpSolution lp_solve(const LpModel& m, const LpBasis* warm = nullptr, const LpOptions& opt = {},
                    LpFactorCache* cache = nullptr);

}  // namespace cks
