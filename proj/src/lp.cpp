#include "cks/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cks {

LpModel::LpModel(int n) : nvars(n) {
    if (n < 1) throw std::invalid_argument("LpModel: need at least one variable");
    objective.assign(n, 0.0);
    lower.assign(n, 0.0);
    upper.assign(n, 1.0);
}

void LpModel::add_row(LpRow row) {
    for (auto [j, a] : row.coef) {
        (void)a;
        if (j < 0 || j >= nvars) throw std::invalid_argument("LpModel: row index out of range");
    }
    rows.push_back(std::move(row));
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Working state of the bounded-variable simplex.  Variables 0..n-1 are the
/// structurals, n..n+m-1 the row slacks (lower 0, upper infinity).
struct Simplex {
    const LpModel& model;
    LpOptions opt;
    int n, m, total;
    std::vector<std::vector<std::pair<int, double>>> col;  // structural columns
    std::vector<double> lo, up;
    std::vector<int> basic;
    std::vector<char> in_basis;
    std::vector<char> at_upper;
    std::vector<std::vector<double>> binv;
    std::vector<double> xb;
    int pivots_since_refactor = 0;

    Simplex(const LpModel& mod, const LpOptions& o) : model(mod), opt(o) {
        n = mod.nvars;
        m = static_cast<int>(mod.rows.size());
        total = n + m;
        col.assign(n, {});
        for (int r = 0; r < m; ++r)
            for (auto [j, a] : mod.rows[r].coef)
                if (a != 0.0) col[j].push_back({r, a});
        lo.assign(total, 0.0);
        up.assign(total, kInf);
        for (int j = 0; j < n; ++j) {
            lo[j] = mod.lower[j];
            up[j] = mod.upper[j];
            if (lo[j] > up[j] + 1e-12)
                throw std::invalid_argument("lp_solve: crossed variable bounds");
        }
    }

    void load_basis(const LpBasis* warm, const LpFactorCache* cache) {
        basic.assign(m, -1);
        at_upper.assign(total, 0);
        for (int r = 0; r < m; ++r) basic[r] = n + r;
        if (warm) {
            // Rows appended since the basis was captured keep their own slack.
            for (size_t r = 0; r < warm->basic.size() && r < static_cast<size_t>(m); ++r)
                basic[r] = warm->basic[r];
            for (size_t j = 0; j < warm->at_upper.size() && j < static_cast<size_t>(total); ++j)
                at_upper[j] = warm->at_upper[j];
        }
        in_basis.assign(total, 0);
        for (int r = 0; r < m; ++r) {
            if (basic[r] < 0 || basic[r] >= total || in_basis[basic[r]])
                throw std::runtime_error("lp_solve: broken basis");
            in_basis[basic[r]] = 1;
        }
        for (int j = 0; j < total; ++j)
            if (up[j] == kInf) at_upper[j] = 0;
        if (cache && extend_factorization(*cache)) return;
        refactor();
    }

    /// Reuse a cached inverse when the current basis is the cached one plus
    /// appended rows that still carry their own slack.  The bordered basis
    /// [[B,0],[C,I]] inverts to [[Binv,0],[-C Binv,I]].
    bool extend_factorization(const LpFactorCache& cache) {
        int m0 = static_cast<int>(cache.basic.size());
        if (m0 == 0 || m0 > m || static_cast<int>(cache.binv.size()) != m0) return false;
        for (int r = 0; r < m0; ++r)
            if (basic[r] != cache.basic[r]) return false;
        for (int r = m0; r < m; ++r)
            if (basic[r] != n + r) return false;
        binv.assign(m, std::vector<double>(m, 0.0));
        for (int r = 0; r < m0; ++r)
            std::copy(cache.binv[r].begin(), cache.binv[r].end(), binv[r].begin());
        std::vector<double> dense(n, 0.0);
        for (int r = m0; r < m; ++r) {
            for (auto [j, a] : model.rows[r].coef) dense[j] = a;
            std::vector<double>& out = binv[r];
            for (int q = 0; q < m0; ++q) {
                int bj = basic[q];  // old slacks never appear in appended rows
                double cq = bj < n ? dense[bj] : 0.0;
                if (cq == 0.0) continue;
                const std::vector<double>& bq = cache.binv[q];
                for (int i = 0; i < m0; ++i) out[i] -= cq * bq[i];
            }
            out[r] = 1.0;
            for (auto [j, a] : model.rows[r].coef) {
                (void)a;
                dense[j] = 0.0;
            }
        }
        pivots_since_refactor = cache.pivots;
        return true;
    }

    /// Dense column of any variable.
    void dense_column(int j, std::vector<double>& out) const {
        std::fill(out.begin(), out.end(), 0.0);
        if (j < n)
            for (auto [r, a] : col[j]) out[r] = a;
        else
            out[j - n] = 1.0;
    }

    void refactor() {
        const int w2 = 2 * m;
        std::vector<double> mat(static_cast<size_t>(m) * w2, 0.0);
        std::vector<double> cvec(m);
        for (int r = 0; r < m; ++r) {
            dense_column(basic[r], cvec);
            for (int i = 0; i < m; ++i) mat[static_cast<size_t>(i) * w2 + r] = cvec[i];
            mat[static_cast<size_t>(r) * w2 + m + r] = 1.0;
        }
        for (int c = 0; c < m; ++c) {
            int pr = c;
            for (int r = c + 1; r < m; ++r)
                if (std::fabs(mat[static_cast<size_t>(r) * w2 + c]) >
                    std::fabs(mat[static_cast<size_t>(pr) * w2 + c]))
                    pr = r;
            if (std::fabs(mat[static_cast<size_t>(pr) * w2 + c]) < 1e-11)
                throw std::runtime_error("lp_solve: singular basis");
            if (pr != c)
                std::swap_ranges(mat.begin() + static_cast<size_t>(c) * w2,
                                 mat.begin() + static_cast<size_t>(c + 1) * w2,
                                 mat.begin() + static_cast<size_t>(pr) * w2);
            double* rowc = &mat[static_cast<size_t>(c) * w2];
            double inv = 1.0 / rowc[c];
            for (int k = c; k < w2; ++k) rowc[k] *= inv;
            for (int r = 0; r < m; ++r) {
                if (r == c) continue;
                double* rowr = &mat[static_cast<size_t>(r) * w2];
                double f = rowr[c];
                if (f == 0.0) continue;
                for (int k = c; k < w2; ++k) rowr[k] -= f * rowc[k];
            }
        }
        binv.assign(m, std::vector<double>(m));
        for (int r = 0; r < m; ++r)
            for (int i = 0; i < m; ++i) binv[r][i] = mat[static_cast<size_t>(r) * w2 + m + i];
        pivots_since_refactor = 0;
    }

    double nonbasic_value(int j) const { return at_upper[j] ? up[j] : lo[j]; }

    void compute_xb() {
        std::vector<double> rhs(m);
        for (int r = 0; r < m; ++r) rhs[r] = model.rows[r].rhs;
        for (int j = 0; j < total; ++j) {
            if (in_basis[j]) continue;
            double v = nonbasic_value(j);
            if (v == 0.0) continue;
            if (j < n)
                for (auto [r, a] : col[j]) rhs[r] -= v * a;
            else
                rhs[j - n] -= v;
        }
        xb.assign(m, 0.0);
        for (int r = 0; r < m; ++r)
            for (int i = 0; i < m; ++i) xb[r] += binv[r][i] * rhs[i];
    }

    /// Phase-1 cost of a basic slot: push infeasible values back to the box.
    double phase1_cost(int r) const {
        int j = basic[r];
        if (xb[r] < lo[j] - opt.feas_tol) return 1.0;
        if (xb[r] > up[j] + opt.feas_tol) return -1.0;
        return 0.0;
    }

    bool primal_infeasible() const {
        for (int r = 0; r < m; ++r)
            if (phase1_cost(r) != 0.0) return true;
        return false;
    }

    double reduced_cost(int j, const std::vector<double>& y, bool phase1) const {
        double d = (phase1 || j >= n) ? 0.0 : model.objective[j];
        if (j < n)
            for (auto [r, a] : col[j]) d -= y[r] * a;
        else
            d -= y[j - n];
        return d;
    }
};

}  // namespace

namespace {

LpSolution lp_solve_inner(const LpModel& model, const LpBasis* warm, const LpOptions& opt,
                          LpFactorCache* cache) {
    Simplex s(model, opt);
    try {
        s.load_basis(warm, cache);
    } catch (const std::runtime_error&) {
        s.load_basis(nullptr, nullptr);  // unusable warm basis: fall back to the slack basis
    }
    s.compute_xb();

    int iterations = 0;
    int degen_run = 0;
    bool bland = false;
    std::vector<double> y(s.m), w(s.m), acol(s.m);

    while (true) {
        if (++iterations > opt.max_iterations)
            throw std::runtime_error("lp_solve: iteration limit reached");
        if (s.pivots_since_refactor >= opt.refactor_every) {
            s.refactor();
            s.compute_xb();  // basic values from the fresh factorization
        }
        bool phase1 = s.primal_infeasible();

        // Price: y = cB * Binv with the phase's basic costs.
        std::fill(y.begin(), y.end(), 0.0);
        for (int r = 0; r < s.m; ++r) {
            double cb = phase1 ? s.phase1_cost(r)
                               : (s.basic[r] < s.n ? model.objective[s.basic[r]] : 0.0);
            if (cb == 0.0) continue;
            for (int i = 0; i < s.m; ++i) y[i] += cb * s.binv[r][i];
        }

        // Entering variable: Dantzig's largest violation, Bland's first when stalling.
        int enter = -1;
        double best = 0.0;
        for (int j = 0; j < s.total; ++j) {
            if (s.in_basis[j]) continue;
            if (s.up[j] - s.lo[j] < 1e-14) continue;  // fixed variable
            double d = s.reduced_cost(j, y, phase1);
            bool ok = s.at_upper[j] ? d < -opt.pivot_tol : d > opt.pivot_tol;
            if (!ok) continue;
            if (bland) {
                enter = j;
                break;
            }
            if (std::fabs(d) > best) {
                best = std::fabs(d);
                enter = j;
            }
        }
        if (enter < 0) {
            s.compute_xb();  // shed incremental drift before reporting values
            if (s.primal_infeasible() != phase1) continue;  // drift misread a bound: re-price
            LpSolution out;
            out.iterations = iterations;
            out.basis.basic = s.basic;
            out.basis.at_upper.assign(s.at_upper.begin(), s.at_upper.end());
            out.x.assign(s.n, 0.0);
            for (int j = 0; j < s.n; ++j)
                if (!s.in_basis[j]) out.x[j] = s.nonbasic_value(j);
            for (int r = 0; r < s.m; ++r)
                if (s.basic[r] < s.n) out.x[s.basic[r]] = s.xb[r];
            if (cache) {
                cache->basic = s.basic;
                cache->binv = std::move(s.binv);
                cache->pivots = s.pivots_since_refactor;
            }
            if (phase1) {
                out.status = LpStatus::infeasible;
                return out;
            }
            out.status = LpStatus::optimal;
            out.objective = 0.0;
            for (int j = 0; j < s.n; ++j) out.objective += model.objective[j] * out.x[j];
            return out;
        }

        double delta = s.at_upper[enter] ? -1.0 : 1.0;
        s.dense_column(enter, acol);
        for (int r = 0; r < s.m; ++r) {
            double acc = 0.0;
            for (int i = 0; i < s.m; ++i) acc += s.binv[r][i] * acol[i];
            w[r] = acc;
        }

        // Ratio test: the entering bound flip competes with every basic bound.
        double t_best = s.up[enter] - s.lo[enter];
        int leave = -1;
        bool leave_at_upper = false;
        double leave_rate = 0.0;
        for (int r = 0; r < s.m; ++r) {
            double rate = -delta * w[r];
            if (std::fabs(rate) < opt.pivot_tol) continue;
            int bj = s.basic[r];
            double t;
            bool to_upper;
            if (rate > 0.0) {
                if (s.xb[r] < s.lo[bj] - opt.feas_tol) {
                    t = (s.lo[bj] - s.xb[r]) / rate;  // climbs back to its lower bound
                    to_upper = false;
                } else if (s.xb[r] > s.up[bj] + opt.feas_tol) {
                    continue;  // already past the upper bound and moving away
                } else if (s.up[bj] < kInf) {
                    t = (s.up[bj] - s.xb[r]) / rate;
                    to_upper = true;
                } else {
                    continue;
                }
            } else {
                if (s.xb[r] > s.up[bj] + opt.feas_tol) {
                    t = (s.up[bj] - s.xb[r]) / rate;  // drops back to its upper bound
                    to_upper = true;
                } else if (s.xb[r] < s.lo[bj] - opt.feas_tol) {
                    continue;  // already past the lower bound and moving away
                } else {
                    t = (s.lo[bj] - s.xb[r]) / rate;
                    to_upper = false;
                }
            }
            if (t < 0.0) t = 0.0;
            bool better = t < t_best - 1e-12;
            if (!better && t < t_best + 1e-12 && leave >= 0) {
                // Tie: Bland wants the smallest id, otherwise the sturdier pivot.
                better = bland ? bj < s.basic[leave] : std::fabs(rate) > std::fabs(leave_rate);
            }
            if (better) {
                t_best = t;
                leave = r;
                leave_at_upper = to_upper;
                leave_rate = rate;
            }
        }
        if (t_best == kInf)
            throw std::runtime_error("lp_solve: unbounded pivot direction");

        if (t_best <= 1e-12) {
            if (++degen_run >= opt.stall_limit) bland = true;
        } else {
            degen_run = 0;
            bland = false;
        }

        double step = delta * t_best;

        if (leave < 0) {
            // Bound flip: basis unchanged, basic values shift along w.
            if (step != 0.0)
                for (int r = 0; r < s.m; ++r) s.xb[r] -= step * w[r];
            s.at_upper[enter] = !s.at_upper[enter];
            continue;
        }

        double enter_value = s.nonbasic_value(enter) + step;

        // Pivot: Gauss-Jordan step turning column w into the leave-th unit vector.
        double piv = w[leave];
        int out_var = s.basic[leave];
        for (int i = 0; i < s.m; ++i) s.binv[leave][i] /= piv;
        for (int r = 0; r < s.m; ++r) {
            if (r == leave || w[r] == 0.0) continue;
            double f = w[r];
            for (int i = 0; i < s.m; ++i) s.binv[r][i] -= f * s.binv[leave][i];
        }
        for (int r = 0; r < s.m; ++r)
            if (r != leave) s.xb[r] -= step * w[r];
        s.xb[leave] = enter_value;
        s.basic[leave] = enter;
        s.in_basis[enter] = 1;
        s.in_basis[out_var] = 0;
        s.at_upper[out_var] = leave_at_upper && s.up[out_var] < kInf;
        ++s.pivots_since_refactor;
    }
}

}  // namespace

LpSolution lp_solve(const LpModel& model, const LpBasis* warm, const LpOptions& opt,
                    LpFactorCache* cache) {
    if (static_cast<int>(model.objective.size()) != model.nvars)
        throw std::invalid_argument("lp_solve: objective size mismatch");
    try {
        return lp_solve_inner(model, warm, opt, cache);
    } catch (...) {
        if (cache) cache->basic.clear();  // a thrown solve leaves no reusable inverse
        throw;
    }
}

}  // namespace cks
