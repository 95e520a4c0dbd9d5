#include "cresym/simplex.hpp"

#include <stdexcept>

namespace cresym {

namespace {

/* Dense tableau:
 *   rows 0..m-1 : constraints, columns 0..n_total-1 plus a rhs column
 *   row m       : reduced-cost row (c_j - y.A_j), rhs entry tracks -z
 * basis[i] = column basic in row i. Bland's rule throughout. */
struct Tableau {
    RatMatrix t;
    std::vector<int> basis;
    int m, n;

    void pivot(int row, int col) {
        Rat piv = t[row][col];
        for (auto& v : t[row]) v /= piv;
        for (int i = 0; i <= m; ++i) {
            if (i == row) continue;
            Rat f = t[i][col];
            if (f == 0) continue;
            for (int j = 0; j <= n; ++j) t[i][j] -= f * t[row][j];
        }
        basis[row] = col;
    }

    // Maximize over the allowed columns; returns false on unbounded.
    bool run(const std::vector<bool>& allowed) {
        for (;;) {
            int enter = -1;
            for (int j = 0; j < n; ++j)
                if (allowed[j] && t[m][j] > 0) { enter = j; break; }
            if (enter < 0) return true;
            int leave = -1;
            Rat best;
            for (int i = 0; i < m; ++i) {
                if (t[i][enter] <= 0) continue;
                Rat ratio = t[i][n] / t[i][enter];
                if (leave < 0 || ratio < best ||
                    (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
    }
};

}  // namespace

LpSolution solve_lp(const LpProblem& p) {
    const int m = static_cast<int>(p.a.size());
    const int n = m == 0 ? static_cast<int>(p.c.size()) : static_cast<int>(p.a[0].size());
    LpSolution sol;
    if (m == 0) {
        sol.status = LpStatus::Optimal;
        sol.x.assign(n, Rat(0));
        for (int j = 0; j < static_cast<int>(p.c.size()); ++j)
            if (p.c[j] > 0) { sol.status = LpStatus::Unbounded; break; }
        return sol;
    }

    std::vector<bool> row_negated(m, false);
    Tableau tab;
    tab.m = m;
    tab.n = n + m;  // original columns, then one artificial per row
    tab.t.assign(m + 1, std::vector<Rat>(tab.n + 1, Rat(0)));
    tab.basis.resize(m);
    for (int i = 0; i < m; ++i) {
        row_negated[i] = p.b[i] < 0;
        for (int j = 0; j < n; ++j) tab.t[i][j] = row_negated[i] ? -p.a[i][j] : p.a[i][j];
        tab.t[i][tab.n] = row_negated[i] ? -p.b[i] : p.b[i];
        tab.t[i][n + i] = 1;
        tab.basis[i] = n + i;
    }
    // Phase 1: maximize -(sum of artificials). With the artificial basis the
    // reduced-cost row is the sum of the constraint rows on original columns
    // (and on the rhs), zero on artificial columns.
    for (int j = 0; j <= tab.n; ++j) {
        Rat s = 0;
        for (int i = 0; i < m; ++i) s += tab.t[i][j];
        tab.t[m][j] = (j >= n && j < tab.n) ? Rat(0) : s;
    }
    std::vector<bool> allowed(tab.n, true);
    if (!tab.run(allowed)) throw std::logic_error("phase 1 unbounded");

    if (tab.t[m][tab.n] > 0) {  // artificials cannot all vanish
        sol.status = LpStatus::Infeasible;
        // At termination the artificial column k carries -1 - y_k in the
        // reduced-cost row; ŷ = -y then satisfies ŷ.A <= 0, ŷ.b > 0.
        std::vector<Rat> yh(m);
        for (int i = 0; i < m; ++i) {
            yh[i] = 1 + tab.t[m][n + i];
            if (row_negated[i]) yh[i] = -yh[i];
        }
        bool ok = true;
        Rat yb = 0;
        for (int i = 0; i < m; ++i) yb += yh[i] * p.b[i];
        if (!(yb > 0)) ok = false;
        for (int j = 0; j < n && ok; ++j) {
            Rat s = 0;
            for (int i = 0; i < m; ++i) s += yh[i] * p.a[i][j];
            if (s > 0) ok = false;
        }
        if (ok) sol.farkas = std::move(yh);
        return sol;
    }

    // Drive basic artificials out before phase 2: pivot on any original
    // column in their (degenerate) row. Rows that are zero on all original
    // columns are redundant and can never change afterwards.
    for (int i = 0; i < m; ++i) {
        if (tab.basis[i] < n) continue;
        for (int j = 0; j < n; ++j)
            if (tab.t[i][j] != 0) {
                tab.pivot(i, j);
                break;
            }
    }

    // Phase 2; artificial columns are barred from entering.
    for (int j = n; j < tab.n; ++j) allowed[j] = false;
    for (int j = 0; j <= tab.n; ++j) tab.t[m][j] = 0;
    if (!p.c.empty()) {
        for (int j = 0; j < n; ++j) tab.t[m][j] = p.c[j];
        for (int i = 0; i < m; ++i) {  // price out the current basis
            int bj = tab.basis[i];
            if (tab.t[m][bj] != 0) {
                Rat f = tab.t[m][bj];
                for (int j = 0; j <= tab.n; ++j) tab.t[m][j] -= f * tab.t[i][j];
            }
        }
        if (!tab.run(allowed)) {
            sol.status = LpStatus::Unbounded;
            return sol;
        }
    }

    sol.status = LpStatus::Optimal;
    sol.x.assign(n, Rat(0));
    for (int i = 0; i < m; ++i)
        if (tab.basis[i] < n) sol.x[tab.basis[i]] = tab.t[i][tab.n];
    sol.objective = 0;
    for (int j = 0; j < static_cast<int>(p.c.size()); ++j) sol.objective += p.c[j] * sol.x[j];
    return sol;
}

int rat_rank(RatMatrix a) {
    int m = static_cast<int>(a.size());
    if (m == 0) return 0;
    int n = static_cast<int>(a[0].size());
    int rank = 0;
    for (int col = 0; col < n && rank < m; ++col) {
        int piv = -1;
        for (int i = rank; i < m; ++i)
            if (a[i][col] != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(a[rank], a[piv]);
        for (int i = 0; i < m; ++i) {
            if (i == rank || a[i][col] == 0) continue;
            Rat f = a[i][col] / a[rank][col];
            for (int j = col; j < n; ++j) a[i][j] -= f * a[rank][j];
        }
        ++rank;
    }
    return rank;
}

LinearSolve solve_linear(RatMatrix a, std::vector<Rat> b) {
    LinearSolve out;
    int m = static_cast<int>(a.size());
    int n = m == 0 ? 0 : static_cast<int>(a[0].size());
    std::vector<int> pivot_col;
    int rank = 0;
    for (int col = 0; col < n && rank < m; ++col) {
        int piv = -1;
        for (int i = rank; i < m; ++i)
            if (a[i][col] != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(a[rank], a[piv]);
        std::swap(b[rank], b[piv]);
        Rat d = a[rank][col];
        for (int j = 0; j < n; ++j) a[rank][j] /= d;
        b[rank] /= d;
        for (int i = 0; i < m; ++i) {
            if (i == rank || a[i][col] == 0) continue;
            Rat f = a[i][col];
            for (int j = 0; j < n; ++j) a[i][j] -= f * a[rank][j];
            b[i] -= f * b[rank];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (int i = rank; i < m; ++i)
        if (b[i] != 0) return out;  // inconsistent
    out.consistent = true;
    out.unique = (rank == n);
    out.x.assign(n, Rat(0));
    for (int i = 0; i < rank; ++i) out.x[pivot_col[i]] = b[i];
    return out;
}

}  // namespace cresym
