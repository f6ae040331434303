#include "heightforge/norm/linear_program.hpp"

#include "heightforge/core/errors.hpp"

namespace heightforge {

namespace {

struct Tableau {
    RatMatrix T;  // m rows of [A | b]
    std::vector<std::size_t> basis;
    std::size_t cols;  // number of variables

    void pivot(std::size_t row, std::size_t col) {
        const Rational p = T[row][col];
        for (auto& v : T[row])
            v /= p;
        for (std::size_t i = 0; i < T.size(); ++i) {
            if (i == row || T[i][col] == 0)
                continue;
            const Rational f = T[i][col];
            for (std::size_t j = 0; j <= cols; ++j)
                if (T[row][j] != 0)
                    T[i][j] -= f * T[row][j];
        }
        basis[row] = col;
    }

    // Runs the simplex on cost vector c restricted to columns < allowed.
    // Returns false when unbounded.
    bool optimize(const RatVector& c, std::size_t allowed) {
        const std::size_t m = T.size();
        for (;;) {
            std::size_t enter = allowed;
            for (std::size_t j = 0; j < allowed && enter == allowed; ++j) {
                Rational d = c[j];
                for (std::size_t i = 0; i < m; ++i)
                    if (T[i][j] != 0)
                        d -= c[basis[i]] * T[i][j];
                if (d < 0)
                    enter = j;
            }
            if (enter == allowed)
                return true;
            std::size_t leave = m;
            Rational best;
            for (std::size_t i = 0; i < m; ++i) {
                if (T[i][enter] <= 0)
                    continue;
                Rational ratio = T[i][cols] / T[i][enter];
                if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m)
                return false;
            pivot(leave, enter);
        }
    }
};

} // namespace

std::optional<LpSolution> minimize_lp(const RatMatrix& A, const RatVector& b, const RatVector& c) {
    const std::size_t m = A.size();
    const std::size_t n = c.size();
    Tableau tab;
    tab.cols = n + m;
    tab.T.assign(m, RatVector(n + m + 1, 0));
    tab.basis.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const int s = b[i] < 0 ? -1 : 1;
        for (std::size_t j = 0; j < n; ++j)
            tab.T[i][j] = s * A[i][j];
        tab.T[i][n + i] = 1;
        tab.T[i][n + m] = s * b[i];
        tab.basis[i] = n + i;
    }
    RatVector phase1(n + m, 0);
    for (std::size_t i = 0; i < m; ++i)
        phase1[n + i] = 1;
    tab.optimize(phase1, n + m);
    Rational infeasibility = 0;
    for (std::size_t i = 0; i < m; ++i)
        if (tab.basis[i] >= n)
            infeasibility += tab.T[i][n + m];
    if (infeasibility != 0)
        return std::nullopt;
    // Drive artificial variables out of the basis; rows where that is
    // impossible are redundant.
    for (std::size_t i = 0; i < tab.T.size();) {
        if (tab.basis[i] < n) {
            ++i;
            continue;
        }
        std::size_t col = n;
        for (std::size_t j = 0; j < n && col == n; ++j)
            if (tab.T[i][j] != 0)
                col = j;
        if (col < n) {
            tab.pivot(i, col);
            ++i;
        } else {
            tab.T.erase(tab.T.begin() + static_cast<long>(i));
            tab.basis.erase(tab.basis.begin() + static_cast<long>(i));
        }
    }
    RatVector phase2(n + m, 0);
    std::copy(c.begin(), c.end(), phase2.begin());
    if (!tab.optimize(phase2, n))
        throw InvalidInput("linear program is unbounded");
    LpSolution sol{0, RatVector(n, 0)};
    for (std::size_t i = 0; i < tab.T.size(); ++i)
        sol.x[tab.basis[i]] = tab.T[i][n + m];
    for (std::size_t j = 0; j < n; ++j)
        sol.value += c[j] * sol.x[j];
    return sol;
}

} // namespace heightforge
