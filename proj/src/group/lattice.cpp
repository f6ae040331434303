#include "heightforge/group/lattice.hpp"

#include <stdexcept>

namespace heightforge {

namespace {

void row_combine(IntMatrix& M, std::size_t i, std::size_t j, const Integer& a, const Integer& b, const Integer& c,
                 const Integer& d) {
    // (row_i, row_j) <- (a row_i + b row_j, c row_i + d row_j)
    for (std::size_t k = 0; k < M[i].size(); ++k) {
        Integer x = M[i][k], y = M[j][k];
        M[i][k] = a * x + b * y;
        M[j][k] = c * x + d * y;
    }
}

Rational dot(const RatVector& a, const RatVector& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

} // namespace

EchelonForm integer_echelon(const IntMatrix& A) {
    EchelonForm E;
    E.H = A;
    const std::size_t k = A.size();
    const std::size_t m = k ? A[0].size() : 0;
    E.U.assign(k, IntVector(k, 0));
    for (std::size_t i = 0; i < k; ++i)
        E.U[i][i] = 1;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m && row < k; ++col) {
        // Euclid down the column until only E.H[row][col] is nonzero.
        for (std::size_t r = row + 1; r < k; ++r) {
            if (E.H[r][col] == 0)
                continue;
            Integer g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), E.H[row][col].get_mpz_t(),
                       E.H[r][col].get_mpz_t());
            const Integer a = E.H[row][col] / g, b = E.H[r][col] / g;
            // [s t; -b a] has determinant s a + t b = 1.
            row_combine(E.H, row, r, s, t, -b, a);
            row_combine(E.U, row, r, s, t, -b, a);
        }
        if (E.H[row][col] == 0)
            continue;
        if (E.H[row][col] < 0) {
            for (auto& x : E.H[row])
                x = -x;
            for (auto& x : E.U[row])
                x = -x;
        }
        E.pivots.push_back(col);
        ++row;
    }
    E.rank = row;
    return E;
}

IntMatrix integer_left_kernel(const IntMatrix& A) {
    EchelonForm E = integer_echelon(A);
    IntMatrix K(E.U.begin() + static_cast<long>(E.rank), E.U.end());
    if (K.empty())
        return K;
    lll_reduce(K);
    for (auto& row : K) {
        for (const auto& x : row) {
            if (x == 0)
                continue;
            if (x < 0)
                for (auto& y : row)
                    y = -y;
            break;
        }
    }
    return K;
}

std::size_t rational_rank(RatMatrix rows) {
    std::size_t rank = 0;
    const std::size_t m = rows.empty() ? 0 : rows[0].size();
    for (std::size_t col = 0; col < m && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][col] == 0)
            ++pivot;
        if (pivot == rows.size())
            continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if (rows[r][col] == 0)
                continue;
            Rational f = rows[r][col] / rows[rank][col];
            for (std::size_t c = col; c < m; ++c)
                rows[r][c] -= f * rows[rank][c];
        }
        ++rank;
    }
    return rank;
}

std::optional<RatVector> solve_in_row_span(const RatMatrix& B, const RatVector& w) {
    // Gaussian elimination on the transposed system B^T x = w.
    const std::size_t k = B.size();
    const std::size_t m = w.size();
    RatMatrix aug(m, RatVector(k + 1));
    for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t r = 0; r < k; ++r)
            aug[c][r] = B[r][c];
        aug[c][k] = w[c];
    }
    std::vector<std::size_t> pivot_cols;
    std::size_t row = 0;
    for (std::size_t col = 0; col < k && row < m; ++col) {
        std::size_t p = row;
        while (p < m && aug[p][col] == 0)
            ++p;
        if (p == m)
            continue;
        std::swap(aug[row], aug[p]);
        const Rational inv = 1 / aug[row][col];
        for (auto& x : aug[row])
            x *= inv;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == row || aug[r][col] == 0)
                continue;
            const Rational f = aug[r][col];
            for (std::size_t c = 0; c <= k; ++c)
                aug[r][c] -= f * aug[row][c];
        }
        pivot_cols.push_back(col);
        ++row;
    }
    for (std::size_t r = row; r < m; ++r)
        if (aug[r][k] != 0)
            return std::nullopt;
    RatVector x(k, 0);
    for (std::size_t i = 0; i < pivot_cols.size(); ++i)
        x[pivot_cols[i]] = aug[i][k];
    return x;
}

std::vector<Rational> gram_schmidt_norms(const IntMatrix& basis) {
    const std::size_t n = basis.size();
    std::vector<RatVector> star(n);
    std::vector<Rational> norms(n);
    for (std::size_t i = 0; i < n; ++i) {
        star[i].assign(basis[i].begin(), basis[i].end());
        for (std::size_t j = 0; j < i; ++j) {
            if (norms[j] == 0)
                continue;
            RatVector bi(basis[i].begin(), basis[i].end());
            const Rational mu = dot(bi, star[j]) / norms[j];
            for (std::size_t c = 0; c < star[i].size(); ++c)
                star[i][c] -= mu * star[j][c];
        }
        norms[i] = dot(star[i], star[i]);
    }
    return norms;
}

void lll_reduce(IntMatrix& b) {
    const std::size_t n = b.size();
    if (n <= 1)
        return;
    const Rational delta(3, 4);
    std::vector<RatVector> star(n);
    std::vector<Rational> norm(n);
    std::vector<RatVector> mu(n, RatVector(n));
    auto recompute = [&]() {
        for (std::size_t i = 0; i < n; ++i) {
            RatVector bi(b[i].begin(), b[i].end());
            star[i] = bi;
            for (std::size_t j = 0; j < i; ++j) {
                mu[i][j] = norm[j] == 0 ? Rational(0) : dot(bi, star[j]) / norm[j];
                for (std::size_t c = 0; c < bi.size(); ++c)
                    star[i][c] -= mu[i][j] * star[j][c];
            }
            norm[i] = dot(star[i], star[i]);
            if (norm[i] == 0)
                throw std::invalid_argument("lll_reduce: dependent rows");
        }
    };
    recompute();
    std::size_t k = 1;
    while (k < n) {
        for (std::size_t j = k; j-- > 0;) {
            Rational m = mu[k][j];
            if (abs(m) * 2 <= 1)
                continue;
            Integer q;
            // nearest integer to m
            Rational shifted = m + Rational(1, 2);
            mpz_fdiv_q(q.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
            for (std::size_t c = 0; c < b[k].size(); ++c)
                b[k][c] -= q * b[j][c];
            for (std::size_t l = 0; l <= j; ++l)
                mu[k][l] -= (l == j ? Rational(q) : q * mu[j][l]);
        }
        if (norm[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * norm[k - 1]) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            recompute();
            k = k > 1 ? k - 1 : 1;
        }
    }
}

IntMatrix clear_denominators(const RatMatrix& A, Integer* scale) {
    Integer d = 1;
    for (const auto& row : A)
        for (const auto& x : row)
            mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
    IntMatrix out;
    for (const auto& row : A) {
        IntVector r;
        for (const auto& x : row) {
            Rational y = x * d;
            r.push_back(y.get_num());
        }
        out.push_back(std::move(r));
    }
    if (scale)
        *scale = d;
    return out;
}

} // namespace heightforge
