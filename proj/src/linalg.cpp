#include "permcert/linalg.hpp"

#include <utility>
#include <vector>

namespace permcert {

namespace {

// Scale each row by the lcm of its denominators. Returns the integer matrix;
// scales[i] holds the (positive) factor row i was multiplied by.
std::vector<std::vector<Int>> clear_denominators(const RatMatrix& m,
                                                 std::vector<Int>& scales) {
    std::vector<std::vector<Int>> z(m.rows, std::vector<Int>(m.cols));
    scales.assign(m.rows, Int(1));
    for (int i = 0; i < m.rows; ++i) {
        Int l(1);
        for (int j = 0; j < m.cols; ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.at(i, j).den().get_mpz_t());
        scales[i] = l;
        for (int j = 0; j < m.cols; ++j) {
            const Rat& e = m.at(i, j);
            z[i][j] = e.num() * (l / e.den());
        }
    }
    return z;
}

// One Bareiss update: z[i][j] <- (z[i][j]*pivot - z[i][pc]*z[pr][j]) / prev.
// The division is exact: every working entry is a bordered minor of the
// original matrix (Sylvester's identity), valid for any pivot column set.
void bareiss_row_update(std::vector<Int>& zi, const std::vector<Int>& zp,
                        const Int& pivot, const Int& lead, const Int& prev,
                        int from_col, int to_col) {
    Int t;
    for (int j = from_col; j < to_col; ++j) {
        t = zi[j] * pivot - lead * zp[j];
        mpz_divexact(zi[j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
    }
}

}  // namespace

Rat det(const RatMatrix& m) {
    if (!m.is_square()) throw ShapeError("det: matrix must be square");
    const int n = m.rows;
    if (n == 0) return Rat(1);

    std::vector<Int> scales;
    auto z = clear_denominators(m, scales);

    int sign = 1;
    Int prev(1);
    for (int k = 0; k < n - 1; ++k) {
        int piv = -1;
        for (int r = k; r < n; ++r)
            if (sgn(z[r][k]) != 0) { piv = r; break; }
        if (piv < 0) return Rat(0);
        if (piv != k) {
            std::swap(z[piv], z[k]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            Int lead = std::move(z[i][k]);
            z[i][k] = 0;
            bareiss_row_update(z[i], z[k], z[k][k], lead, prev, k + 1, n);
        }
        prev = z[k][k];
    }

    Int num = z[n - 1][n - 1];
    if (sign < 0) num = -num;
    Int den(1);
    for (const Int& s : scales) den *= s;
    return Rat(num, den);
}

int rank(const RatMatrix& m) {
    if (m.rows == 0 || m.cols == 0) return 0;
    std::vector<Int> scales;
    auto z = clear_denominators(m, scales);

    Int prev(1);
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int piv = -1;
        for (int i = r; i < m.rows; ++i)
            if (sgn(z[i][c]) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r) std::swap(z[piv], z[r]);
        for (int i = r + 1; i < m.rows; ++i) {
            Int lead = std::move(z[i][c]);
            z[i][c] = 0;
            bareiss_row_update(z[i], z[r], z[r][c], lead, prev, c + 1, m.cols);
        }
        prev = z[r][c];
        ++r;
    }
    return r;
}

RatMatrix mul(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols != b.rows) throw ShapeError("mul: inner dimensions disagree");
    RatMatrix out(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            const Rat& aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < b.cols; ++j) {
                const Rat& bkj = b.at(k, j);
                if (!bkj.is_zero()) out.at(i, j) += aik * bkj;
            }
        }
    return out;
}

RatMatrix transpose(const RatMatrix& m) {
    RatMatrix out(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) out.at(j, i) = m.at(i, j);
    return out;
}

RatMatrix pushforward_hessian(const RatMatrix& l, const RatMatrix& h) {
    if (!h.is_square()) throw ShapeError("pushforward_hessian: H must be square");
    if (l.cols != h.rows)
        throw ShapeError("pushforward_hessian: L cols must match H size");
    return mul(mul(l, h), transpose(l));
}

RatMatrix build_off_diagonal(const RatMatrix& q, const RatMatrix& r, int b) {
    if (!q.is_square() || !r.is_square() || q.rows != r.rows)
        throw ShapeError("build_off_diagonal: Q and R must be square of equal size");
    if (b < 2) throw ShapeError("build_off_diagonal: need b >= 2");
    const int a = q.rows;
    RatMatrix out(a * b, a * b);
    for (int bi = 0; bi < b; ++bi)
        for (int bj = 0; bj < b; ++bj) {
            if (bi == bj) continue;
            const RatMatrix& block = (bi == 0 || bj == 0) ? q : r;
            for (int i = 0; i < a; ++i)
                for (int j = 0; j < a; ++j)
                    out.at(bi * a + i, bj * a + j) = block.at(i, j);
        }
    return out;
}

}  // namespace permcert
