#include "permcert/family.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

#include "permcert/errors.hpp"
#include "permcert/linalg.hpp"
#include "family_internal.hpp"

namespace permcert {

namespace detail {

void check_shape(const FamilySpec& spec, const RatMatrix& x) {
    if (x.rows != spec.rows() || x.cols != spec.cols())
        throw ShapeError(spec.display_name() + ": expected " +
                         std::to_string(spec.rows()) + "x" +
                         std::to_string(spec.cols()) + " matrix, got " +
                         std::to_string(x.rows) + "x" + std::to_string(x.cols));
}

Rat hoperm_rec_raw(int n, const RatMatrix& x) {
    // State: bitmask of column pairs still unused; rows are consumed top to
    // bottom, so the current row is n - popcount(mask). Removing a bit lowers
    // the index, hence one ascending sweep fills the table.
    const unsigned full = (n >= 1) ? ((1u << n) - 1) : 0u;
    std::vector<Rat> memo(full + 1);
    memo[0] = Rat(1);
    for (unsigned mask = 1; mask <= full; ++mask) {
        const int row = n - std::popcount(mask);
        Rat acc(0);
        for (int j = 0; j < n; ++j) {
            if (!(mask >> j & 1)) continue;
            acc += (x.at(row, j) + x.at(row, n + j)) * memo[mask ^ (1u << j)];
        }
        memo[mask] = acc;
    }
    return memo[full];
}

Rat mperm_rec_raw(const std::vector<int>& comp, const RatMatrix& x) {
    // State: residual multiplicities r, packed mixed-radix with digit i in
    // base comp[i]+1; the residual matrix is the prefix of sum(r) rows, and
    // expansion is along its last row.
    const int n = static_cast<int>(comp.size());
    size_t states = 1;
    std::vector<size_t> stride(n);
    for (int i = 0; i < n; ++i) {
        stride[i] = states;
        states *= static_cast<size_t>(comp[i]) + 1;
    }
    std::vector<Rat> memo(states);
    memo[0] = Rat(1);

    std::vector<int> r(n, 0);
    for (size_t idx = 1; idx < states; ++idx) {
        // increment the mixed-radix counter
        for (int i = 0; i < n; ++i) {
            if (r[i] < comp[i]) {
                ++r[i];
                break;
            }
            r[i] = 0;
        }
        const int row = std::accumulate(r.begin(), r.end(), 0) - 1;
        Rat acc(0);
        for (int j = 0; j < n; ++j) {
            if (r[j] == 0) continue;
            acc += x.at(row, j) * memo[idx - stride[j]];
        }
        memo[idx] = acc;
    }
    return memo[states - 1];
}

Int multinomial(const std::vector<int>& counts) {
    int total = std::accumulate(counts.begin(), counts.end(), 0);
    Int num = factorial(static_cast<unsigned long>(total));
    for (int c : counts)
        mpz_divexact(num.get_mpz_t(), num.get_mpz_t(),
                     factorial(static_cast<unsigned long>(c)).get_mpz_t());
    return num;
}

}  // namespace detail

FamilySpec FamilySpec::hoperm(int n) {
    if (n < 1) throw ShapeError("hoperm: need n >= 1");
    FamilySpec s;
    s.kind = FamilyKind::hoperm;
    s.n = n;
    return s;
}

FamilySpec FamilySpec::mperm(std::vector<int> composition) {
    if (composition.empty()) throw ShapeError("mperm: empty composition");
    for (int p : composition)
        if (p < 1)
            throw ShapeError("mperm: parts must be positive; drop zero parts");
    FamilySpec s;
    s.kind = FamilyKind::mperm;
    s.n = static_cast<int>(composition.size());
    s.gamma = std::accumulate(composition.begin(), composition.end(), 0);
    s.comp = std::move(composition);
    return s;
}

FamilySpec FamilySpec::perm(int n) {
    if (n < 1) throw ShapeError("perm: need n >= 1");
    FamilySpec s = mperm(std::vector<int>(n, 1));
    s.kind = FamilyKind::perm;
    return s;
}

std::string FamilySpec::display_name() const {
    switch (kind) {
        case FamilyKind::hoperm:
            return "hoperm_" + std::to_string(n);
        case FamilyKind::perm:
            return "perm_" + std::to_string(n);
        case FamilyKind::mperm:
            break;
    }
    std::string s = "mperm_(";
    for (int i = 0; i < n; ++i) {
        if (i) s += ",";
        s += std::to_string(comp[i]);
    }
    return s + ")";
}

FamilySpec FamilySpec::canonicalized(std::vector<int>* order) const {
    if (is_hoperm()) {
        if (order) order->clear();
        return *this;
    }
    std::vector<int> idx(comp.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return comp[a] > comp[b]; });
    FamilySpec s = *this;
    for (size_t k = 0; k < idx.size(); ++k) s.comp[k] = comp[idx[k]];
    if (order) *order = idx;
    return s;
}

bool FamilySpec::is_partition() const {
    if (is_hoperm()) return true;
    return std::is_sorted(comp.begin(), comp.end(), std::greater<int>());
}

Rat eval_recurrence(const FamilySpec& spec, const RatMatrix& x) {
    detail::check_shape(spec, x);
    if (spec.is_hoperm()) {
        if (spec.n > kRecHopermMaxN)
            throw CapExceeded("hoperm recurrence capped at n <= " +
                              std::to_string(kRecHopermMaxN));
        return detail::hoperm_rec_raw(spec.n, x);
    }
    if (spec.gamma > kRecMpermMaxGamma)
        throw CapExceeded("mperm recurrence capped at gamma <= " +
                          std::to_string(kRecMpermMaxGamma));
    return detail::mperm_rec_raw(spec.comp, x);
}

Rat ones_value(const FamilySpec& spec) {
    if (spec.is_hoperm()) {
        Int v = factorial(static_cast<unsigned long>(spec.n));
        mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), spec.n);
        return Rat(v);
    }
    return Rat(detail::multinomial(spec.comp));
}

ZeroPointInfo zero_point(const FamilySpec& spec) {
    ZeroPointInfo z;
    if (spec.is_hoperm()) {
        z.point = RatMatrix::ones(spec.n, 2 * spec.n);
        z.point.at(spec.n - 1, spec.n - 1) = Rat(1 - 2 * spec.n);
        return z;
    }
    std::vector<int> order;
    const FamilySpec sorted = spec.canonicalized(&order);
    z.partition = sorted.comp;
    z.point = RatMatrix::ones(spec.gamma, spec.n);
    const bool all_equal = sorted.comp.front() == sorted.comp.back();
    if (all_equal) {
        z.ell = 2;
        z.point.at(0, 0) = Rat(1 - spec.n);
        return z;
    }
    z.ell = 1;
    z.max_part = sorted.comp[0];
    z.c = static_cast<int>(
        std::count(sorted.comp.begin(), sorted.comp.end(), z.max_part));
    z.d = Rat(Int(spec.gamma), Int(z.c) * z.max_part);
    // The special entries sit in the last row under the columns that carry a
    // maximal part; order[] maps them back to the caller's column labels.
    const Rat v = Rat(1) - z.d;
    for (int k = 0; k < z.c; ++k) z.point.at(spec.gamma - 1, order[k]) = v;
    return z;
}

namespace {

void check_var(const FamilySpec& spec, const VarId& v) {
    const int ac = v.col < 0 ? -v.col : v.col;
    if (spec.is_hoperm()) {
        if (v.row < 1 || v.row > spec.n || ac < 1 || ac > spec.n)
            throw ShapeError(spec.display_name() + ": variable " + var_name(v) +
                             " out of range");
        return;
    }
    if (v.row < 1 || v.row > spec.gamma || v.col < 1 || v.col > spec.n)
        throw ShapeError(spec.display_name() + ": variable " + var_name(v) +
                         " out of range");
}

// Drop one row and one +/- column pair from an n x 2n matrix (0-based).
RatMatrix hoperm_reduce(const RatMatrix& x, int n, int drop_row, int drop_pair) {
    RatMatrix y(n - 1, 2 * (n - 1));
    int ri = 0;
    for (int i = 0; i < n; ++i) {
        if (i == drop_row) continue;
        int cj = 0;
        for (int j = 0; j < n; ++j) {
            if (j == drop_pair) continue;
            y.at(ri, cj) = x.at(i, j);
            y.at(ri, n - 1 + cj) = x.at(i, n + j);
            ++cj;
        }
        ++ri;
    }
    return y;
}

RatMatrix drop_rows(const RatMatrix& x, int r1, int r2 /* -1 = none */) {
    RatMatrix y(x.rows - (r2 >= 0 ? 2 : 1), x.cols);
    int ri = 0;
    for (int i = 0; i < x.rows; ++i) {
        if (i == r1 || i == r2) continue;
        for (int j = 0; j < x.cols; ++j) y.at(ri, j) = x.at(i, j);
        ++ri;
    }
    return y;
}

}  // namespace

Rat partial(const FamilySpec& spec, const RatMatrix& x, const VarId& v) {
    detail::check_shape(spec, x);
    check_var(spec, v);
    if (spec.is_hoperm()) {
        const int pair = (v.col < 0 ? -v.col : v.col) - 1;
        return detail::hoperm_rec_raw(spec.n - 1,
                                      hoperm_reduce(x, spec.n, v.row - 1, pair));
    }
    std::vector<int> comp = spec.comp;
    comp[v.col - 1] -= 1;
    return detail::mperm_rec_raw(comp, drop_rows(x, v.row - 1, -1));
}

Rat second_partial(const FamilySpec& spec, const RatMatrix& x, const VarId& v,
                   const VarId& w) {
    detail::check_shape(spec, x);
    check_var(spec, v);
    check_var(spec, w);
    if (v.row == w.row) return Rat(0);
    if (spec.is_hoperm()) {
        const int pv = (v.col < 0 ? -v.col : v.col) - 1;
        const int pw = (w.col < 0 ? -w.col : w.col) - 1;
        if (pv == pw) return Rat(0);
        RatMatrix y = hoperm_reduce(x, spec.n, v.row - 1, pv);
        // indices shift after the first removal
        const int row2 = (w.row - 1) - (w.row - 1 > v.row - 1 ? 1 : 0);
        const int pair2 = pw - (pw > pv ? 1 : 0);
        return detail::hoperm_rec_raw(spec.n - 2,
                                      hoperm_reduce(y, spec.n - 1, row2, pair2));
    }
    std::vector<int> comp = spec.comp;
    comp[v.col - 1] -= 1;
    comp[w.col - 1] -= 1;
    if (comp[v.col - 1] < 0 || comp[w.col - 1] < 0) return Rat(0);
    return detail::mperm_rec_raw(comp, drop_rows(x, v.row - 1, w.row - 1));
}

std::vector<VarId> var_order(const FamilySpec& spec) {
    std::vector<VarId> order;
    if (spec.is_hoperm()) {
        order.reserve(2 * static_cast<size_t>(spec.n) * spec.n);
        for (int i = 1; i <= spec.n; ++i)
            for (int j = 1; j <= spec.n; ++j) order.push_back({i, j});
        for (int i = 1; i <= spec.n; ++i)
            for (int j = 1; j <= spec.n; ++j) order.push_back({i, -j});
        return order;
    }
    order.reserve(static_cast<size_t>(spec.gamma) * spec.n);
    for (int i = 1; i <= spec.gamma; ++i)
        for (int j = 1; j <= spec.n; ++j) order.push_back({i, j});
    return order;
}

RatMatrix det_cofactor_hessian(const RatMatrix& a) {
    if (!a.is_square())
        throw ShapeError("det_cofactor_hessian: matrix must be square");
    const int n = a.rows;
    RatMatrix h(n * n, n * n);
    if (n < 2) return h;
    RatMatrix minor(n - 2, n - 2);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (k == i) continue;
                for (int l = 0; l < n; ++l) {
                    if (l == j) continue;
                    const int p = i * n + j;
                    const int q = k * n + l;
                    if (p > q) continue;
                    int ri = 0;
                    for (int r = 0; r < n; ++r) {
                        if (r == i || r == k) continue;
                        int cj = 0;
                        for (int c2 = 0; c2 < n; ++c2) {
                            if (c2 == j || c2 == l) continue;
                            minor.at(ri, cj) = a.at(r, c2);
                            ++cj;
                        }
                        ++ri;
                    }
                    // differentiate det by (i,j), then the (i,j)-minor by the
                    // shifted position of (k,l)
                    const int k2 = k - (k > i ? 1 : 0);
                    const int l2 = l - (l > j ? 1 : 0);
                    Rat val = det(minor);
                    if ((i + j + k2 + l2) & 1) val = -val;
                    h.at(p, q) = val;
                    h.at(q, p) = std::move(val);
                }
            }
    return h;
}

}  // namespace permcert
