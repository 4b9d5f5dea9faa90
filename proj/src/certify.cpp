#include "permcert/certify.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "permcert/errors.hpp"
#include "permcert/linalg.hpp"

namespace permcert {

namespace {

// gamma x gamma grid of n x n blocks: zero on the diagonal, q on the special
// block row/column (0-based s0), r elsewhere.
RatMatrix assemble_blocks(const RatMatrix& q, const RatMatrix& r, int gamma,
                          int s0) {
    const int n = q.rows;
    RatMatrix h(gamma * n, gamma * n);
    for (int bi = 0; bi < gamma; ++bi)
        for (int bj = 0; bj < gamma; ++bj) {
            if (bi == bj) continue;
            const RatMatrix& blk = (bi == s0 || bj == s0) ? q : r;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    h.at(bi * n + i, bj * n + j) = blk.at(i, j);
        }
    return h;
}

std::string mismatch_summary(const RatMatrix& expected, const RatMatrix& got) {
    long diff = 0;
    int fi = -1, fj = -1;
    for (int i = 0; i < expected.rows; ++i)
        for (int j = 0; j < expected.cols; ++j)
            if (expected.at(i, j) != got.at(i, j)) {
                if (fi < 0) {
                    fi = i;
                    fj = j;
                }
                ++diff;
            }
    if (fi < 0) return "all entries match";
    return std::to_string(diff) + " of " +
           std::to_string(static_cast<long>(expected.rows) * expected.cols) +
           " entries differ; first at (" + std::to_string(fi) + "," +
           std::to_string(fj) + "): closed form " +
           expected.at(fi, fj).str() + " vs computed " + got.at(fi, fj).str();
}

}  // namespace

ExpectedHessianHoperm expected_hessian_hoperm(int n) {
    if (n < 3)
        throw ShapeError("expected_hessian_hoperm: need n >= 3");
    ExpectedHessianHoperm e;
    e.n = n;

    e.a = RatMatrix(n, n);
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
            if (j == l) continue;
            e.a.at(j, l) = (j < n - 1 && l < n - 1) ? Rat(-2) : Rat(n - 2);
        }

    e.w_scaled = RatMatrix(n, n);
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l)
            if (j != l) e.w_scaled.at(j, l) = Rat(n - 2);

    Int pf = factorial(static_cast<unsigned long>(n - 3));
    mpz_mul_2exp(pf.get_mpz_t(), pf.get_mpz_t(), n - 2);
    e.prefactor = Rat(pf);

    e.c = RatMatrix(n * n, n * n);
    for (int bi = 0; bi < n; ++bi)
        for (int bk = 0; bk < n; ++bk) {
            if (bi == bk) continue;
            const RatMatrix& blk =
                (bi < n - 1 && bk < n - 1) ? e.a : e.w_scaled;
            for (int j = 0; j < n; ++j)
                for (int l = 0; l < n; ++l)
                    e.c.at(bi * n + j, bk * n + l) =
                        e.prefactor * blk.at(j, l);
        }

    e.h = RatMatrix(2 * n * n, 2 * n * n);
    for (int qi = 0; qi < 2; ++qi)
        for (int qj = 0; qj < 2; ++qj)
            for (int i = 0; i < n * n; ++i)
                for (int j = 0; j < n * n; ++j)
                    e.h.at(qi * n * n + i, qj * n * n + j) = e.c.at(i, j);
    return e;
}

ExpectedHessianMperm expected_hessian_mperm(const std::vector<int>& m) {
    if (m.empty()) throw ShapeError("expected_hessian_mperm: empty partition");
    if (!std::is_sorted(m.begin(), m.end(), std::greater<int>()))
        throw ShapeError("expected_hessian_mperm: parts must be sorted descending");
    if (m.back() < 1)
        throw ShapeError("expected_hessian_mperm: parts must be positive");
    const int n = static_cast<int>(m.size());
    int gamma = 0;
    for (int p : m) gamma += p;
    if (gamma < 3) throw ShapeError("expected_hessian_mperm: need gamma >= 3");

    ExpectedHessianMperm e;
    e.m = m;
    e.q = RatMatrix(n, n);
    e.r = RatMatrix(n, n);

    const bool all_equal = m.front() == m.back();
    if (all_equal) {
        const int part = m.front();
        e.ell = 2;
        e.special_row = 1;
        Int den(1);
        const Int pf = factorial(static_cast<unsigned long>(part));
        for (int i = 0; i < n; ++i) den *= pf;
        e.k2 = Rat(factorial(static_cast<unsigned long>(gamma - 3)), den);
        const Rat qf = e.k2 * (gamma - 2);
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l)
                e.q.at(j, l) = qf * (j == l ? part * (part - 1) : part * part);
        const Rat rf = e.k2 * part;
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l) {
                int entry;
                if (j == 0 && l == 0)
                    entry = 2 * (part - 1) * (n - 1);
                else if (j == 0 || l == 0)
                    entry = part * (n - 2);
                else if (j == l)
                    entry = -2 * (part - 1);
                else
                    entry = -2 * part;
                e.r.at(j, l) = rf * entry;
            }
    } else {
        e.ell = 1;
        e.special_row = gamma;
        e.c = static_cast<int>(std::count(m.begin(), m.end(), m.front()));
        e.d = Rat(Int(gamma), Int(e.c) * m.front());
        Int den(1);
        for (int p : m) den *= factorial(static_cast<unsigned long>(p));
        e.k1 = Rat(factorial(static_cast<unsigned long>(gamma - 2)), den);
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l) {
                const Rat pattern =
                    Rat(j == l ? m[j] * (m[j] - 1) : m[j] * m[l]);
                e.q.at(j, l) = e.k1 * pattern;
                const bool tj = j < e.c;  // part j is one of the maxima
                const bool tl = l < e.c;
                Rat weight;
                if (tj && tl)
                    weight = (e.d - 1) * 2;
                else if (!tj && !tl)
                    weight = Rat(-2);
                else
                    weight = e.d - 2;
                e.r.at(j, l) = e.k1 * pattern * weight;
            }
    }
    e.h = assemble_blocks(e.q, e.r, gamma, e.special_row - 1);
    return e;
}

Int upper_bound(const FamilySpec& spec) {
    Int v(1);
    if (spec.is_hoperm()) {
        mpz_ui_pow_ui(v.get_mpz_t(), 3, static_cast<unsigned long>(spec.n));
        return v;
    }
    for (int p : spec.comp) v *= p + 1;
    return v - 1;
}

HessianCertificate certify_lower_bound(const FamilySpec& spec) {
    HessianCertificate cert;
    cert.input_comp = spec.comp;
    cert.spec = spec.canonicalized();

    if (cert.spec.is_hoperm()) {
        if (cert.spec.n < kCertifyHopermMinN || cert.spec.n > kCertifyHopermMaxN)
            throw CapExceeded("certify: hoperm needs " +
                              std::to_string(kCertifyHopermMinN) + " <= n <= " +
                              std::to_string(kCertifyHopermMaxN));
    } else {
        if (cert.spec.gamma < 3)
            throw CapExceeded("certify: mperm needs gamma >= 3");
        if (cert.spec.gamma * cert.spec.n > kCertifyMpermMaxDim)
            throw CapExceeded("certify: mperm capped at gamma*n <= " +
                              std::to_string(kCertifyMpermMaxDim));
    }

    cert.zero = zero_point(cert.spec);
    cert.value = eval_recurrence(cert.spec, cert.zero.point);
    if (!cert.value.is_zero())
        throw std::logic_error("certify: family does not vanish at its zero point");

    cert.order = var_order(cert.spec);
    const RatMatrix h = hessian_at(cert.spec, cert.zero.point, cert.order);
    cert.hessian_dim = h.rows;
    cert.rank = rank(h);
    cert.lower_bound = Rat(Int(cert.rank), Int(2));
    cert.lower_bound_int = (cert.rank + 1) / 2;
    cert.upper_bound = static_cast<int>(upper_bound(cert.spec).get_si());

    cert.structure_applicable = true;
    if (cert.spec.is_hoperm()) {
        const auto expected = expected_hessian_hoperm(cert.spec.n);
        cert.structure_pass = expected.h == h;
        if (!cert.structure_pass)
            cert.structure_note = mismatch_summary(expected.h, h);
    } else {
        const auto expected = expected_hessian_mperm(cert.spec.comp);
        cert.structure_pass = expected.h == h;
        if (!cert.structure_pass) {
            cert.structure_note = mismatch_summary(expected.h, h);
            if (expected.ell == 1 && cert.spec.gamma > 3) {
                // diagnose a uniform rescaling of the off-special blocks
                RatMatrix r_scaled = expected.r;
                const Rat scale =
                    Rat(Int(1), Int(cert.spec.gamma - 2));
                for (auto& v : r_scaled.data) v *= scale;
                if (assemble_blocks(expected.q, r_scaled, cert.spec.gamma,
                                    expected.special_row - 1) == h)
                    cert.structure_note +=
                        "; the computed Hessian equals the closed form after "
                        "scaling the blocks off the special row/column by "
                        "1/(gamma-2)";
            }
        }
    }
    return cert;
}

}  // namespace permcert
