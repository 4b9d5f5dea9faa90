#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "permcert/errors.hpp"
#include "permcert/family.hpp"
#include "family_internal.hpp"

namespace permcert {

namespace {

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

bool all_integer(const RatMatrix& x) {
    for (const Rat& e : x.data)
        if (e.den() != 1) return false;
    return true;
}

std::vector<Int> numerators(const RatMatrix& x) {
    std::vector<Int> v(x.data.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = x.data[i].num();
    return v;
}

// ---- hoperm: sum over n! * 2^n signed permutations, literally ----

template <class T>
T hoperm_sign_sum(const std::vector<T>& m, int n, const int* sigma) {
    const size_t w = 2 * static_cast<size_t>(n);
    T total(0);
    T term;
    const unsigned lim = 1u << n;
    for (unsigned mask = 0; mask < lim; ++mask) {
        term = m[(mask & 1) ? n + sigma[0] : sigma[0]];
        for (int i = 1; i < n; ++i)
            term *= m[i * w + ((mask >> i & 1) ? n + sigma[i] : sigma[i])];
        total += term;
    }
    return total;
}

std::vector<std::vector<int>> all_perms(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> s(n);
    std::iota(s.begin(), s.end(), 0);
    do {
        out.push_back(s);
    } while (std::next_permutation(s.begin(), s.end()));
    return out;
}

template <class T>
T hoperm_brute_serial(const std::vector<T>& m, int n) {
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    T total(0);
    do {
        total += hoperm_sign_sum(m, n, sigma.data());
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return total;
}

template <class T>
T hoperm_brute_parallel(const std::vector<T>& m, int n) {
    const auto perms = all_perms(n);
    std::vector<T> sub(perms.size());
#pragma omp parallel for schedule(static)
    for (long p = 0; p < static_cast<long>(perms.size()); ++p)
        sub[p] = hoperm_sign_sum(m, n, perms[p].data());
    T total(0);
    for (T& s : sub) total += s;
    return total;
}

// ---- mperm: sum over all column words with the given multiplicities ----

template <class T>
T mperm_word_product(const std::vector<T>& m, int n, const std::vector<int>& w) {
    T term = m[w[0]];
    for (size_t i = 1; i < w.size(); ++i)
        term *= m[i * static_cast<size_t>(n) + w[i]];
    return term;
}

std::vector<int> sorted_word(const std::vector<int>& comp) {
    std::vector<int> w;
    for (size_t j = 0; j < comp.size(); ++j) w.insert(w.end(), comp[j], static_cast<int>(j));
    return w;
}

template <class T>
T mperm_brute_serial(const std::vector<T>& m, int n, const std::vector<int>& comp) {
    std::vector<int> w = sorted_word(comp);
    T total(0);
    do {
        total += mperm_word_product(m, n, w);
    } while (std::next_permutation(w.begin(), w.end()));
    return total;
}

using ull = unsigned long long;

ull multinomial_ull(const std::vector<int>& counts) {
    return detail::multinomial(counts).get_ui();
}

// The word at the given position in lexicographic order (the order
// std::next_permutation walks), by counting arrangements symbol by symbol.
std::vector<int> unrank_word(std::vector<int> counts, int gamma, ull pos) {
    const int n = static_cast<int>(counts.size());
    std::vector<int> w(gamma);
    for (int i = 0; i < gamma; ++i) {
        for (int s = 0; s < n; ++s) {
            if (counts[s] == 0) continue;
            --counts[s];
            const ull arrangements = multinomial_ull(counts);
            if (pos < arrangements) {
                w[i] = s;
                break;
            }
            pos -= arrangements;
            ++counts[s];
        }
    }
    return w;
}

template <class T>
T mperm_brute_parallel(const std::vector<T>& m, int n, const std::vector<int>& comp) {
    const int gamma = std::accumulate(comp.begin(), comp.end(), 0);
    const ull words = multinomial_ull(comp);
    const ull blocks =
        std::min<ull>(words, static_cast<ull>(std::max(1, max_threads())) * 8);
    std::vector<T> sub(blocks);
#pragma omp parallel for schedule(dynamic)
    for (long long b = 0; b < static_cast<long long>(blocks); ++b) {
        const ull lo = words * b / blocks;
        const ull hi = words * (b + 1) / blocks;
        T acc(0);
        if (lo < hi) {
            std::vector<int> w = unrank_word(comp, gamma, lo);
            for (ull r = lo; r < hi; ++r) {
                acc += mperm_word_product(m, n, w);
                std::next_permutation(w.begin(), w.end());
            }
        }
        sub[b] = std::move(acc);
    }
    T total(0);
    for (T& s : sub) total += s;
    return total;
}

template <class T>
Rat brute_dispatch(const FamilySpec& spec, const std::vector<T>& m, Exec exec) {
    if (spec.is_hoperm()) {
        return Rat(exec == Exec::parallel ? hoperm_brute_parallel(m, spec.n)
                                          : hoperm_brute_serial(m, spec.n));
    }
    return Rat(exec == Exec::parallel
                   ? mperm_brute_parallel(m, spec.n, spec.comp)
                   : mperm_brute_serial(m, spec.n, spec.comp));
}

}  // namespace

Rat eval_brute(const FamilySpec& spec, const RatMatrix& x, Exec exec) {
    detail::check_shape(spec, x);
    if (spec.is_hoperm()) {
        if (spec.n > kBruteHopermMaxN)
            throw CapExceeded("hoperm brute force capped at n <= " +
                              std::to_string(kBruteHopermMaxN));
    } else if (spec.gamma > kBruteMpermMaxGamma) {
        throw CapExceeded("mperm brute force capped at gamma <= " +
                          std::to_string(kBruteMpermMaxGamma));
    }
    // Integer inputs stay integers term by term; skipping rational
    // normalization there is a large constant-factor win.
    if (all_integer(x)) return brute_dispatch(spec, numerators(x), exec);
    return brute_dispatch(spec, x.data, exec);
}

RatMatrix hessian_at(const FamilySpec& spec, const RatMatrix& x,
                     const std::vector<VarId>& order, Exec exec) {
    detail::check_shape(spec, x);
    const int nv = static_cast<int>(order.size());
    RatMatrix h(nv, nv);
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
    for (int p = 0; p < nv; ++p)
        for (int q = p; q < nv; ++q) {
            Rat v = second_partial(spec, x, order[p], order[q]);
            h.at(p, q) = v;
            if (p != q) h.at(q, p) = std::move(v);
        }
    return h;
}

RatMatrix hessian_at(const FamilySpec& spec, const RatMatrix& x, Exec exec) {
    return hessian_at(spec, x, var_order(spec), exec);
}

}  // namespace permcert
