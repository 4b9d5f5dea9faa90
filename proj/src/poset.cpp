#include "permcert/poset.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <numeric>

#include "permcert/errors.hpp"

namespace permcert {

bool operator==(const GradedLabeledPoset& a, const GradedLabeledPoset& b) {
    if (a.rank_d != b.rank_d || a.elements.size() != b.elements.size() ||
        a.covers.size() != b.covers.size())
        return false;
    for (size_t i = 0; i < a.elements.size(); ++i)
        if (a.elements[i].id != b.elements[i].id ||
            a.elements[i].rank != b.elements[i].rank)
            return false;
    for (size_t i = 0; i < a.covers.size(); ++i)
        if (a.covers[i].lower != b.covers[i].lower ||
            a.covers[i].upper != b.covers[i].upper ||
            a.covers[i].label != b.covers[i].label)
            return false;
    return true;
}

PosetReport validate_poset(const GradedLabeledPoset& p) {
    PosetReport rep;
    std::map<std::string, int> index;
    for (size_t i = 0; i < p.elements.size(); ++i) {
        const auto& e = p.elements[i];
        if (e.rank < 0)
            rep.problems.push_back("element " + e.id + " has negative rank");
        if (!index.emplace(e.id, static_cast<int>(i)).second)
            rep.problems.push_back("duplicate element id " + e.id);
    }

    std::vector<int> mins;
    for (size_t i = 0; i < p.elements.size(); ++i)
        if (p.elements[i].rank == 0) mins.push_back(static_cast<int>(i));
    if (mins.size() != 1)
        rep.problems.push_back("expected exactly one rank-0 element, found " +
                               std::to_string(mins.size()));
    else
        rep.min_id = p.elements[mins[0]].id;

    std::vector<std::vector<int>> up(p.elements.size());
    std::vector<int> outdeg(p.elements.size(), 0);
    for (const auto& c : p.covers) {
        auto lo = index.find(c.lower);
        auto hi = index.find(c.upper);
        if (lo == index.end()) {
            rep.problems.push_back("cover references unknown element " + c.lower);
            continue;
        }
        if (hi == index.end()) {
            rep.problems.push_back("cover references unknown element " + c.upper);
            continue;
        }
        const int rl = p.elements[lo->second].rank;
        const int rh = p.elements[hi->second].rank;
        if (rh != rl + 1)
            rep.problems.push_back("cover " + c.lower + " -> " + c.upper +
                                   " steps rank " + std::to_string(rl) +
                                   " to " + std::to_string(rh));
        up[lo->second].push_back(hi->second);
        ++outdeg[lo->second];
    }

    // saturated-chain reachability from the minimum
    if (mins.size() == 1) {
        std::vector<char> seen(p.elements.size(), 0);
        std::deque<int> queue{mins[0]};
        seen[mins[0]] = 1;
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop_front();
            for (int w : up[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    queue.push_back(w);
                }
        }
        for (size_t i = 0; i < p.elements.size(); ++i)
            if (!seen[i])
                rep.problems.push_back("element " + p.elements[i].id +
                                       " is not reachable from the minimum");
    }

    for (size_t i = 0; i < p.elements.size(); ++i) {
        if (outdeg[i] != 0) continue;
        rep.max_ids.push_back(p.elements[i].id);
        if (p.elements[i].rank != p.rank_d)
            rep.problems.push_back("maximal element " + p.elements[i].id +
                                   " has rank " +
                                   std::to_string(p.elements[i].rank) +
                                   ", declared top rank is " +
                                   std::to_string(p.rank_d));
    }
    std::sort(rep.max_ids.begin(), rep.max_ids.end());
    rep.unique_max = rep.max_ids.size() == 1;
    rep.valid = rep.problems.empty();
    return rep;
}

GradedLabeledPoset boolean_lattice(int n) {
    if (n < 1) throw PosetError("boolean_lattice: need n >= 1");
    GradedLabeledPoset p;
    p.rank_d = n;
    const unsigned lim = 1u << n;
    auto id_of = [n](unsigned mask) {
        std::string s = "b";
        for (int j = 0; j < n; ++j) s += (mask >> j & 1) ? '1' : '0';
        return s;
    };
    for (unsigned mask = 0; mask < lim; ++mask)
        p.elements.push_back({id_of(mask), std::popcount(mask)});
    for (unsigned mask = 0; mask < lim; ++mask) {
        const int r = std::popcount(mask);
        for (int j = 0; j < n; ++j) {
            if (mask >> j & 1) continue;
            p.covers.push_back({id_of(mask), id_of(mask | (1u << j)),
                                AffineForm::variable({r + 1, j + 1})});
        }
    }
    return p;
}

GradedLabeledPoset cube_face_lattice(int n) {
    if (n < 1) throw PosetError("cube_face_lattice: need n >= 1");
    GradedLabeledPoset p;
    p.rank_d = n;
    // digits: 0 unset, 1 positive, 2 negative
    size_t total = 1;
    for (int i = 0; i < n; ++i) total *= 3;
    auto digits_of = [n](size_t code) {
        std::vector<int> d(n);
        for (int j = 0; j < n; ++j) {
            d[j] = static_cast<int>(code % 3);
            code /= 3;
        }
        return d;
    };
    auto id_of = [](const std::vector<int>& d) {
        std::string s = "u";
        for (int v : d) s += v == 0 ? '0' : (v == 1 ? 'p' : 'm');
        return s;
    };
    for (size_t code = 0; code < total; ++code) {
        const auto d = digits_of(code);
        const int r = static_cast<int>(std::count_if(
            d.begin(), d.end(), [](int v) { return v != 0; }));
        p.elements.push_back({id_of(d), r});
    }
    for (size_t code = 0; code < total; ++code) {
        const auto d = digits_of(code);
        const int r = static_cast<int>(std::count_if(
            d.begin(), d.end(), [](int v) { return v != 0; }));
        for (int j = 0; j < n; ++j) {
            if (d[j] != 0) continue;
            auto dp = d;
            dp[j] = 1;
            p.covers.push_back({id_of(d), id_of(dp),
                                AffineForm::variable({r + 1, j + 1})});
            dp[j] = 2;
            p.covers.push_back({id_of(d), id_of(dp),
                                AffineForm::variable({r + 1, -(j + 1)})});
        }
    }
    return p;
}

GradedLabeledPoset multiset_lattice(const std::vector<int>& m) {
    if (m.empty()) throw PosetError("multiset_lattice: empty composition");
    for (int part : m)
        if (part < 1) throw PosetError("multiset_lattice: parts must be positive");
    const int n = static_cast<int>(m.size());
    GradedLabeledPoset p;
    p.rank_d = std::accumulate(m.begin(), m.end(), 0);
    size_t total = 1;
    for (int part : m) total *= static_cast<size_t>(part) + 1;
    auto counts_of = [&](size_t code) {
        std::vector<int> t(n);
        for (int j = 0; j < n; ++j) {
            t[j] = static_cast<int>(code % (m[j] + 1));
            code /= m[j] + 1;
        }
        return t;
    };
    auto id_of = [](const std::vector<int>& t) {
        std::string s = "c";
        for (size_t j = 0; j < t.size(); ++j) {
            if (j) s += '.';
            s += std::to_string(t[j]);
        }
        return s;
    };
    for (size_t code = 0; code < total; ++code) {
        const auto t = counts_of(code);
        p.elements.push_back({id_of(t), std::accumulate(t.begin(), t.end(), 0)});
    }
    for (size_t code = 0; code < total; ++code) {
        const auto t = counts_of(code);
        const int r = std::accumulate(t.begin(), t.end(), 0);
        for (int j = 0; j < n; ++j) {
            if (t[j] >= m[j]) continue;
            auto tp = t;
            ++tp[j];
            p.covers.push_back({id_of(t), id_of(tp),
                                AffineForm::variable({r + 1, j + 1})});
        }
    }
    return p;
}

Rat eval_poset_polynomial(const GradedLabeledPoset& p, const Assignment& point) {
    const PosetReport rep = validate_poset(p);
    if (!rep.valid) {
        std::string what = "eval_poset_polynomial: invalid poset:";
        for (const auto& s : rep.problems) what += " " + s + ";";
        throw PosetError(what);
    }
    std::map<std::string, int> index;
    for (size_t i = 0; i < p.elements.size(); ++i)
        index.emplace(p.elements[i].id, static_cast<int>(i));

    std::vector<std::vector<std::pair<int, const AffineForm*>>> incoming(
        p.elements.size());
    std::vector<int> outdeg(p.elements.size(), 0);
    for (const auto& c : p.covers) {
        const int lo = index.at(c.lower);
        const int hi = index.at(c.upper);
        incoming[hi].push_back({lo, &c.label});
        ++outdeg[lo];
    }

    std::vector<int> order(p.elements.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return p.elements[a].rank < p.elements[b].rank;
    });

    std::vector<Rat> value(p.elements.size());
    for (int ei : order) {
        if (p.elements[ei].rank == 0) {
            value[ei] = Rat(1);
            continue;
        }
        Rat acc(0);
        for (const auto& [lo, label] : incoming[ei])
            acc += value[lo] * label->eval(point);
        value[ei] = acc;
    }

    Rat total(0);
    for (size_t i = 0; i < p.elements.size(); ++i)
        if (outdeg[i] == 0) total += value[i];
    return total;
}

}  // namespace permcert
