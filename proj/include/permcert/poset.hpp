#pragma once

#include <string>
#include <vector>

#include "permcert/affine.hpp"

namespace permcert {

struct PosetElement {
    std::string id;
    int rank = 0;
};

struct PosetCover {
    std::string lower;
    std::string upper;
    AffineForm label;
};

// Finite graded poset given by its Hasse diagram with affine edge labels.
// rank_d is the declared top rank (the rank every maximal element must have).
struct GradedLabeledPoset {
    std::vector<PosetElement> elements;
    std::vector<PosetCover> covers;
    int rank_d = 0;

    friend bool operator==(const GradedLabeledPoset& a,
                           const GradedLabeledPoset& b);
    friend bool operator!=(const GradedLabeledPoset& a,
                           const GradedLabeledPoset& b) {
        return !(a == b);
    }
};

struct PosetReport {
    bool valid = false;
    std::vector<std::string> problems;   // empty iff valid
    std::string min_id;                  // the unique rank-0 element, if any
    bool unique_max = false;
    std::vector<std::string> max_ids;    // all maximal elements
};

// Checks: ids unique and covers well-referenced; exactly one rank-0 element;
// every cover steps rank by exactly one; every element lies on a saturated
// chain from the minimum; every maximal element has rank rank_d.
PosetReport validate_poset(const GradedLabeledPoset& p);

// Subsets of [n] ordered by inclusion; the edge adding j to a set of size
// r-1 is labeled x[r,j]. 2^n elements, ids "b" + characteristic bitstring.
GradedLabeledPoset boolean_lattice(int n);

// Sign vectors in {0,+,-}^n ordered by support extension; the edge setting
// coordinate j to +/- at rank r is labeled x[r,j] / x[r,-j]. 3^n elements,
// 2^n maximal elements, ids "u" + a string over {0,p,m}.
GradedLabeledPoset cube_face_lattice(int n);

// Submultisets of {1^m_1,...,n^m_n} ordered by inclusion; the edge adding a
// copy of j at rank r is labeled x[r,j]. prod(m_i+1) elements, unique top,
// ids "c" + dot-joined counts. Rejects zero parts.
GradedLabeledPoset multiset_lattice(const std::vector<int>& m);

// Sum over saturated chains from the minimum to a maximal element of the
// product of edge labels, as a rank-by-rank dynamic program. Requires a
// valid poset (throws PosetError otherwise).
Rat eval_poset_polynomial(const GradedLabeledPoset& p, const Assignment& point);

}  // namespace permcert
