#pragma once

#include <map>
#include <string>
#include <vector>

#include "permcert/matrix.hpp"

namespace permcert {

// Variable x[row,col]. row >= 1 always; col is nonzero and may be negative
// (the signed column families use columns 1..n then -1..-n).
struct VarId {
    int row = 0;
    int col = 0;
};

inline bool operator==(const VarId& a, const VarId& b) {
    return a.row == b.row && a.col == b.col;
}
inline bool operator!=(const VarId& a, const VarId& b) { return !(a == b); }

// Total order (row, |col|, sign), positive column before negative:
// x[1,1] < x[1,-1] < x[1,2] < ... < x[2,1]. This is the serialization order.
struct VarIdLess {
    bool operator()(const VarId& a, const VarId& b) const {
        if (a.row != b.row) return a.row < b.row;
        const int aa = a.col < 0 ? -a.col : a.col;
        const int bb = b.col < 0 ? -b.col : b.col;
        if (aa != bb) return aa < bb;
        return a.col > b.col;
    }
};

// "x[r,c]" exactly as the DSL spells it.
std::string var_name(const VarId& v);

using Assignment = std::map<VarId, Rat, VarIdLess>;

// constant + sum of coeff*var. Zero coefficients are never stored, so
// structural equality is semantic equality.
class AffineForm {
public:
    AffineForm() = default;
    explicit AffineForm(const Rat& c) : constant_(c) {}

    static AffineForm variable(const VarId& v) {
        AffineForm f;
        f.terms_[v] = Rat(1);
        return f;
    }

    const Rat& constant() const { return constant_; }
    const std::map<VarId, Rat, VarIdLess>& terms() const { return terms_; }

    void set_constant(const Rat& c) { constant_ = c; }

    void add_constant(const Rat& c) { constant_ += c; }

    void add_term(const VarId& v, const Rat& coeff) {
        if (coeff.is_zero()) return;
        Rat& slot = terms_[v];
        slot += coeff;
        if (slot.is_zero()) terms_.erase(v);
    }

    bool is_zero() const { return constant_.is_zero() && terms_.empty(); }
    bool is_constant() const { return terms_.empty(); }

    void negate();

    // Throws MissingAssignment naming the first unassigned variable.
    Rat eval(const Assignment& point) const;

    // Deterministic text in the label grammar: constant first when nonzero,
    // then terms in VarIdLess order; "x[1,2]" for coefficient 1, otherwise
    // "p/q*x[1,2]". The zero form prints "0".
    std::string str() const;

    friend bool operator==(const AffineForm& a, const AffineForm& b) {
        return a.constant_ == b.constant_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const AffineForm& a, const AffineForm& b) {
        return !(a == b);
    }

private:
    Rat constant_;
    std::map<VarId, Rat, VarIdLess> terms_;
};

// Square matrix of affine forms (a polynomial matrix of degree <= 1).
struct AffineMatrix {
    int size = 0;
    std::vector<AffineForm> entries;

    AffineMatrix() = default;
    explicit AffineMatrix(int n)
        : size(n), entries(static_cast<size_t>(n) * n) {}

    AffineForm& at(int i, int j) {
        return entries[static_cast<size_t>(i) * size + j];
    }
    const AffineForm& at(int i, int j) const {
        return entries[static_cast<size_t>(i) * size + j];
    }

    friend bool operator==(const AffineMatrix& a, const AffineMatrix& b) {
        return a.size == b.size && a.entries == b.entries;
    }
    friend bool operator!=(const AffineMatrix& a, const AffineMatrix& b) {
        return !(a == b);
    }
};

// Entrywise evaluation; throws MissingAssignment if any entry references an
// unassigned variable.
RatMatrix eval_affine_matrix(const AffineMatrix& f, const Assignment& point);

// Every variable appearing anywhere in the matrix, in VarIdLess order.
std::vector<VarId> collect_vars(const AffineMatrix& f);

}  // namespace permcert
