#include "permcert/affine.hpp"

#include <set>

#include "permcert/errors.hpp"

namespace permcert {

std::string var_name(const VarId& v) {
    return "x[" + std::to_string(v.row) + "," + std::to_string(v.col) + "]";
}

void AffineForm::negate() {
    constant_ = -constant_;
    for (auto& [v, c] : terms_) c = -c;
}

Rat AffineForm::eval(const Assignment& point) const {
    Rat acc = constant_;
    for (const auto& [v, coeff] : terms_) {
        auto it = point.find(v);
        if (it == point.end()) throw MissingAssignment(var_name(v));
        acc += coeff * it->second;
    }
    return acc;
}

std::string AffineForm::str() const {
    if (is_zero()) return "0";
    std::string out;
    if (!constant_.is_zero()) out = constant_.str();
    for (const auto& [v, coeff] : terms_) {
        if (!out.empty()) out += " + ";
        if (coeff.is_one())
            out += var_name(v);
        else
            out += coeff.str() + "*" + var_name(v);
    }
    return out;
}

RatMatrix eval_affine_matrix(const AffineMatrix& f, const Assignment& point) {
    RatMatrix out(f.size, f.size);
    for (int i = 0; i < f.size; ++i)
        for (int j = 0; j < f.size; ++j) out.at(i, j) = f.at(i, j).eval(point);
    return out;
}

std::vector<VarId> collect_vars(const AffineMatrix& f) {
    std::set<VarId, VarIdLess> seen;
    for (const auto& e : f.entries)
        for (const auto& [v, coeff] : e.terms()) seen.insert(v);
    return {seen.begin(), seen.end()};
}

}  // namespace permcert
