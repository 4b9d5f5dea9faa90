#pragma once

#include <string>
#include <vector>

#include "permcert/affine.hpp"
#include "permcert/matrix.hpp"

namespace permcert {

enum class FamilyKind { perm, hoperm, mperm };

// Size caps. Brute force enumerates n!*2^n signed permutations (hoperm) or
// the full multinomial of column words (mperm), so it is capped hard; the
// memoized recurrences go further.
inline constexpr int kBruteHopermMaxN = 8;
inline constexpr int kBruteMpermMaxGamma = 12;
inline constexpr int kRecHopermMaxN = 12;
inline constexpr int kRecMpermMaxGamma = 20;
inline constexpr int kCertifyHopermMinN = 3;
inline constexpr int kCertifyHopermMaxN = 5;
inline constexpr int kCertifyMpermMaxDim = 60;  // gamma * n

// Whether a kernel runs its serial reference path or the OpenMP one. Both
// produce bit-identical results (exact arithmetic); the serial lane exists so
// tests can assert that.
enum class Exec { serial, parallel };

// One of the three polynomial families. perm is stored as mperm with
// m = (1,...,1); the kind is kept so output names stay faithful.
struct FamilySpec {
    FamilyKind kind = FamilyKind::perm;
    int n = 0;                  // columns (all kinds); matrix is n x 2n for hoperm
    std::vector<int> comp;      // mperm/perm row multiplicities, all >= 1
    int gamma = 0;              // sum of comp; rows of the mperm matrix

    static FamilySpec hoperm(int n);
    static FamilySpec mperm(std::vector<int> composition);
    static FamilySpec perm(int n);

    bool is_hoperm() const { return kind == FamilyKind::hoperm; }
    int rows() const { return is_hoperm() ? n : gamma; }
    int cols() const { return is_hoperm() ? 2 * n : n; }

    // "perm_3", "hoperm_2", "mperm_(2,1)"
    std::string display_name() const;

    // comp sorted descending, with the stable relabeling order[k] = original
    // 0-based index of the part now in position k. No-op for hoperm.
    FamilySpec canonicalized(std::vector<int>* order = nullptr) const;
    bool is_partition() const;
};

// Literal enumeration of the defining sum. Throws CapExceeded beyond the
// brute caps, ShapeError on a wrong-shaped matrix.
Rat eval_brute(const FamilySpec& spec, const RatMatrix& x,
               Exec exec = Exec::parallel);

// Row-expansion recurrence, memoized on the residual column state. Equals
// eval_brute everywhere; higher caps.
Rat eval_recurrence(const FamilySpec& spec, const RatMatrix& x);

// Closed form at the all-ones matrix: 2^n n! (hoperm), gamma!/(m_1!...m_n!)
// (mperm).
Rat ones_value(const FamilySpec& spec);

// An explicit rational zero of the family, plus which construction applied.
struct ZeroPointInfo {
    RatMatrix point;            // in the composition's original column order
    int ell = 0;                // 0 hoperm; 1 parts unequal; 2 all parts equal
    int c = 0;                  // multiplicity of the maximal part (ell = 1)
    int max_part = 0;           // the maximal part value (ell = 1)
    Rat d;                      // gamma / (c * max_part) (ell = 1)
    std::vector<int> partition; // sorted composition the construction used
};
ZeroPointInfo zero_point(const FamilySpec& spec);

// Exact first/second partial derivatives at x. Each variable has degree <= 1
// in every family, so these are evaluations of reduced families.
Rat partial(const FamilySpec& spec, const RatMatrix& x, const VarId& v);
Rat second_partial(const FamilySpec& spec, const RatMatrix& x, const VarId& v,
                   const VarId& w);

// Hessian row/column order: hoperm sweeps positive columns row-major then
// negative columns row-major; mperm is plain row-major.
std::vector<VarId> var_order(const FamilySpec& spec);

// N x N symmetric matrix of second partials in var_order, N = 2n^2 (hoperm)
// or gamma*n (mperm).
RatMatrix hessian_at(const FamilySpec& spec, const RatMatrix& x,
                     Exec exec = Exec::parallel);
RatMatrix hessian_at(const FamilySpec& spec, const RatMatrix& x,
                     const std::vector<VarId>& order,
                     Exec exec = Exec::parallel);

// Second-derivative matrix of det at A: entry ((i,j),(k,l)) is zero when
// i=k or j=l and otherwise a signed (n-2)-minor. Indices row-major n^2 x n^2.
RatMatrix det_cofactor_hessian(const RatMatrix& a);

}  // namespace permcert
