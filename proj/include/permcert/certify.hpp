#pragma once

#include <string>
#include <vector>

#include "permcert/family.hpp"
#include "permcert/matrix.hpp"

namespace permcert {

// Closed-form Hessian of hoperm_n at its explicit zero, kept with its block
// decomposition: H = [[C,C],[C,C]], C an n x n grid of n x n blocks with zero
// diagonal, A off the last block row/column, (n-2)W on it, all times
// 2^(n-2) (n-3)!. Requires n >= 3.
struct ExpectedHessianHoperm {
    int n = 0;
    RatMatrix h;         // 2n^2 x 2n^2
    RatMatrix c;         // n^2 x n^2
    RatMatrix a;         // n x n
    RatMatrix w_scaled;  // (n-2) * (U_n - I_n)
    Rat prefactor;       // 2^(n-2) * (n-3)!
};
ExpectedHessianHoperm expected_hessian_hoperm(int n);

// Closed-form Hessian of mperm_m at its explicit zero, for a partition m
// (sorted descending, parts >= 1, gamma >= 3). gamma*n x gamma*n with n x n
// blocks: zero diagonal, Q on the special block row/column s, R elsewhere.
// s is the last block row when the parts are unequal (ell = 1) and the first
// when they are all equal (ell = 2).
struct ExpectedHessianMperm {
    std::vector<int> m;
    int ell = 0;
    int special_row = 0;  // s, 1-based block index
    RatMatrix h;          // gamma*n x gamma*n
    RatMatrix q;          // n x n
    RatMatrix r;          // n x n
    Rat k1;               // (gamma-2)!/(m_1!...m_n!)     (ell = 1)
    Rat k2;               // (m*n-3)!/(m!)^n              (ell = 2)
    int c = 0;            // multiplicity of the max part  (ell = 1)
    Rat d;                // gamma/(c*m_1)                 (ell = 1)
};
ExpectedHessianMperm expected_hessian_mperm(const std::vector<int>& m);

// rank(Hessian at an explicit zero)/2 is a lower bound for the size of any
// affine determinantal representation; this record is the full evidence.
struct HessianCertificate {
    FamilySpec spec;             // canonicalized: mperm comp sorted descending
    std::vector<int> input_comp; // composition as given, before sorting
    ZeroPointInfo zero;
    Rat value;                   // family at the zero point; must be 0
    int hessian_dim = 0;
    int rank = 0;
    Rat lower_bound;             // rank/2 exactly
    int lower_bound_int = 0;     // ceil(rank/2)
    int upper_bound = 0;         // representation size from the compiler
    std::vector<VarId> order;
    bool structure_applicable = false;
    bool structure_pass = false;
    std::string structure_note;  // diagnosis when the entrywise check fails
};

// Build the zero point, assert the family vanishes there exactly, compute
// the Hessian and its rank, bound rank/2, and (where a closed form exists)
// compare the Hessian entrywise against it. Caps: hoperm 3 <= n <= 5;
// mperm gamma >= 3 and gamma*n <= 60.
HessianCertificate certify_lower_bound(const FamilySpec& spec);

// Size of the compiled representation: 3^n for hoperm, prod(m_i+1)-1 for
// mperm (2^n - 1 in the perm case). Exact for any spec size.
Int upper_bound(const FamilySpec& spec);

}  // namespace permcert
