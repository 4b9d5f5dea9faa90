#pragma once

#include "permcert/matrix.hpp"

namespace permcert {

// Exact determinant by fraction-free (Bareiss) elimination on a
// denominator-cleared integer copy. Throws ShapeError on non-square input.
Rat det(const RatMatrix& m);

// Exact rank over the rationals; fraction-free elimination with deterministic
// pivoting (first nonzero entry, columns scanned left to right).
int rank(const RatMatrix& m);

// Plain matrix product; shapes must agree.
RatMatrix mul(const RatMatrix& a, const RatMatrix& b);

RatMatrix transpose(const RatMatrix& m);

// L (m x k) and H (k x k) -> L * H * L^t. The rank of the result is at most
// min(rank(L), rank(H)), which is how Hessians push forward through an
// affine substitution.
RatMatrix pushforward_hessian(const RatMatrix& l, const RatMatrix& h);

// The (ab x ab) block matrix with b x b blocks of size a: zero blocks on the
// diagonal, Q in the first block row and column, R everywhere else.
// Invertible whenever Q and R are (b >= 2).
RatMatrix build_off_diagonal(const RatMatrix& q, const RatMatrix& r, int b);

}  // namespace permcert
