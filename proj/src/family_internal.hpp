#pragma once

#include <vector>

#include "permcert/family.hpp"

namespace permcert::detail {

void check_shape(const FamilySpec& spec, const RatMatrix& x);

// Recurrence cores. The mperm one accepts zero parts (needed for derivative
// reductions); callers guarantee no negative part.
Rat hoperm_rec_raw(int n, const RatMatrix& x);
Rat mperm_rec_raw(const std::vector<int>& comp, const RatMatrix& x);

// gamma! / prod(counts_i!) for the current residual counts.
Int multinomial(const std::vector<int>& counts);

}  // namespace permcert::detail
