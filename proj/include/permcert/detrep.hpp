#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "permcert/affine.hpp"
#include "permcert/family.hpp"
#include "permcert/poset.hpp"

namespace permcert {

// An affine matrix whose determinant is the poset's chain polynomial.
struct DetRep {
    AffineMatrix matrix;
    std::string family;      // display metadata ("hoperm_2", "poset", ...)
    bool sign_fixed = false; // whether row 1 was negated to absorb parity
    int chain_degree = 0;    // cycle length through v0 in the built graph
};

// Cycle-cover compiler: identify top and bottom of the poset as one vertex
// v0, direct all covers upward, add a loop labeled 1 at every other vertex.
// Posets without a unique maximum first get a formal top adjoined with
// constant-1 labels from each maximal element. The determinant of the
// resulting adjacency matrix is +/- the chain polynomial; when the cycle
// length through v0 is even, row 1 is negated so the sign is always +.
// Vertex order: v0 first, then (rank, id) lexicographic.
DetRep grenet_build(const GradedLabeledPoset& p);

using ReferenceEval = std::function<Rat(const Assignment&)>;

struct VerifyReport {
    bool pass = false;
    int trials = 0;
    std::uint64_t seed = 0;
    int bound = 0;                 // entries drawn from integers in [-bound, bound]
    std::vector<bool> trial_ok;
    // Populated for the first failing trial, if any.
    int witness_trial = -1;
    Assignment witness;
    Rat det_value;
    Rat ref_value;
};

// Randomized identity check det(D at X) = reference(X): per trial, draw every
// variable of D.matrix uniformly from the integers in [-B, B] with
// B = 10 * chain_degree, and require exact equality. Trial t uses its own
// generator seeded from (seed, t), so reports are replayable and independent
// of the execution order.
VerifyReport verify_detrep(const DetRep& d, const ReferenceEval& reference,
                           int trials, std::uint64_t seed,
                           Exec exec = Exec::parallel);

// Lay an assignment of the family's variables out as its point matrix;
// throws MissingAssignment on gaps.
RatMatrix point_from_assignment(const FamilySpec& spec, const Assignment& a);

// The family's recurrence evaluator as a ReferenceEval.
ReferenceEval family_reference(const FamilySpec& spec);

// Compile the family's own lattice: subsets/sign vectors/multisets for
// perm/hoperm/mperm respectively.
DetRep build_family_detrep(const FamilySpec& spec);

}  // namespace permcert
