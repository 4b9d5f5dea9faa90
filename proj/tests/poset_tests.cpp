#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "permcert/detrep.hpp"
#include "permcert/errors.hpp"
#include "permcert/family.hpp"
#include "permcert/io.hpp"
#include "permcert/linalg.hpp"
#include "permcert/poset.hpp"
#include "support/oracles.hpp"
#include "support/poly.hpp"

using namespace permcert;
using namespace permcert::testing;

TEST_CASE("builders validate") {
    for (int n = 1; n <= 4; ++n) {
        const PosetReport rep = validate_poset(boolean_lattice(n));
        CHECK(rep.valid);
        CHECK(rep.unique_max);
    }
    for (int n = 1; n <= 3; ++n) {
        const PosetReport rep = validate_poset(cube_face_lattice(n));
        CHECK(rep.valid);
        CHECK_FALSE(rep.unique_max);
        CHECK_EQ(rep.max_ids.size(), 1u << n);
    }
    for (const auto& comp : std::vector<std::vector<int>>{
             {1}, {2, 1}, {3, 2}, {1, 1, 1}}) {
        const PosetReport rep = validate_poset(multiset_lattice(comp));
        CHECK(rep.valid);
        CHECK(rep.unique_max);
    }
    CHECK_EQ(boolean_lattice(3).elements.size(), 8);
    CHECK_EQ(cube_face_lattice(2).elements.size(), 9);
    CHECK_EQ(multiset_lattice({2, 1}).elements.size(), 6);
    CHECK_THROWS_AS((void)multiset_lattice({2, 0}), PosetError);
    CHECK_THROWS_AS((void)boolean_lattice(0), PosetError);
    CHECK_THROWS_AS((void)cube_face_lattice(0), PosetError);
}

TEST_CASE("validation catches broken posets") {
    GradedLabeledPoset p;
    p.rank_d = 2;
    p.elements = {{"a", 0}, {"b", 0}, {"c", 2}};
    p.covers = {{"a", "c", AffineForm(Rat(1))}};
    const PosetReport rep = validate_poset(p);
    CHECK_FALSE(rep.valid);
    CHECK(rep.problems.size() >= 2);  // two minima, rank-skipping cover

    GradedLabeledPoset q;
    q.rank_d = 1;
    q.elements = {{"a", 0}, {"b", 1}, {"lost", 1}};
    q.covers = {{"a", "b", AffineForm(Rat(1))}};
    const PosetReport rq = validate_poset(q);
    CHECK_FALSE(rq.valid);

    GradedLabeledPoset shallow;
    shallow.rank_d = 2;
    shallow.elements = {{"a", 0}, {"b", 1}};
    shallow.covers = {{"a", "b", AffineForm(Rat(1))}};
    CHECK_FALSE(validate_poset(shallow).valid);  // max at wrong rank
}

TEST_CASE("chain evaluation worked examples") {
    GradedLabeledPoset chain;
    chain.rank_d = 1;
    chain.elements = {{"a", 0}, {"b", 1}};
    chain.covers = {{"a", "b", AffineForm(Rat(7))}};
    CHECK_EQ(eval_poset_polynomial(chain, {}), Rat(7));

    const RatMatrix x = [] {
        RatMatrix m(2, 2);
        m.at(0, 0) = Rat(1);
        m.at(0, 1) = Rat(2);
        m.at(1, 0) = Rat(3);
        m.at(1, 1) = Rat(4);
        return m;
    }();
    CHECK_EQ(eval_poset_polynomial(boolean_lattice(2),
                                   matrix_assignment(FamilySpec::perm(2), x)),
             Rat(10));

    RatMatrix h(2, 4);
    for (int j = 0; j < 4; ++j) {
        h.at(0, j) = Rat(j + 1);
        h.at(1, j) = Rat(j + 5);
    }
    CHECK_EQ(eval_poset_polynomial(
                 cube_face_lattice(2),
                 matrix_assignment(FamilySpec::hoperm(2), h)),
             Rat(128));

    CHECK_THROWS_AS((void)eval_poset_polynomial(GradedLabeledPoset{}, {}),
                    PosetError);
}

TEST_CASE("chain polynomials are the family polynomials") {
    for (int n = 1; n <= 4; ++n) {
        const FamilySpec spec = FamilySpec::perm(n);
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const RatMatrix x = random_rat_matrix(n, n, seed * 101 + n);
            CHECK_EQ(eval_poset_polynomial(boolean_lattice(n),
                                           matrix_assignment(spec, x)),
                     eval_brute(spec, x));
        }
    }
    for (int n = 1; n <= 3; ++n) {
        const FamilySpec spec = FamilySpec::hoperm(n);
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const RatMatrix x = random_rat_matrix(n, 2 * n, seed * 7 + n);
            CHECK_EQ(eval_poset_polynomial(cube_face_lattice(n),
                                           matrix_assignment(spec, x)),
                     eval_brute(spec, x));
        }
    }
    for (const auto& comp : std::vector<std::vector<int>>{
             {2, 1}, {3, 2}, {1, 1, 2}, {2, 2, 2}}) {
        const FamilySpec spec = FamilySpec::mperm(comp);
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const RatMatrix x =
                random_rat_matrix(spec.rows(), spec.cols(), seed * 13);
            CHECK_EQ(eval_poset_polynomial(multiset_lattice(comp),
                                           matrix_assignment(spec, x)),
                     eval_brute(spec, x));
        }
    }
}

TEST_CASE("compiled representation sizes") {
    CHECK_EQ(build_family_detrep(FamilySpec::perm(3)).matrix.size, 7);
    CHECK_EQ(build_family_detrep(FamilySpec::perm(5)).matrix.size, 31);
    CHECK_EQ(build_family_detrep(FamilySpec::hoperm(1)).matrix.size, 3);
    CHECK_EQ(build_family_detrep(FamilySpec::hoperm(2)).matrix.size, 9);
    CHECK_EQ(build_family_detrep(FamilySpec::hoperm(3)).matrix.size, 27);
    CHECK_EQ(build_family_detrep(FamilySpec::mperm({2, 1})).matrix.size, 5);
    CHECK_EQ(build_family_detrep(FamilySpec::mperm({3, 2, 1})).matrix.size,
             23);
}

TEST_CASE("symbolic determinant equals the chain polynomial on small sizes") {
    const auto check_symbolic = [](const DetRep& d, const Poly& family) {
        REQUIRE(d.matrix.size <= 5);
        CHECK_EQ(symbolic_det(d.matrix), family);
    };
    check_symbolic(build_family_detrep(FamilySpec::perm(2)),
                   symbolic_family(FamilySpec::perm(2)));
    check_symbolic(build_family_detrep(FamilySpec::perm(1)),
                   symbolic_family(FamilySpec::perm(1)));
    check_symbolic(build_family_detrep(FamilySpec::hoperm(1)),
                   symbolic_family(FamilySpec::hoperm(1)));
    check_symbolic(build_family_detrep(FamilySpec::mperm({2, 1})),
                   symbolic_family(FamilySpec::mperm({2, 1})));
    check_symbolic(build_family_detrep(FamilySpec::mperm({4})),
                   symbolic_family(FamilySpec::mperm({4})));
    check_symbolic(build_family_detrep(FamilySpec::mperm({1, 1})),
                   symbolic_family(FamilySpec::mperm({1, 1})));
}

TEST_CASE("grenet matrices are structurally cycle-cover graphs") {
    // away from the merged vertex, all non-loop edges ascend the vertex order
    for (const FamilySpec& spec :
         {FamilySpec::perm(3), FamilySpec::hoperm(2),
          FamilySpec::mperm({2, 2})}) {
        const DetRep d = build_family_detrep(spec);
        for (int i = 1; i < d.matrix.size; ++i) {
            CHECK_EQ(d.matrix.at(i, i), AffineForm(Rat(1)));
            for (int j = 1; j < i; ++j)
                CHECK(d.matrix.at(i, j).is_zero());
        }
    }
}

TEST_CASE("randomized verification accepts correct representations") {
    for (const FamilySpec& spec :
         {FamilySpec::perm(2), FamilySpec::perm(3), FamilySpec::hoperm(2),
          FamilySpec::mperm({2, 1}), FamilySpec::mperm({2, 2})}) {
        const DetRep d = build_family_detrep(spec);
        const VerifyReport rep =
            verify_detrep(d, family_reference(spec), 10, 12345);
        CHECK(rep.pass);
        CHECK_EQ(rep.trials, 10);
        CHECK_EQ(rep.seed, 12345);
        CHECK_EQ(rep.bound, 10 * d.chain_degree);
        for (const bool ok : rep.trial_ok) CHECK(ok);
    }
}

TEST_CASE("randomized verification rejects a corrupted representation") {
    const FamilySpec spec = FamilySpec::perm(3);
    DetRep d = build_family_detrep(spec);
    // a loop at the merged vertex adds the unit minor to every determinant
    d.matrix.at(0, 0).add_constant(Rat(1));
    const VerifyReport rep = verify_detrep(d, family_reference(spec), 20, 99);
    CHECK_FALSE(rep.pass);
    CHECK_EQ(rep.witness_trial, 0);
    CHECK_EQ(rep.witness.size(), 9);  // all variables of the 3x3 point
    CHECK(rep.det_value != rep.ref_value);
}

TEST_CASE("verification rejects bad arguments") {
    const DetRep d = build_family_detrep(FamilySpec::perm(2));
    CHECK_THROWS_AS(
        (void)verify_detrep(d, family_reference(FamilySpec::perm(2)), 0, 1),
        ShapeError);
}

TEST_CASE("grenet rejects degenerate posets") {
    GradedLabeledPoset p;
    p.rank_d = 0;
    p.elements = {{"only", 0}};
    CHECK_THROWS_AS((void)grenet_build(p), PosetError);
}

TEST_CASE("poset DSL round trip") {
    for (const GradedLabeledPoset& p :
         {boolean_lattice(2), cube_face_lattice(2), multiset_lattice({2, 1})}) {
        const std::string text = serialize_poset(p);
        const PosetDoc doc = parse_poset(text);
        CHECK_EQ(doc.poset, p);
    }
}
