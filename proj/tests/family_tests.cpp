#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "permcert/errors.hpp"
#include "permcert/family.hpp"
#include "permcert/linalg.hpp"
#include "support/oracles.hpp"

using namespace permcert;
using namespace permcert::testing;

namespace {

RatMatrix from_rows(const std::vector<std::vector<int>>& rows) {
    RatMatrix m(static_cast<int>(rows.size()),
                static_cast<int>(rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j)
            m.at(static_cast<int>(i), static_cast<int>(j)) =
                Rat(rows[i][j]);
    return m;
}

}  // namespace

TEST_CASE("worked evaluation examples") {
    RatMatrix x1(1, 2);
    x1.at(0, 0) = Rat(1);
    x1.at(0, 1) = Rat(1);
    CHECK_EQ(eval_brute(FamilySpec::hoperm(1), x1), Rat(2));

    const RatMatrix x2 = from_rows({{1, 2, 3, 4}, {5, 6, 7, 8}});
    CHECK_EQ(eval_brute(FamilySpec::hoperm(2), x2), Rat(128));
    CHECK_EQ(eval_recurrence(FamilySpec::hoperm(2), x2), Rat(128));

    const RatMatrix m21 = from_rows({{1, 2}, {3, 4}, {5, 6}});
    const FamilySpec spec21 = FamilySpec::mperm({2, 1});
    CHECK_EQ(eval_brute(spec21, m21), Rat(68));
    CHECK_EQ(eval_recurrence(spec21, m21), Rat(68));

    CHECK_EQ(eval_recurrence(FamilySpec::mperm({1, 1, 1}),
                             RatMatrix::identity(3)),
             Rat(1));
    CHECK_EQ(eval_brute(FamilySpec::perm(3), RatMatrix::identity(3)), Rat(1));
}

TEST_CASE("brute force equals recurrence on random inputs") {
    for (int n = 1; n <= 4; ++n) {
        const FamilySpec spec = FamilySpec::hoperm(n);
        for (std::uint64_t seed = 1; seed <= 8; ++seed) {
            const RatMatrix x = random_rat_matrix(n, 2 * n, seed * 11 + n);
            CHECK_EQ(eval_brute(spec, x), eval_recurrence(spec, x));
        }
    }
    const std::vector<std::vector<int>> comps = {
        {3}, {1, 2}, {2, 2}, {1, 1, 1, 1}, {3, 1, 2}, {2, 1, 1, 2}};
    for (const auto& comp : comps) {
        const FamilySpec spec = FamilySpec::mperm(comp);
        for (std::uint64_t seed = 1; seed <= 8; ++seed) {
            const RatMatrix x =
                random_rat_matrix(spec.rows(), spec.cols(), seed * 17 + 3);
            CHECK_EQ(eval_brute(spec, x), eval_recurrence(spec, x));
        }
    }
}

TEST_CASE("perm is the all-ones multiplicity case") {
    const RatMatrix x = random_int_matrix(4, 4, 99, 7);
    CHECK_EQ(eval_recurrence(FamilySpec::perm(4), x),
             eval_recurrence(FamilySpec::mperm({1, 1, 1, 1}), x));
    CHECK_EQ(FamilySpec::perm(4).display_name(), "perm_4");
    CHECK_EQ(FamilySpec::mperm({1, 1, 1, 1}).display_name(),
             "mperm_(1,1,1,1)");
}

TEST_CASE("all-ones closed forms") {
    CHECK_EQ(ones_value(FamilySpec::hoperm(3)), Rat(48));
    CHECK_EQ(ones_value(FamilySpec::mperm({2, 1})), Rat(3));
    CHECK_EQ(ones_value(FamilySpec::mperm({1, 1, 1, 1})), Rat(24));
    for (int n = 1; n <= 5; ++n) {
        const FamilySpec spec = FamilySpec::hoperm(n);
        CHECK_EQ(ones_value(spec),
                 eval_brute(spec, RatMatrix::ones(n, 2 * n)));
    }
    for (int gamma = 1; gamma <= 6; ++gamma) {
        for (const auto& part : partitions_of(gamma)) {
            const FamilySpec spec = FamilySpec::mperm(part);
            CHECK_EQ(ones_value(spec),
                     eval_brute(spec, RatMatrix::ones(spec.rows(),
                                                      spec.cols())));
        }
    }
}

TEST_CASE("zero point construction") {
    const ZeroPointInfo zh = zero_point(FamilySpec::hoperm(2));
    RatMatrix want(2, 4);
    want = RatMatrix::ones(2, 4);
    want.at(1, 1) = Rat(-3);
    CHECK_EQ(zh.point, want);

    const ZeroPointInfo z21 = zero_point(FamilySpec::mperm({2, 1}));
    RatMatrix w21 = RatMatrix::ones(3, 2);
    w21.at(2, 0) = -Rat(Int(1), Int(2));
    CHECK_EQ(z21.point, w21);
    CHECK_EQ(z21.ell, 1);
    CHECK_EQ(z21.c, 1);
    CHECK_EQ(z21.max_part, 2);
    CHECK_EQ(z21.d, Rat(Int(3), Int(2)));

    const ZeroPointInfo z111 = zero_point(FamilySpec::mperm({1, 1, 1}));
    RatMatrix w111 = RatMatrix::ones(3, 3);
    w111.at(0, 0) = Rat(-2);
    CHECK_EQ(z111.point, w111);
    CHECK_EQ(z111.ell, 2);
}

TEST_CASE("families vanish at their zero points") {
    for (int n = 1; n <= 6; ++n) {
        const FamilySpec spec = FamilySpec::hoperm(n);
        CHECK_EQ(eval_recurrence(spec, zero_point(spec).point), Rat(0));
    }
    for (int gamma = 2; gamma <= 7; ++gamma) {
        for (const auto& part : partitions_of(gamma)) {
            const FamilySpec spec = FamilySpec::mperm(part);
            CHECK_EQ(eval_recurrence(spec, zero_point(spec).point), Rat(0));
        }
    }
}

TEST_CASE("zero point works for unsorted compositions too") {
    for (const auto& comp : std::vector<std::vector<int>>{
             {1, 2}, {1, 3, 2}, {2, 1, 2}, {1, 1, 4}}) {
        const FamilySpec spec = FamilySpec::mperm(comp);
        const ZeroPointInfo z = zero_point(spec);
        CHECK_EQ(eval_recurrence(spec, z.point), Rat(0));
    }
}

TEST_CASE("column relabeling equivariance") {
    // permuting the parts together with the matrix columns fixes the value
    const FamilySpec a = FamilySpec::mperm({3, 1, 2});
    const FamilySpec b = FamilySpec::mperm({2, 3, 1});
    const RatMatrix x = random_int_matrix(6, 3, 42, 5);
    RatMatrix y(6, 3);
    const int perm[3] = {2, 0, 1};  // column j of y is column perm[j] of x
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 3; ++j) y.at(i, j) = x.at(i, perm[j]);
    CHECK_EQ(eval_recurrence(a, x), eval_recurrence(b, y));
}

TEST_CASE("hoperm is invariant under swapping a sign pair of columns") {
    const int n = 3;
    const FamilySpec spec = FamilySpec::hoperm(n);
    const RatMatrix x = random_int_matrix(n, 2 * n, 7, 6);
    RatMatrix y = x;
    for (int i = 0; i < n; ++i)
        std::swap(y.at(i, 1), y.at(i, n + 1));  // columns 2 and -2
    CHECK_EQ(eval_recurrence(spec, x), eval_recurrence(spec, y));
}

TEST_CASE("first partial derivatives") {
    const FamilySpec spec21 = FamilySpec::mperm({2, 1});
    CHECK_EQ(partial(spec21, RatMatrix::ones(3, 2), {3, 2}), Rat(1));
    CHECK_EQ(partial(FamilySpec::hoperm(2), RatMatrix::ones(2, 4), {1, 1}),
             Rat(2));
    CHECK_EQ(partial(spec21, RatMatrix::zero(3, 2), {1, 2}), Rat(0));

    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const FamilySpec spec = FamilySpec::hoperm(3);
        const RatMatrix x = random_rat_matrix(3, 6, seed * 5);
        for (const VarId& v : var_order(spec))
            CHECK_EQ(partial(spec, x, v),
                     fd_partial(spec, x, v.row - 1, matrix_col(spec, v)));
    }
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const FamilySpec spec = FamilySpec::mperm({2, 2, 1});
        const RatMatrix x = random_rat_matrix(5, 3, seed * 9);
        for (const VarId& v : var_order(spec))
            CHECK_EQ(partial(spec, x, v),
                     fd_partial(spec, x, v.row - 1, matrix_col(spec, v)));
    }
}

TEST_CASE("second partial derivatives") {
    const FamilySpec spec21 = FamilySpec::mperm({2, 1});
    CHECK_EQ(second_partial(spec21, RatMatrix::ones(3, 2), {1, 1}, {2, 1}),
             Rat(1));
    CHECK_EQ(second_partial(spec21, RatMatrix::ones(3, 2), {1, 1}, {1, 2}),
             Rat(0));  // same row
    CHECK_EQ(second_partial(FamilySpec::hoperm(2), RatMatrix::ones(2, 4),
                            {1, 1}, {2, -1}),
             Rat(0));  // same column pair

    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const FamilySpec spec = FamilySpec::hoperm(3);
        const RatMatrix x = random_rat_matrix(3, 6, seed * 23);
        const auto order = var_order(spec);
        std::mt19937_64 eng(seed);
        for (int t = 0; t < 30; ++t) {
            const VarId v = order[eng() % order.size()];
            const VarId w = order[eng() % order.size()];
            CHECK_EQ(second_partial(spec, x, v, w),
                     fd_second(spec, x, v.row - 1, matrix_col(spec, v),
                               w.row - 1, matrix_col(spec, w)));
        }
    }
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const FamilySpec spec = FamilySpec::mperm({3, 1});
        const RatMatrix x = random_rat_matrix(4, 2, seed * 29);
        const auto order = var_order(spec);
        std::mt19937_64 eng(seed + 7);
        for (int t = 0; t < 20; ++t) {
            const VarId v = order[eng() % order.size()];
            const VarId w = order[eng() % order.size()];
            CHECK_EQ(second_partial(spec, x, v, w),
                     fd_second(spec, x, v.row - 1, matrix_col(spec, v),
                               w.row - 1, matrix_col(spec, w)));
        }
    }
}

TEST_CASE("hessian is symmetric and matches second partials") {
    const FamilySpec spec = FamilySpec::mperm({2, 1});
    const RatMatrix x = random_rat_matrix(3, 2, 77);
    const auto order = var_order(spec);
    const RatMatrix h = hessian_at(spec, x, order);
    CHECK_EQ(h, transpose(h));
    for (size_t p = 0; p < order.size(); ++p)
        for (size_t q = 0; q < order.size(); ++q)
            CHECK_EQ(h.at(static_cast<int>(p), static_cast<int>(q)),
                     second_partial(spec, x, order[p], order[q]));
}

TEST_CASE("hoperm hessian entries ignore column signs") {
    const int n = 3;
    const FamilySpec spec = FamilySpec::hoperm(n);
    const RatMatrix b = zero_point(spec).point;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k)
                for (int l = 1; l <= n; ++l) {
                    const Rat base = second_partial(spec, b, {i, j}, {k, l});
                    CHECK_EQ(second_partial(spec, b, {i, -j}, {k, l}), base);
                    CHECK_EQ(second_partial(spec, b, {i, j}, {k, -l}), base);
                    CHECK_EQ(second_partial(spec, b, {i, -j}, {k, -l}), base);
                }
}

TEST_CASE("variable order") {
    const auto oh = var_order(FamilySpec::hoperm(2));
    REQUIRE_EQ(oh.size(), 8);
    CHECK_EQ(oh[0], VarId{1, 1});
    CHECK_EQ(oh[1], VarId{1, 2});
    CHECK_EQ(oh[2], VarId{2, 1});
    CHECK_EQ(oh[3], VarId{2, 2});
    CHECK_EQ(oh[4], VarId{1, -1});
    CHECK_EQ(oh[7], VarId{2, -2});

    const auto om = var_order(FamilySpec::mperm({2, 1}));
    REQUIRE_EQ(om.size(), 6);
    CHECK_EQ(om[0], VarId{1, 1});
    CHECK_EQ(om[1], VarId{1, 2});
    CHECK_EQ(om[5], VarId{3, 2});
}

TEST_CASE("determinant cofactor hessian") {
    CHECK_EQ(det_cofactor_hessian(RatMatrix::ones(1, 1)),
             RatMatrix::zero(1, 1));

    // for [[a,b],[c,d]] the only mixed partials are over ad and bc
    const RatMatrix h2 = det_cofactor_hessian(random_int_matrix(2, 2, 3, 9));
    const RatMatrix want = [] {
        RatMatrix m(4, 4);
        m.at(0, 3) = Rat(1);
        m.at(3, 0) = Rat(1);
        m.at(1, 2) = Rat(-1);
        m.at(2, 1) = Rat(-1);
        return m;
    }();
    CHECK_EQ(h2, want);

    // exact finite differences of det itself as the oracle
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const int n = 3;
        const RatMatrix a = random_int_matrix(n, n, seed * 41, 6);
        const RatMatrix h = det_cofactor_hessian(a);
        CHECK_EQ(h, transpose(h));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) {
                        RatMatrix a11 = a, a10 = a, a01 = a;
                        a11.at(i, j) += Rat(1);
                        a11.at(k, l) += Rat(1);
                        a10.at(i, j) += Rat(1);
                        a01.at(k, l) += Rat(1);
                        Rat fd;
                        if (i == k && j == l) {
                            fd = Rat(0);  // degree <= 1 in each entry
                        } else {
                            fd = det(a11) - det(a10) - det(a01) + det(a);
                        }
                        CHECK_EQ(h.at(i * n + j, k * n + l), fd);
                    }
    }
}

TEST_CASE("cofactor hessian of a singular matrix has low rank") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const int n = 4;
        const RatMatrix p = random_int_matrix(n, n - 1, seed * 3, 4);
        const RatMatrix q = random_int_matrix(n - 1, n, seed * 3 + 1, 4);
        const RatMatrix a = mul(p, q);
        REQUIRE_EQ(det(a), Rat(0));
        CHECK(rank(det_cofactor_hessian(a)) <= 2 * n);
    }
}

TEST_CASE("shape and cap errors") {
    CHECK_THROWS_AS((void)eval_brute(FamilySpec::hoperm(2), RatMatrix(2, 3)),
                    ShapeError);
    CHECK_THROWS_AS(
        (void)eval_recurrence(FamilySpec::mperm({2, 1}), RatMatrix(2, 2)),
        ShapeError);
    CHECK_THROWS_AS(
        (void)eval_brute(FamilySpec::hoperm(9), RatMatrix(9, 18)),
        CapExceeded);
    CHECK_THROWS_AS(
        (void)eval_recurrence(FamilySpec::hoperm(13), RatMatrix(13, 26)),
        CapExceeded);
    CHECK_THROWS_AS((void)eval_brute(FamilySpec::mperm(std::vector<int>(13, 1)),
                                     RatMatrix(13, 13)),
                    CapExceeded);
    CHECK_THROWS_AS(
        (void)eval_recurrence(FamilySpec::mperm(std::vector<int>(21, 1)),
                              RatMatrix(21, 21)),
        CapExceeded);
    CHECK_THROWS_AS((void)FamilySpec::mperm({2, 0, 1}), ShapeError);
    CHECK_THROWS_AS((void)FamilySpec::mperm({}), ShapeError);
    CHECK_THROWS_AS((void)FamilySpec::hoperm(0), ShapeError);
}
