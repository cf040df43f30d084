#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "thomtwist/fp_linalg.hpp"

using namespace tt;

TEST_CASE("rref on degenerate shapes") {
    FpMat z(2, 0, 0);
    auto rr = rref(z);
    CHECK(rr.rank == 0);
    CHECK(rr.pivots.empty());
    CHECK(kernel_basis(z).rows() == 0);

    FpMat zr(3, 0, 4);  // no rows: kernel is everything
    CHECK(rank(zr) == 0);
    CHECK(kernel_basis(zr) == FpMat::identity(3, 4));

    FpMat zc(2, 4, 0);  // no columns: nothing to solve for
    CHECK(rank(zc) == 0);
    CHECK(kernel_basis(zc).rows() == 0);
}

TEST_CASE("rref of identity is identity with full pivot set") {
    FpMat id = FpMat::identity(2, 3);
    auto rr = rref(id);
    CHECK(rr.reduced == id);
    CHECK(rr.pivots == std::vector<int>{0, 1, 2});
    CHECK(rr.rank == 3);
}

TEST_CASE("F3 matrix with proportional rows has rank 1") {
    // Second row is 2 * first row mod 3, so the rank is 1, not 2.
    FpMat m = FpMat::from_rows(3, {{1, 2}, {2, 1}}, 2);
    auto rr = rref(m);
    CHECK(rr.rank == 1);
    CHECK(rr.pivots == std::vector<int>{0});
    CHECK(rr.reduced.get(0, 0) == 1);
    CHECK(rr.reduced.get(0, 1) == 2);
    CHECK(rr.reduced.get(1, 0) == 0);
    CHECK(rr.reduced.get(1, 1) == 0);
}

TEST_CASE("kernel basis spans the null space exactly") {
    FpMat m = FpMat::from_rows(2, {{1, 1, 0}, {0, 1, 1}}, 3);
    FpMat k = kernel_basis(m);
    REQUIRE(k.rows() == 1);
    CHECK(k.row(0) == FpVec{1, 1, 1});
    CHECK(vec_is_zero(m.mul_vec(k.row(0))));

    FpMat m3 = FpMat::from_rows(3, {{1, 2}, {2, 1}}, 2);
    FpMat k3 = kernel_basis(m3);
    REQUIRE(k3.rows() == 1);
    CHECK(vec_is_zero(m3.mul_vec(k3.row(0))));
}

TEST_CASE("solve returns a particular solution or reports inconsistency") {
    FpMat m = FpMat::from_rows(2, {{1, 1}, {0, 1}}, 2);
    auto x = solve(m, FpVec{1, 1});
    REQUIRE(x.has_value());
    CHECK(m.mul_vec(*x) == FpVec{1, 1});

    FpMat sing = FpMat::from_rows(2, {{1, 1}, {1, 1}}, 2);
    CHECK(!solve(sing, FpVec{1, 0}).has_value());
    auto y = solve(sing, FpVec{1, 1});
    REQUIRE(y.has_value());
    CHECK(sing.mul_vec(*y) == FpVec{1, 1});

    FpMat m3 = FpMat::from_rows(3, {{1, 2}, {2, 1}}, 2);
    CHECK(!solve(m3, FpVec{1, 0}).has_value());  // rhs outside the rank-1 column space
    auto z = solve(m3, FpVec{1, 2});
    REQUIRE(z.has_value());
    CHECK(m3.mul_vec(*z) == FpVec{1, 2});
}

TEST_CASE("rref is idempotent and pivots strictly increase") {
    std::mt19937 rng(7);
    for (int p : {2, 3}) {
        std::uniform_int_distribution<int> ent(0, p - 1);
        for (int trial = 0; trial < 200; ++trial) {
            std::uniform_int_distribution<int> dim(0, 9);
            int r = dim(rng), c = dim(rng);
            FpMat m(p, r, c);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < c; ++j) m.set(i, j, ent(rng));
            auto rr = rref(m);
            auto rr2 = rref(rr.reduced);
            CHECK(rr2.reduced == rr.reduced);
            CHECK(rr2.pivots == rr.pivots);
            for (size_t k = 1; k < rr.pivots.size(); ++k)
                CHECK(rr.pivots[k - 1] < rr.pivots[k]);
            CHECK(rr.rank + kernel_basis(m).rows() == c);
        }
    }
}

TEST_CASE("bit-packed F2 rows behave like plain scalars past one word") {
    // 70 columns forces the two-word path for every row operation.
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> ent(0, 1);
    FpMat m(2, 5, 70);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 70; ++j) m.set(i, j, ent(rng));
    FpMat k = kernel_basis(m);
    CHECK(k.rows() == 70 - rank(m));
    for (int i = 0; i < k.rows(); ++i) CHECK(vec_is_zero(m.mul_vec(k.row(i))));
    CHECK(m.mul(FpMat::identity(2, 70)) == m);
    CHECK(m.transpose().transpose() == m);
}
