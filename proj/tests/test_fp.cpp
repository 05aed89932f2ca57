#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "homcx/fp.hpp"

using namespace homcx;

TEST_CASE("field arithmetic") {
    PrimeField f(7);
    CHECK(f.add(5, 4) == 2);
    CHECK(f.sub(2, 5) == 4);
    CHECK(f.neg(3) == 4);
    CHECK(f.mul(5, 5) == 4);
    CHECK(f.mul(f.inv(5), 5) == 1);
    CHECK(f.residue(-1) == 6);
    CHECK_THROWS_AS(PrimeField(6), ValidationError);
    CHECK_THROWS_AS(PrimeField(1), ValidationError);
    PrimeField big(65521); // largest prime below 2^16
    CHECK(big.mul(big.inv(12345), 12345) == 1);
    CHECK(big.mul(65520, 65520) == 1); // (-1)^2
}

TEST_CASE("rref and rank") {
    Mat a(5, 3, 4);
    // rows: [1 2 0 3; 2 4 1 1; 0 0 2 1]
    std::uint32_t vals[3][4] = {{1, 2, 0, 3}, {2, 4, 1, 1}, {0, 0, 2, 1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 4; ++j) a(i, j) = vals[i][j];
    Echelon e = rref(a);
    CHECK(e.rank() == 3);
    CHECK(e.pivots == std::vector<int>{0, 2, 3});
    CHECK(rank(Mat::identity(5, 4)) == 4);
    CHECK(rank(Mat(5, 3, 3)) == 0);
}

TEST_CASE("kernel basis is reduced and deterministic") {
    Mat a(2, 2, 3);
    // x0 + x2 = 0 ; x1 + x2 = 0 over F_2
    a(0, 0) = 1; a(0, 2) = 1;
    a(1, 1) = 1; a(1, 2) = 1;
    auto kb = kernel_basis_full(a);
    REQUIRE(kb.basis.cols() == 1);
    CHECK(kb.basis(0, 0) == 1);
    CHECK(kb.basis(1, 0) == 1);
    CHECK(kb.basis(2, 0) == 1);
    CHECK(kb.unit_rows == std::vector<int>{2});
    CHECK((a * kb.basis).is_zero());
}

TEST_CASE("solve returns echelon-minimal solution") {
    Mat a(5, 2, 3);
    a(0, 0) = 1; a(0, 1) = 1; a(0, 2) = 1;
    a(1, 1) = 1; a(1, 2) = 4;
    Mat b(5, 2, 1);
    b(0, 0) = 3; b(1, 0) = 2;
    auto x = solve(a, b);
    REQUIRE(x.has_value());
    CHECK((a * *x) == b);
    // free variable x2 stays zero
    CHECK((*x)(2, 0) == 0);

    Mat c(5, 2, 1);
    c(0, 0) = 1; c(1, 0) = 0;
    Mat zero_sys(5, 2, 1);
    CHECK_FALSE(solve(zero_sys, c).has_value());
}

TEST_CASE("column space basis and coordinates") {
    Mat a(3, 3, 2);
    a(0, 0) = 1; a(1, 0) = 2; a(2, 0) = 0;
    a(0, 1) = 2; a(1, 1) = 1; a(2, 1) = 1;
    ColBasis cb = column_space_basis(a);
    CHECK(cb.basis.cols() == 2);
    Mat coords = coordinates_in(cb, a);
    CHECK(cb.basis * coords == a);
}

TEST_CASE("inverse") {
    Mat a(7, 2, 2);
    a(0, 0) = 2; a(0, 1) = 3; a(1, 0) = 1; a(1, 1) = 4;
    CHECK(is_invertible(a));
    CHECK((a * inverse(a)).is_identity());
    Mat s(7, 2, 2);
    s(0, 0) = 1; s(0, 1) = 2; s(1, 0) = 2; s(1, 1) = 4;
    CHECK_FALSE(is_invertible(s));
}

TEST_CASE("stack and vectorize round trips") {
    Mat a(3, 2, 2), b(3, 2, 2);
    a(0, 0) = 1; b(1, 1) = 2;
    Mat h = Mat::hstack(a, b);
    CHECK(h.cols() == 4);
    Mat v = Mat::vstack(a, b);
    CHECK(v.rows() == 4);
    Mat bd = Mat::block_diag(a, b);
    CHECK(bd.rows() == 4);
    CHECK(bd.cols() == 4);
    Mat vec = a.vectorized();
    CHECK(Mat::from_vectorized(vec, 2, 2) == a);
}
