#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "homcx/resolution.hpp"

using namespace homcx;
using namespace homcx::testing;

namespace {

AlgebraPtr A2() { return truncated_poly(2, 2); }

Module simple_s2(const AlgebraPtr& t) {
    std::vector<Mat> act;
    for (int i = 0; i < 3; ++i) {
        Mat m(t->p(), 1, 1);
        m(0, 0) = (i == 2) ? 1 : 0; // basis E11, E12, E22
        act.push_back(m);
    }
    return Module(t, act);
}

} // namespace

TEST_CASE("free resolution of k over the dual numbers is 2-periodic rank 1") {
    auto a = A2();
    Module k = one_dim_trivial(a);
    Resolution r = free_resolution(k, 6);
    CHECK(r.inf_degree() == 0);
    for (int i = 0; i <= 6; ++i) CHECK(r.rank_at(i) == 1);
    ChainMap pi = r.pi_chain(0, 6);
    CHECK(pi.is_morphism());
    for (int n = 0; n <= 5; ++n) {
        Homology hp(pi.source(), n), hm(pi.target(), n);
        CHECK(hp.dim() == hm.dim());
    }
    Mat d1 = r.diff_at(1);
    CHECK(d1 == regular_module(a).action(1));
}

TEST_CASE("free module resolves as itself") {
    auto a = A2();
    Module f = free_module(a, 2);
    Resolution r = free_resolution(f, 4);
    CHECK(r.rank_at(0) == 2);
    for (int i = 1; i <= 4; ++i) CHECK(r.rank_at(i) == 0);
    CHECK(rank(r.pi_at(0)) == 4); // pi iso on generators
}

TEST_CASE("exact complex resolves to zero") {
    auto a = A2();
    Complex per = periodic_complex(a, -2, 3);
    ConeData cd = cone(ChainMap::identity(per));
    Resolution r(cd.cone);
    CHECK(r.is_zero_resolution());
    PdResult pr = pd(r, 0, std::nullopt);
    CHECK(pr.kind == PdResult::Finite);
    CHECK(pr.value == kNegInfinity);
}

TEST_CASE("syzygies over the dual numbers") {
    auto a = A2();
    Module k = one_dim_trivial(a);
    Resolution r = free_resolution(k, 4);
    Module om0 = syzygy(r, 0);
    CHECK(om0.dim() == 1); // C_0(P) = k
    Module om1 = syzygy(r, 1);
    CHECK(om1.dim() == 1);
    CHECK_FALSE(is_projective(om1).projective);
}

TEST_CASE("pd decisions") {
    auto a = A2();
    Module k = one_dim_trivial(a);
    Resolution rk = free_resolution(k, 2);
    PdResult infinite = pd(rk, 0, std::nullopt); // certificate n = 0
    CHECK(infinite.kind == PdResult::Infinite);

    PdResult unknown = pd(rk, std::nullopt, 3);
    CHECK(unknown.kind == PdResult::UnknownWithin);

    auto t = triangular(2, 2);
    Module s2 = simple_s2(t);
    Resolution rs = free_resolution(s2, 3);
    PdResult fin = pd(rs, 1, std::nullopt);
    CHECK(fin.kind == PdResult::Finite);
    CHECK(fin.value == 1);

    Resolution rf = free_resolution(free_module(a, 1), 2);
    PdResult f0 = pd(rf, 0, std::nullopt);
    CHECK(f0.kind == PdResult::Finite);
    CHECK(f0.value == 0);
}

TEST_CASE("resolution of a two-term complex") {
    auto a = A2();
    Module reg = regular_module(a);
    ModMap mult_x(reg, reg, reg.action(1));
    Complex c = two_term(mult_x, 1); // H_0 = k, H_1 = k
    Resolution r(c);
    CHECK(r.inf_degree() == 0);
    r.extend_to(4);
    ChainMap pi = r.pi_chain(0, 4);
    CHECK(pi.is_morphism());
    for (int n = 0; n <= 3; ++n) {
        Homology hp(pi.source(), n), hm(pi.target(), n);
        REQUIRE(hp.dim() == hm.dim());
        Mat hmap = homology_map(pi, n, hp, hm);
        CHECK(is_invertible(hmap));
    }
}

TEST_CASE("lazy extension is append-only") {
    auto a = A2();
    Module k = one_dim_trivial(a);
    Resolution r = free_resolution(k, 2);
    Mat d1 = r.diff_at(1);
    Mat pi0 = r.pi_at(0);
    r.extend_to(6);
    CHECK(r.diff_at(1) == d1);
    CHECK(r.pi_at(0) == pi0);
}

TEST_CASE("two strategies give homotopic lifts of the identity") {
    auto a = tensor_algebra(A2(), A2()); // F_2[x,y]/(x^2,y^2)
    Module k = one_dim_trivial(a);
    Resolution greedy = free_resolution(k, 4, CoverStrategy::Greedy);
    Resolution all = free_resolution(k, 4, CoverStrategy::AllBasis);
    ChainMap up = lift_identity(greedy, all, 0, 4);
    ChainMap down = lift_identity(all, greedy, 0, 4);
    CHECK(up.is_morphism());
    CHECK(down.is_morphism());
    ChainMap round = down.compose(up);
    Complex pg = greedy.p_slice(0, 4);
    auto h = solve_homotopy(round, ChainMap::identity(pg));
    CHECK(h.has_value());
    auto h2 = solve_homotopy(up, up);
    REQUIRE(h2.has_value());
    CHECK(h2->is_zero());
}

TEST_CASE("horseshoe on 0 -> k -> A -> k -> 0") {
    auto a = A2();
    Module k = one_dim_trivial(a);
    Module reg = regular_module(a);
    Mat incl(2, 2, 1);
    incl(1, 0) = 1;
    Mat aug(2, 1, 2);
    aug(0, 0) = 1;
    Complex ck = Complex::concentrated(k, 0);
    Complex creg = Complex::concentrated(reg, 0);
    ChainMap mu(ck, creg, 0, {{0, incl}});
    ChainMap mup(creg, ck, 0, {{0, aug}});

    HorseshoeDiagram h = horseshoe(mu, mup, 4);
    for (int n = 0; n <= 4; ++n) {
        CHECK(h.p_mid.module_at(n).dim() ==
              h.p_sub.module_at(n).dim() + h.p_quot.module_at(n).dim());
    }
    CHECK(h.bottom.mu.is_morphism());
    for (int n = 0; n <= 3; ++n) {
        Homology hp(h.p_quot, n), hm(h.pi_quot.target(), n);
        REQUIRE(hp.dim() == hm.dim());
        CHECK(is_invertible(homology_map(h.pi_quot, n, hp, hm)));
    }
    for (int n = 0; n <= 3; ++n) {
        Homology hp(h.p_mid, n), hm(h.pi_mid.target(), n);
        REQUIRE(hp.dim() == hm.dim());
        CHECK(is_invertible(homology_map(h.pi_mid, n, hp, hm)));
    }

    DirectSum ds = direct_sum(k, k);
    Complex csum = Complex::concentrated(ds.module, 0);
    ChainMap smu(ck, csum, 0, {{0, ds.inj1.matrix()}});
    ChainMap smup(csum, ck, 0, {{0, ds.proj2.matrix()}});
    HorseshoeDiagram hs = horseshoe(smu, smup, 3);
    for (int n = 0; n <= 3; ++n)
        CHECK(hs.p_mid.module_at(n).dim() ==
              hs.p_sub.module_at(n).dim() + hs.p_quot.module_at(n).dim());
}

TEST_CASE("horseshoe rejects non-exact input") {
    auto a = A2();
    Module k = one_dim_trivial(a);
    Complex ck = Complex::concentrated(k, 0);
    ChainMap id = ChainMap::identity(ck);
    CHECK_THROWS_AS(horseshoe(id, id, 3), InputNotExact);
}
