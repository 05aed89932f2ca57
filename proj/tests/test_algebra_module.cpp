#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "homcx/algebra.hpp"
#include "homcx/module.hpp"

using namespace homcx;

namespace {

/// k = A/rad over F_p[x]/(x^n): one-dimensional, x acts by zero.
Module simple_over_truncated(const AlgebraPtr& a) {
    std::vector<Mat> act;
    for (int i = 0; i < a->dim(); ++i) {
        Mat m(a->p(), 1, 1);
        m(0, 0) = (i == 0) ? 1 : 0;
        act.push_back(m);
    }
    return Module(a, act);
}

} // namespace

TEST_CASE("validate_algebra accepts textbook data and rejects broken triples") {
    auto a = truncated_poly(2, 2); // F_2[x]/(x^2)
    CHECK(a->dim() == 2);
    CHECK(Algebra::validate(a->data()).empty());

    // group algebra of Z/2: x*x = 1
    AlgebraData g = a->data();
    g.mul[1][1] = {1, 0};
    CHECK(Algebra::validate(g).empty());

    // genuinely broken triple: a*a = b, a*b = 1, b*a = 0 gives (aa)a != a(aa)
    AlgebraData bad;
    bad.p = 2;
    bad.dim = 3;
    bad.unit = {1, 0, 0};
    bad.mul.assign(3, std::vector<std::vector<std::uint32_t>>(3, std::vector<std::uint32_t>(3, 0)));
    for (int i = 0; i < 3; ++i) { bad.mul[0][i][i] = 1; bad.mul[i][0][i] = 1; }
    bad.mul[1][1] = {0, 0, 1}; // a*a = b
    bad.mul[1][2] = {1, 0, 0}; // a*b = 1
    bad.mul[2][1] = {0, 0, 0}; // b*a = 0
    bad.mul[2][2] = {0, 0, 0};
    auto defects = Algebra::validate(bad);
    bool found = false;
    for (const auto& d : defects)
        if (d.kind == AlgebraDefect::NonAssociative) found = true;
    CHECK(found);
}

TEST_CASE("opposite is an involution and fixes commutative algebras") {
    auto a = truncated_poly(2, 2);
    auto op = opposite(a);
    CHECK(op->structurally_equal(*a)); // commutative
    auto t = triangular(3, 2);
    auto t_op = opposite(t);
    CHECK_FALSE(t_op->structurally_equal(*t));
    CHECK(opposite(t_op)->structurally_equal(*t));
}

TEST_CASE("regular and free modules") {
    auto a = truncated_poly(2, 2);
    Module reg = regular_module(a);
    CHECK(reg.dim() == 2);
    // action of x in basis (1, x): sends 1 -> x, x -> 0
    Mat ax = reg.action(1);
    CHECK(ax(1, 0) == 1);
    CHECK(ax(0, 0) == 0);
    CHECK(ax(0, 1) == 0);
    CHECK(ax(1, 1) == 0);
    CHECK(reg.action_of(a->unit()).is_identity());

    CHECK(free_module(a, 0).is_zero());
    CHECK(free_module(a, 1).structurally_equal(reg));
    CHECK(free_module(a, 3).dim() == 6);
}

TEST_CASE("kernel, image, cokernel of multiplication by x") {
    auto a = truncated_poly(2, 2);
    Module reg = regular_module(a);
    ModMap mult_x(reg, reg, reg.action(1));
    SubModule ker = kernel(mult_x);
    CHECK(ker.module.dim() == 1);
    SubModule im = image(mult_x);
    CHECK(im.module.dim() == 1);
    CHECK(ker.module.dim() + rank(mult_x.matrix()) == reg.dim());
    QuotModule cok = cokernel(mult_x);
    CHECK(cok.module.dim() == 1);

    // cokernel(0 -> M) = M
    ModMap from_zero = ModMap::zero(Module::zero(a), reg);
    QuotModule whole = cokernel(from_zero);
    CHECK(whole.module.dim() == reg.dim());
    // image(identity) = whole module
    CHECK(image(ModMap::identity(reg)).module.dim() == reg.dim());
}

TEST_CASE("hom spaces") {
    auto a = truncated_poly(2, 2);
    Module reg = regular_module(a);
    Module k = simple_over_truncated(a);
    CHECK(hom_space(k, k).dim() == 1);
    // free-forget adjunction: dim Hom(A, M) = dim M
    CHECK(hom_space(reg, k).dim() == 1);
    CHECK(hom_space(reg, reg).dim() == 2);
    CHECK(hom_space(k, Module::zero(a)).dim() == 0);
    HomBasis hb = hom_space(reg, reg);
    Mat c = hb.coordinates(hb.basis_map(1));
    CHECK(hb.map_of(c) == hb.basis_map(1));
}

TEST_CASE("free cover and projectivity") {
    auto a = truncated_poly(2, 2);
    Module reg = regular_module(a);
    Module k = simple_over_truncated(a);

    FreeCover ck = free_cover(k);
    CHECK(ck.generators.size() == 1);
    CHECK(ck.free.dim() == 2);
    CHECK(ck.ker.module.dim() == 1); // kernel of augmentation is k again

    FreeCover cf = free_cover(free_module(a, 2));
    CHECK(cf.generators.size() == 2);

    CHECK(is_projective(free_module(a, 2)).projective);
    CHECK_FALSE(is_projective(k).projective);
    CHECK(is_projective(Module::zero(a)).projective);

    auto w = is_projective(free_module(a, 1));
    CHECK((w.projection.matrix() * w.section.matrix()).is_identity());
}

TEST_CASE("linear dual") {
    auto a = truncated_poly(2, 2);
    Module reg = regular_module(a);
    Module d = linear_dual(reg);
    CHECK(d.dim() == 2);
    CHECK(d.algebra()->structurally_equal(*opposite(a)));
    CHECK(linear_dual(Module::zero(a)).is_zero());
    Module dd = linear_dual(d);
    CHECK(dd.dim() == reg.dim());
}

TEST_CASE("star dual and biduality") {
    auto a = truncated_poly(2, 2);
    Module reg = regular_module(a);
    Module k = simple_over_truncated(a);

    auto op = opposite(a);
    StarDual sd = star_dual(free_module(a, 2), op);
    CHECK(sd.dual.dim() == 4); // free rank 2 dualizes to free rank 2 over A^op

    Biduality bf = biduality(free_module(a, 2));
    CHECK(is_invertible(bf.eval.matrix()));

    // k over F_2[x]/(x^2) is totally reflexive: eval is an isomorphism
    Biduality bk = biduality(k);
    CHECK(bk.star.dual.dim() == 1);
    CHECK(is_invertible(bk.eval.matrix()));

    Biduality bz = biduality(Module::zero(a));
    CHECK(bz.eval.matrix().rows() == 0);
}

TEST_CASE("direct sums and instance constructors") {
    auto a = truncated_poly(2, 2);
    Module reg = regular_module(a);
    DirectSum s = direct_sum(reg, Module::zero(a));
    CHECK(s.module.dim() == reg.dim());

    auto t4 = tensor_algebra(a, a);
    CHECK(t4->dim() == 4); // F_2[x,y]/(x^2, y^2)
    auto prod = product_algebra(a, triangular(2, 2));
    CHECK(prod->dim() == 5);
    auto t3 = triangular(3, 2);
    CHECK(t3->dim() == 3);
    Module regt = regular_module(t3);
    CHECK(regt.dim() == 3);
}

TEST_CASE("triangular simple S_2 has the expected cover") {
    auto t = triangular(2, 2);
    // S_2: E11 acts 0, E22 acts 1, E12 acts 0
    std::vector<Mat> act;
    for (int i = 0; i < 3; ++i) {
        Mat m(2, 1, 1);
        m(0, 0) = (i == 2) ? 1 : 0; // basis order E11, E12, E22
        act.push_back(m);
    }
    Module s2(t, act);
    FreeCover c = free_cover(s2);
    CHECK(c.free.dim() == 3);
    CHECK(c.ker.module.dim() == 2);
    CHECK_FALSE(is_projective(s2).projective);
}
