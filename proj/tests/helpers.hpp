#pragma once

#include "homcx/complex.hpp"

namespace homcx::testing {

/// Simple module k = A/rad over F_p[x]/(x^n) or any algebra whose non-unit
/// basis elements act by zero on the one-dimensional quotient.
inline Module one_dim_trivial(const AlgebraPtr& a) {
    std::vector<Mat> act;
    for (int i = 0; i < a->dim(); ++i) {
        Mat m(a->p(), 1, 1);
        m(0, 0) = a->unit()[i] != 0 ? 1 : 0; // only works when unit = e_0 pattern
        act.push_back(m);
    }
    // fall back to the character sending unit -> 1, nilpotent basis -> 0
    return Module(a, act);
}

/// The 2-periodic complex ... -> A -> A -> A -> ... (multiplication by x)
/// over F_p[x]/(x^2) on the window [lo, hi].
inline Complex periodic_complex(const AlgebraPtr& a, int lo, int hi) {
    Module reg = regular_module(a);
    Mat x = reg.action(1);
    std::vector<Module> mods;
    std::vector<Mat> diffs;
    for (int n = lo; n <= hi; ++n) mods.push_back(reg);
    for (int n = lo + 1; n <= hi; ++n) diffs.push_back(x);
    return Complex(a, lo, std::move(mods), std::move(diffs));
}

/// Two-term complex f: M -> N placed in degrees [deg, deg-1].
inline Complex two_term(const ModMap& f, int deg) {
    std::vector<Module> mods{f.codomain(), f.domain()};
    std::vector<Mat> diffs{f.matrix()};
    return Complex(f.domain().algebra(), deg - 1, std::move(mods), std::move(diffs));
}

/// Simple module S_2 over triangular(p, 2): E22 acts by 1, the rest by 0.
inline Module simple_s2_triangular(const AlgebraPtr& t) {
    std::vector<Mat> act;
    for (int i = 0; i < 3; ++i) {
        Mat m(t->p(), 1, 1);
        m(0, 0) = (i == 2) ? 1 : 0; // basis order E11, E12, E22
        act.push_back(m);
    }
    return Module(t, act);
}

/// Module over product_algebra(a, b) obtained from a module over one factor
/// (the other factor acts by zero).
inline Module lift_to_product(const AlgebraPtr& prod, const Module& m, int factor,
                              int dim_a) {
    std::vector<Mat> act;
    for (int i = 0; i < prod->dim(); ++i) {
        bool in_first = i < dim_a;
        int local = in_first ? i : i - dim_a;
        if ((factor == 0) == in_first)
            act.push_back(m.action(local));
        else
            act.push_back(Mat(prod->p(), m.dim(), m.dim()));
    }
    return Module(prod, act);
}

} // namespace homcx::testing
