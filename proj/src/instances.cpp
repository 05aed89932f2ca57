#include "homcx/instances.hpp"

namespace homcx {

Module trivial_simple(const AlgebraPtr& a) {
    std::vector<Mat> act;
    for (int i = 0; i < a->dim(); ++i) {
        Mat m(a->p(), 1, 1);
        m(0, 0) = a->unit()[i] != 0 ? 1 : 0;
        act.push_back(m);
    }
    return Module(a, act);
}

Module triangular_simple_top(const AlgebraPtr& t) {
    std::vector<Mat> act;
    for (int i = 0; i < t->dim(); ++i) {
        Mat m(t->p(), 1, 1);
        m(0, 0) = (i == t->dim() - 1) ? 1 : 0; // E_nn acts as the identity
        act.push_back(m);
    }
    return Module(t, act);
}

Module lift_to_product(const AlgebraPtr& prod, const Module& m, int factor, int dim_a) {
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

namespace {

/// closure of random vectors under the algebra action inside a free module
SubModule random_closed_span(const AlgebraPtr& a, Rng& rng, const Module& f) {
    const std::uint32_t p = a->p();
    int count = 1 + int(rng.below(2));
    Mat gens(p, f.dim(), count);
    for (int j = 0; j < count; ++j)
        for (int i = 0; i < f.dim(); ++i) gens(i, j) = rng.fp_element(p);
    // close under the action
    Mat span = gens;
    bool grew = true;
    while (grew) {
        grew = false;
        Mat next = span;
        for (int i = 0; i < a->dim(); ++i) {
            Mat moved = f.action(i) * span;
            next = Mat::hstack(next, moved);
        }
        ColBasis cb = column_space_basis(next);
        if (cb.basis.cols() > rank(span)) grew = true;
        span = cb.basis;
    }
    ColBasis cb = column_space_basis(span);
    // induced action read off the pivot rows
    std::vector<Mat> act;
    for (int i = 0; i < a->dim(); ++i) {
        Mat moved = f.action(i) * cb.basis;
        Mat coords = moved.rows_selected(cb.pivot_rows);
        check(cb.basis * coords == moved, "random span not closed");
        act.push_back(std::move(coords));
    }
    Module sub(a, std::move(act));
    ModMap incl(sub, f, cb.basis);
    return SubModule{std::move(sub), std::move(incl)};
}

} // namespace

Module random_submodule(const AlgebraPtr& a, Rng& rng, int max_rank) {
    Module f = free_module(a, 1 + int(rng.below(std::uint64_t(max_rank))));
    return random_closed_span(a, rng, f).module;
}

Module random_quotient(const AlgebraPtr& a, Rng& rng, int max_rank) {
    Module f = free_module(a, 1 + int(rng.below(std::uint64_t(max_rank))));
    SubModule s = random_closed_span(a, rng, f);
    return cokernel(s.inclusion).module;
}

Module random_module(const AlgebraPtr& a, Rng& rng, int max_rank) {
    return rng.below(2) == 0 ? random_submodule(a, rng, max_rank)
                             : random_quotient(a, rng, max_rank);
}

ModMap random_map(const Module& m, const Module& n, Rng& rng) {
    HomBasis hb = hom_space(m, n);
    Mat coords(m.algebra()->p(), hb.dim(), 1);
    for (int i = 0; i < hb.dim(); ++i) coords(i, 0) = rng.fp_element(m.algebra()->p());
    return ModMap(m, n, hb.map_of(coords));
}

ModuleSes random_ses(const AlgebraPtr& a, Rng& rng, int max_rank) {
    Module f = free_module(a, 1 + int(rng.below(std::uint64_t(max_rank))));
    SubModule s = random_closed_span(a, rng, f);
    QuotModule q = cokernel(s.inclusion);
    return ModuleSes{s.module, f, q.module, s.inclusion, q.projection};
}

Complex random_complex(const AlgebraPtr& a, Rng& rng, int max_rank, int lo, int hi) {
    Complex out(a);
    int pieces = 1 + int(rng.below(2));
    for (int k = 0; k < pieces; ++k) {
        Module m = random_module(a, rng, max_rank);
        Module n = random_module(a, rng, max_rank);
        ModMap f = random_map(m, n, rng);
        int span = hi - lo; // placement of the two-term piece inside [lo, hi]
        int deg = lo + 1 + int(rng.below(std::uint64_t(std::max(1, span - 1))));
        std::vector<Module> mods{f.codomain(), f.domain()};
        std::vector<Mat> diffs{f.matrix()};
        Complex piece(a, deg - 1, std::move(mods), std::move(diffs));
        out = direct_sum_complex(out, piece);
    }
    return out.trimmed();
}

std::vector<AlgebraPtr> suite_algebras() {
    auto a2 = truncated_poly(2, 2);
    return {a2, truncated_poly(3, 2), triangular(2, 2), triangular(3, 2),
            tensor_algebra(a2, a2), product_algebra(a2, triangular(2, 2))};
}

} // namespace homcx
