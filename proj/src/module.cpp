#include "homcx/module.hpp"

#include <algorithm>

namespace homcx {

// ---------------------------------------------------------------------------
// Module
// ---------------------------------------------------------------------------

Module::Module(AlgebraPtr algebra, std::vector<Mat> action)
    : alg_(std::move(algebra)), action_(std::move(action)) {
    const int d = alg_->dim();
    if (int(action_.size()) != d)
        throw ShapeMismatch("module needs one action matrix per basis element");
    dim_ = action_.empty() ? 0 : action_[0].rows();
    for (const auto& a : action_) {
        if (a.rows() != dim_ || a.cols() != dim_ || a.p() != alg_->p())
            throw ShapeMismatch("action matrix shape/field mismatch");
        for (auto v : a.data())
            if (v >= alg_->p()) throw ValidationError("non-canonical residue in action");
    }
    if (!action_of(alg_->unit()).is_identity())
        throw ValidationError("unit does not act as identity");
    PrimeField f(alg_->p());
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Mat want(alg_->p(), dim_, dim_);
            const auto& coords = alg_->mul(i, j);
            for (int k = 0; k < d; ++k)
                if (coords[k] != 0) want = want + action_[k].scaled(coords[k]);
            if (action_[i] * action_[j] != want)
                throw ValidationError("action does not respect structure constants at (" +
                                      std::to_string(i) + "," + std::to_string(j) + ")");
        }
}

Module Module::zero(AlgebraPtr algebra) {
    std::vector<Mat> act(algebra->dim(), Mat(algebra->p(), 0, 0));
    return Module(std::move(algebra), std::move(act));
}

Mat Module::action_of(const std::vector<std::uint32_t>& coords) const {
    Mat m(alg_->p(), dim_, dim_);
    for (int i = 0; i < alg_->dim(); ++i)
        if (coords[i] != 0) m = m + action_[i].scaled(coords[i]);
    return m;
}

// ---------------------------------------------------------------------------
// ModMap
// ---------------------------------------------------------------------------

ModMap::ModMap(Module domain, Module codomain, Mat matrix)
    : dom_(std::move(domain)), cod_(std::move(codomain)), mat_(std::move(matrix)) {
    if (!dom_.algebra()->structurally_equal(*cod_.algebra()))
        throw AlgebraMismatch("map between modules over different algebras");
    if (mat_.rows() != cod_.dim() || mat_.cols() != dom_.dim())
        throw ShapeMismatch("map matrix " + mat_.shape() + " for " +
                            std::to_string(dom_.dim()) + " -> " + std::to_string(cod_.dim()));
    if (!is_intertwining())
        throw ValidationError("matrix does not intertwine the actions");
}

ModMap ModMap::unchecked(Module domain, Module codomain, Mat matrix) {
    ModMap m;
    m.dom_ = std::move(domain);
    m.cod_ = std::move(codomain);
    m.mat_ = std::move(matrix);
    return m;
}

bool ModMap::is_intertwining() const {
    for (int i = 0; i < dom_.algebra()->dim(); ++i)
        if (mat_ * dom_.action(i) != cod_.action(i) * mat_) return false;
    return true;
}

ModMap ModMap::zero(const Module& domain, const Module& codomain) {
    return unchecked(domain, codomain, Mat(domain.algebra()->p(), codomain.dim(), domain.dim()));
}

ModMap ModMap::identity(const Module& m) {
    return unchecked(m, m, Mat::identity(m.algebra()->p(), m.dim()));
}

ModMap ModMap::compose(const ModMap& inner) const {
    if (inner.cod_.dim() != dom_.dim())
        throw ShapeMismatch("composition dimension mismatch");
    return unchecked(inner.dom_, cod_, mat_ * inner.mat_);
}

ModMap ModMap::operator+(const ModMap& o) const {
    return unchecked(dom_, cod_, mat_ + o.mat_);
}
ModMap ModMap::operator-(const ModMap& o) const {
    return unchecked(dom_, cod_, mat_ - o.mat_);
}
ModMap ModMap::negated() const { return unchecked(dom_, cod_, mat_.negated()); }

// ---------------------------------------------------------------------------
// Standard modules
// ---------------------------------------------------------------------------

Module regular_module(const AlgebraPtr& a) {
    std::vector<Mat> act;
    act.reserve(a->dim());
    for (int i = 0; i < a->dim(); ++i) act.push_back(a->left_mult(i));
    return Module(a, std::move(act));
}

Module free_module(const AlgebraPtr& a, int r) {
    if (r < 0) throw ShapeMismatch("negative free rank");
    if (r == 0) return Module::zero(a);
    std::vector<Mat> act;
    act.reserve(a->dim());
    for (int i = 0; i < a->dim(); ++i) {
        Mat left = a->left_mult(i);
        Mat block = left;
        for (int j = 1; j < r; ++j) block = Mat::block_diag(block, left);
        act.push_back(std::move(block));
    }
    return Module(a, std::move(act));
}

Mat free_generators(const AlgebraPtr& a, int r) {
    const int d = a->dim();
    Mat g(a->p(), r * d, r);
    for (int j = 0; j < r; ++j)
        for (int c = 0; c < d; ++c) g(j * d + c, j) = a->unit()[c];
    return g;
}

Mat free_map_from_generators(const AlgebraPtr& a, const Module& target,
                             const Mat& gen_values) {
    const int d = a->dim();
    const int r = gen_values.cols();
    Mat m(a->p(), target.dim(), r * d);
    for (int j = 0; j < r; ++j) {
        Mat x = gen_values.col(j);
        for (int c = 0; c < d; ++c) m.paste(target.action(c) * x, 0, j * d + c);
    }
    return m;
}

// ---------------------------------------------------------------------------
// Kernels, cokernels, images
// ---------------------------------------------------------------------------

namespace {

/// Induced action on a submodule spanned by reduced basis columns whose
/// coordinates can be read off unit_rows.
Module submodule_on_basis(const Module& ambient, const Mat& basis,
                          const std::vector<int>& unit_rows) {
    std::vector<Mat> act;
    act.reserve(ambient.algebra()->dim());
    for (int i = 0; i < ambient.algebra()->dim(); ++i) {
        Mat moved = ambient.action(i) * basis;
        Mat coords = moved.rows_selected(unit_rows);
        if (basis * coords != moved)
            throw InternalCheckFailed("span not closed under action");
        act.push_back(std::move(coords));
    }
    return Module(ambient.algebra(), std::move(act));
}

} // namespace

SubModule kernel(const ModMap& f) {
    KerBasis kb = kernel_basis_full(f.matrix());
    Module sub = submodule_on_basis(f.domain(), kb.basis, kb.unit_rows);
    ModMap incl(sub, f.domain(), kb.basis);
    return SubModule{std::move(sub), std::move(incl)};
}

SubModule image(const ModMap& f) {
    ColBasis cb = column_space_basis(f.matrix());
    Module sub = submodule_on_basis(f.codomain(), cb.basis, cb.pivot_rows);
    ModMap incl(sub, f.codomain(), cb.basis);
    return SubModule{std::move(sub), std::move(incl)};
}

QuotModule cokernel(const ModMap& f) {
    const Module& n = f.codomain();
    ColBasis cb = column_space_basis(f.matrix());
    const int ndim = n.dim(), r = cb.basis.cols();
    std::vector<bool> is_pivot(ndim, false);
    for (int pr : cb.pivot_rows) is_pivot[pr] = true;
    std::vector<int> rest;
    for (int i = 0; i < ndim; ++i)
        if (!is_pivot[i]) rest.push_back(i);

    // projection: reduce modulo the image, then read off non-pivot rows
    Mat sel_p(n.algebra()->p(), r, ndim);
    for (int i = 0; i < r; ++i) sel_p(i, cb.pivot_rows[i]) = 1;
    Mat reduce = Mat::identity(n.algebra()->p(), ndim) - cb.basis * sel_p;
    Mat proj = reduce.rows_selected(rest);

    // section: representatives of the quotient basis
    Mat section(n.algebra()->p(), ndim, int(rest.size()));
    for (int j = 0; j < int(rest.size()); ++j) section(rest[j], j) = 1;

    std::vector<Mat> act;
    act.reserve(n.algebra()->dim());
    for (int i = 0; i < n.algebra()->dim(); ++i)
        act.push_back(proj * n.action(i) * section);
    Module quot(n.algebra(), std::move(act));
    ModMap projection(n, quot, proj);
    return QuotModule{std::move(quot), std::move(projection)};
}

// ---------------------------------------------------------------------------
// Hom spaces
// ---------------------------------------------------------------------------

HomBasis::HomBasis(Module m, Module n, Mat flat_basis)
    : m_(std::move(m)), n_(std::move(n)), flat_(std::move(flat_basis)) {
    // unit rows: reduced kernel basis structure, one unit coordinate per column
    const int k = flat_.cols();
    free_idx_.assign(k, -1);
    std::vector<int> count(flat_.rows(), 0);
    for (int r = 0; r < flat_.rows(); ++r)
        for (int j = 0; j < k; ++j)
            if (flat_(r, j) != 0) ++count[r];
    for (int j = 0; j < k; ++j) {
        for (int r = 0; r < flat_.rows(); ++r) {
            if (flat_(r, j) == 1 && count[r] == 1) { free_idx_[j] = r; break; }
        }
        if (free_idx_[j] < 0) throw InternalCheckFailed("hom basis not in reduced form");
    }
}

Mat HomBasis::basis_map(int k) const {
    return Mat::from_vectorized(flat_.col(k), n_.dim(), m_.dim());
}

Mat HomBasis::coordinates(const Mat& map) const {
    Mat v = map.vectorized();
    Mat coords(v.p(), dim(), 1);
    for (int j = 0; j < dim(); ++j) coords(j, 0) = v(free_idx_[j], 0);
    if (flat_ * coords != v)
        throw ValidationError("map outside the hom space");
    return coords;
}

Mat HomBasis::map_of(const Mat& coords) const {
    return Mat::from_vectorized(flat_ * coords, n_.dim(), m_.dim());
}

HomBasis hom_space(const Module& m, const Module& n) {
    if (!m.algebra()->structurally_equal(*n.algebra()))
        throw AlgebraMismatch("hom_space over different algebras");
    const std::uint32_t p = m.algebra()->p();
    const int dm = m.dim(), dn = n.dim(), d = m.algebra()->dim();
    // unknown X is dn x dm, vectorized row-major; constraints X A_t = B_t X
    const int unknowns = dn * dm;
    Mat sys(p, d * unknowns, unknowns);
    PrimeField f(p);
    int row = 0;
    for (int t = 0; t < d; ++t) {
        const Mat& a = m.action(t);
        const Mat& b = n.action(t);
        for (int i = 0; i < dn; ++i)
            for (int j = 0; j < dm; ++j) {
                for (int c = 0; c < dm; ++c)
                    sys(row, i * dm + c) = f.add(sys(row, i * dm + c), a(c, j));
                for (int r = 0; r < dn; ++r)
                    sys(row, r * dm + j) = f.sub(sys(row, r * dm + j), b(i, r));
                ++row;
            }
    }
    Mat basis = kernel_basis(sys);
    return HomBasis(m, n, std::move(basis));
}

// ---------------------------------------------------------------------------
// Covers and projectivity
// ---------------------------------------------------------------------------

namespace {

/// Incrementally growing column span with membership tests.
class Span {
public:
    Span(std::uint32_t p, int dim) : basis_(p, dim, 0) {}

    bool contains(const Mat& v) const {
        if (basis_.cols() == 0) return v.is_zero();
        return rank(Mat::hstack(basis_, v)) == basis_.cols();
    }
    /// Adds v if independent; returns true when the span grew.
    bool add(const Mat& v) {
        if (contains(v)) return false;
        basis_ = Mat::hstack(basis_, v);
        return true;
    }
    int dim() const { return basis_.cols(); }

private:
    Mat basis_;
};

} // namespace

FreeCover free_cover(const Module& m, CoverStrategy strategy) {
    const auto& a = m.algebra();
    std::vector<int> kept;
    if (strategy == CoverStrategy::AllBasis) {
        for (int b = 0; b < m.dim(); ++b) kept.push_back(b);
    } else {
        Span span(a->p(), m.dim());
        for (int b = 0; b < m.dim(); ++b) {
            Mat eb(a->p(), m.dim(), 1);
            eb(b, 0) = 1;
            if (span.contains(eb)) continue;
            kept.push_back(b);
            // close the span under the action
            std::vector<Mat> queue{eb};
            span.add(eb);
            while (!queue.empty()) {
                Mat v = queue.back();
                queue.pop_back();
                for (int i = 0; i < a->dim(); ++i) {
                    Mat w = m.action(i) * v;
                    if (span.add(w)) queue.push_back(w);
                }
            }
        }
    }
    Mat gens(a->p(), m.dim(), int(kept.size()));
    for (int j = 0; j < int(kept.size()); ++j) gens(kept[j], j) = 1;
    Module free = free_module(a, int(kept.size()));
    Mat proj_mat = free_map_from_generators(a, m, gens);
    ModMap proj(free, m, proj_mat);
    if (rank(proj_mat) != m.dim())
        throw InternalCheckFailed("free cover not surjective");
    SubModule ker = kernel(proj);
    return FreeCover{std::move(free), std::move(proj), std::move(ker), std::move(kept)};
}

ProjectivityWitness is_projective(const Module& m) {
    FreeCover cover = free_cover(m);
    const std::uint32_t p = m.algebra()->p();
    const int n = cover.free.dim(), md = m.dim(), d = m.algebra()->dim();
    const int unknowns = n * md;
    PrimeField f(p);
    // rows: intertwining constraints then the section equation pi o s = id
    Mat sys(p, d * unknowns + md * md, unknowns);
    Mat rhs(p, d * unknowns + md * md, 1);
    int row = 0;
    for (int t = 0; t < d; ++t) {
        const Mat& am = m.action(t);
        const Mat& af = cover.free.action(t);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < md; ++j) {
                for (int c = 0; c < md; ++c)
                    sys(row, i * md + c) = f.add(sys(row, i * md + c), am(c, j));
                for (int r = 0; r < n; ++r)
                    sys(row, r * md + j) = f.sub(sys(row, r * md + j), af(i, r));
                ++row;
            }
    }
    const Mat& pi = cover.projection.matrix();
    for (int i = 0; i < md; ++i)
        for (int j = 0; j < md; ++j) {
            for (int r = 0; r < n; ++r)
                sys(row, r * md + j) = f.add(sys(row, r * md + j), pi(i, r));
            rhs(row, 0) = (i == j) ? 1 : 0;
            ++row;
        }
    auto sol = solve(sys, rhs);
    ProjectivityWitness w;
    w.projection = cover.projection;
    if (!sol) {
        w.projective = false;
        w.section = ModMap::zero(m, cover.free);
        return w;
    }
    Mat s = Mat::from_vectorized(*sol, n, md);
    w.section = ModMap(m, cover.free, s);
    check((pi * s).is_identity(), "projectivity witness fails pi o s = id");
    w.projective = true;
    return w;
}

// ---------------------------------------------------------------------------
// Duality
// ---------------------------------------------------------------------------

Module linear_dual(const Module& m) {
    auto op = opposite(m.algebra());
    std::vector<Mat> act;
    act.reserve(op->dim());
    for (int i = 0; i < op->dim(); ++i) act.push_back(m.action(i).transposed());
    return Module(op, std::move(act));
}

ModMap linear_dual_map(const ModMap& f, const Module& dual_cod, const Module& dual_dom) {
    return ModMap(dual_cod, dual_dom, f.matrix().transposed());
}

StarDual star_dual(const Module& m, const AlgebraPtr& op_algebra) {
    Module reg = regular_module(m.algebra());
    HomBasis hb = hom_space(m, reg);
    const int k = hb.dim();
    std::vector<Mat> act;
    act.reserve(op_algebra->dim());
    for (int i = 0; i < op_algebra->dim(); ++i) {
        Mat right = m.algebra()->right_mult(i);
        Mat a(m.algebra()->p(), k, k);
        for (int j = 0; j < k; ++j)
            a.set_col(j, hb.coordinates(right * hb.basis_map(j)));
        act.push_back(std::move(a));
    }
    Module dual(op_algebra, std::move(act));
    return StarDual{std::move(dual), std::move(hb)};
}

Biduality biduality(const Module& m) {
    auto op = opposite(m.algebra());
    Biduality b{star_dual(m, op), StarDual{}, ModMap{}};
    b.double_star = star_dual(b.star.dual, m.algebra());
    const int k = b.star.hom.dim();
    Mat eval(m.algebra()->p(), b.double_star.dual.dim(), m.dim());
    for (int c = 0; c < m.dim(); ++c) {
        Mat x(m.algebra()->p(), m.dim(), 1);
        x(c, 0) = 1;
        Mat fx(m.algebra()->p(), m.algebra()->dim(), k);
        for (int j = 0; j < k; ++j) fx.set_col(j, b.star.hom.basis_map(j) * x);
        eval.set_col(c, b.double_star.hom.coordinates(fx));
    }
    b.eval = ModMap(m, b.double_star.dual, eval);
    return b;
}

ModMap star_dual_map(const ModMap& f, const StarDual& dual_of_codomain,
                     const StarDual& dual_of_domain) {
    const int k = dual_of_codomain.hom.dim();
    Mat out(f.matrix().p(), dual_of_domain.hom.dim(), k);
    for (int j = 0; j < k; ++j) {
        Mat composed = dual_of_codomain.hom.basis_map(j) * f.matrix();
        out.set_col(j, dual_of_domain.hom.coordinates(composed));
    }
    return ModMap(dual_of_codomain.dual, dual_of_domain.dual, out);
}

DirectSum direct_sum(const Module& a, const Module& b) {
    if (!a.algebra()->structurally_equal(*b.algebra()))
        throw AlgebraMismatch("direct sum over different algebras");
    std::vector<Mat> act;
    act.reserve(a.algebra()->dim());
    for (int i = 0; i < a.algebra()->dim(); ++i)
        act.push_back(Mat::block_diag(a.action(i), b.action(i)));
    Module sum(a.algebra(), std::move(act));
    const std::uint32_t p = a.algebra()->p();
    Mat i1(p, sum.dim(), a.dim()), i2(p, sum.dim(), b.dim());
    Mat p1(p, a.dim(), sum.dim()), p2(p, b.dim(), sum.dim());
    for (int i = 0; i < a.dim(); ++i) { i1(i, i) = 1; p1(i, i) = 1; }
    for (int i = 0; i < b.dim(); ++i) { i2(a.dim() + i, i) = 1; p2(i, a.dim() + i) = 1; }
    return DirectSum{sum,
                     ModMap::unchecked(a, sum, i1), ModMap::unchecked(b, sum, i2),
                     ModMap::unchecked(sum, a, p1), ModMap::unchecked(sum, b, p2)};
}

} // namespace homcx
