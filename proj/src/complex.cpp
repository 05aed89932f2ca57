#include "homcx/complex.hpp"

#include <algorithm>
#include <sstream>

namespace homcx {

// ---------------------------------------------------------------------------
// Complex
// ---------------------------------------------------------------------------

Complex::Complex() : Complex(trivial_algebra(2)) {}

Complex::Complex(AlgebraPtr algebra)
    : alg_(std::move(algebra)), lo_(0), hi_(-1), zero_(Module::zero(alg_)) {}

Complex::Complex(AlgebraPtr algebra, int lo, std::vector<Module> modules,
                 std::vector<Mat> diffs, bool validate)
    : alg_(std::move(algebra)), lo_(lo), hi_(lo + int(modules.size()) - 1),
      mods_(std::move(modules)), diffs_(std::move(diffs)), zero_(Module::zero(alg_)) {
    if (int(diffs_.size()) != std::max(0, int(mods_.size()) - 1))
        throw ShapeMismatch("complex needs one differential per adjacent pair");
    if (validate) validate_complex();
}

void Complex::validate_complex() const {
    for (const auto& m : mods_)
        if (!m.algebra()->structurally_equal(*alg_))
            throw AlgebraMismatch("complex module over a different algebra");
    for (std::size_t k = 0; k < diffs_.size(); ++k) {
        const Module& from = mods_[k + 1];
        const Module& to = mods_[k];
        ModMap d(from, to, diffs_[k]); // validates shape + intertwining
        (void)d;
    }
    for (std::size_t k = 0; k + 1 < diffs_.size(); ++k) {
        if (!(diffs_[k] * diffs_[k + 1]).is_zero())
            throw ValidationError("d o d != 0 at degree " + std::to_string(lo_ + int(k) + 2));
    }
}

Complex Complex::concentrated(const Module& m, int degree) {
    return Complex(m.algebra(), degree, {m}, {});
}

const Module& Complex::module_at(int n) const {
    if (n < lo_ || n > hi_) return zero_;
    return mods_[n - lo_];
}

Mat Complex::diff_at(int n) const {
    if (n > lo_ && n <= hi_) return diffs_[n - lo_ - 1];
    return Mat(alg_->p(), module_at(n - 1).dim(), module_at(n).dim());
}

ModMap Complex::diff_map(int n) const {
    return ModMap::unchecked(module_at(n), module_at(n - 1), diff_at(n));
}

std::optional<int> Complex::sup() const {
    for (int n = hi_; n >= lo_; --n)
        if (module_at(n).dim() > 0) return n;
    return std::nullopt;
}

std::optional<int> Complex::inf() const {
    for (int n = lo_; n <= hi_; ++n)
        if (module_at(n).dim() > 0) return n;
    return std::nullopt;
}

Complex Complex::trimmed() const {
    auto s = sup(), i = inf();
    if (!s) return Complex(alg_);
    std::vector<Module> mods(mods_.begin() + (*i - lo_), mods_.begin() + (*s - lo_ + 1));
    std::vector<Mat> diffs;
    for (int n = *i + 1; n <= *s; ++n) diffs.push_back(diff_at(n));
    return Complex(alg_, *i, std::move(mods), std::move(diffs), false);
}

bool Complex::structurally_equal(const Complex& o) const {
    Complex a = trimmed(), b = o.trimmed();
    if (a.lo_ != b.lo_ || a.hi_ != b.hi_) return false;
    for (int n = a.lo_; n <= a.hi_; ++n) {
        if (!a.module_at(n).structurally_equal(b.module_at(n))) return false;
        if (n > a.lo_ && a.diff_at(n) != b.diff_at(n)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// ChainMap
// ---------------------------------------------------------------------------

ChainMap::ChainMap(Complex source, Complex target, int degree,
                   std::map<int, Mat> components)
    : src_(std::make_shared<Complex>(std::move(source))),
      tgt_(std::make_shared<Complex>(std::move(target))),
      deg_(degree), comp_(std::move(components)) {
    for (auto& [i, m] : comp_) {
        const Module& from = src_->module_at(i);
        const Module& to = tgt_->module_at(i + deg_);
        ModMap check(from, to, m); // validates shape + intertwining
        (void)check;
    }
}

ChainMap ChainMap::zero(const Complex& source, const Complex& target, int degree) {
    return ChainMap(source, target, degree, {});
}

ChainMap ChainMap::identity(const Complex& c) {
    std::map<int, Mat> comp;
    for (int n = c.lo(); n <= c.hi(); ++n)
        comp[n] = Mat::identity(c.algebra()->p(), c.module_at(n).dim());
    return ChainMap(c, c, 0, std::move(comp));
}

Mat ChainMap::component(int i) const {
    auto it = comp_.find(i);
    if (it != comp_.end()) return it->second;
    return Mat(src_->algebra()->p(), tgt_->module_at(i + deg_).dim(),
               src_->module_at(i).dim());
}

void ChainMap::set_component(int i, Mat m) {
    const Module& from = src_->module_at(i);
    const Module& to = tgt_->module_at(i + deg_);
    ModMap check(from, to, m);
    (void)check;
    comp_[i] = std::move(m);
}

bool ChainMap::is_chain_map() const {
    int lo = std::min(src_->lo(), tgt_->lo() - deg_) - 1;
    int hi = std::max(src_->hi(), tgt_->hi() - deg_) + 1;
    bool odd = deg_ % 2 != 0;
    for (int i = lo; i <= hi; ++i) {
        Mat lhs = tgt_->diff_at(i + deg_) * component(i);
        Mat rhs = component(i - 1) * src_->diff_at(i);
        if (odd) rhs = rhs.negated();
        if (lhs != rhs) return false;
    }
    return true;
}

bool ChainMap::is_zero() const {
    for (const auto& [i, m] : comp_)
        if (!m.is_zero()) return false;
    return true;
}

ChainMap ChainMap::compose(const ChainMap& inner) const {
    std::map<int, Mat> comp;
    int lo = inner.src_->lo(), hi = inner.src_->hi();
    for (int i = lo; i <= hi; ++i) {
        Mat m = component(i + inner.deg_) * inner.component(i);
        if (!m.is_zero()) comp[i] = std::move(m);
    }
    return ChainMap(*inner.src_, *tgt_, deg_ + inner.deg_, std::move(comp));
}

ChainMap ChainMap::operator+(const ChainMap& o) const {
    std::map<int, Mat> comp;
    int lo = std::min(src_->lo(), o.src_->lo());
    int hi = std::max(src_->hi(), o.src_->hi());
    for (int i = lo; i <= hi; ++i) {
        Mat m = component(i) + o.component(i);
        if (!m.is_zero()) comp[i] = std::move(m);
    }
    return ChainMap(*src_, *tgt_, deg_, std::move(comp));
}

ChainMap ChainMap::operator-(const ChainMap& o) const {
    return *this + o.negated();
}

ChainMap ChainMap::negated() const {
    std::map<int, Mat> comp;
    for (const auto& [i, m] : comp_) comp[i] = m.negated();
    return ChainMap(*src_, *tgt_, deg_, std::move(comp));
}

ChainMap ChainMap::scaled(std::uint32_t c) const {
    std::map<int, Mat> comp;
    for (const auto& [i, m] : comp_) comp[i] = m.scaled(c);
    return ChainMap(*src_, *tgt_, deg_, std::move(comp));
}

// ---------------------------------------------------------------------------
// Elementary constructions
// ---------------------------------------------------------------------------

Complex shift(const Complex& c, int i) {
    if (c.window_empty()) return Complex(c.algebra());
    std::vector<Module> mods;
    std::vector<Mat> diffs;
    for (int n = c.lo(); n <= c.hi(); ++n) mods.push_back(c.module_at(n));
    bool odd = i % 2 != 0;
    for (int n = c.lo() + 1; n <= c.hi(); ++n) {
        Mat d = c.diff_at(n);
        diffs.push_back(odd ? d.negated() : d);
    }
    return Complex(c.algebra(), c.lo() + i, std::move(mods), std::move(diffs), false);
}

ChainMap shift_map(const ChainMap& f, int i) {
    std::map<int, Mat> comp;
    for (int n = f.source().lo(); n <= f.source().hi(); ++n) {
        Mat m = f.component(n);
        if (!m.is_zero()) comp[n + i] = std::move(m);
    }
    return ChainMap(shift(f.source(), i), shift(f.target(), i), f.degree(), std::move(comp));
}

ConeData cone(const ChainMap& t) {
    if (!t.is_morphism()) throw NotAMorphism("cone of a non-morphism");
    const Complex& m = t.source();
    const Complex& n = t.target();
    const auto& alg = m.algebra();
    const std::uint32_t p = alg->p();
    int lo = std::min(m.lo() + 1, n.lo());
    int hi = std::max(m.hi() + 1, n.hi());
    if (m.window_empty()) { lo = n.lo(); hi = n.hi(); }
    if (n.window_empty() && !m.window_empty()) { lo = m.lo() + 1; hi = m.hi() + 1; }

    std::vector<Module> mods;
    std::vector<Mat> diffs;
    std::vector<DirectSum> sums;
    for (int k = lo; k <= hi; ++k)
        sums.push_back(direct_sum(m.module_at(k - 1), n.module_at(k)));
    for (int k = lo; k <= hi; ++k) mods.push_back(sums[k - lo].module);
    for (int k = lo + 1; k <= hi; ++k) {
        int mprev = m.module_at(k - 2).dim(), nprev = n.module_at(k - 1).dim();
        int mcur = m.module_at(k - 1).dim(), ncur = n.module_at(k).dim();
        Mat d(p, mprev + nprev, mcur + ncur);
        d.paste(m.diff_at(k - 1).negated(), 0, 0);
        d.paste(t.component(k - 1).negated(), mprev, 0);
        d.paste(n.diff_at(k), mprev, mcur);
        diffs.push_back(std::move(d));
    }
    ConeData out{Complex(alg, lo, std::move(mods), std::move(diffs)), {}, {}, {}, {}};

    std::map<int, Mat> inj, proj, split_t, split_s;
    for (int k = lo; k <= hi; ++k) {
        const DirectSum& s = sums[k - lo];
        inj[k] = s.inj2.matrix();
        proj[k] = s.proj1.matrix();
        split_t[k] = s.proj2.matrix();
        split_s[k] = s.inj1.matrix();
    }
    out.from_target = ChainMap(n, out.cone, 0, std::move(inj));
    out.to_shifted = ChainMap(out.cone, shift(m, 1), 0, std::move(proj));
    out.split_to_target = std::move(split_t);
    out.split_from_shifted = std::move(split_s);
    check(out.from_target.is_morphism(), "cone injection not a morphism");
    check(out.to_shifted.is_morphism(), "cone projection not a morphism");
    return out;
}

Complex direct_sum_complex(const Complex& a, const Complex& b) {
    int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
    if (a.window_empty()) { lo = b.lo(); hi = b.hi(); }
    if (b.window_empty()) { lo = a.lo(); hi = a.hi(); }
    if (a.window_empty() && b.window_empty()) return Complex(a.algebra());
    std::vector<Module> mods;
    std::vector<Mat> diffs;
    for (int n = lo; n <= hi; ++n)
        mods.push_back(direct_sum(a.module_at(n), b.module_at(n)).module);
    for (int n = lo + 1; n <= hi; ++n)
        diffs.push_back(Mat::block_diag(a.diff_at(n), b.diff_at(n)));
    return Complex(a.algebra(), lo, std::move(mods), std::move(diffs), false);
}

Complex truncate_above(const Complex& c, int n) {
    if (c.window_empty() || n <= c.lo()) return c;
    if (n > c.hi()) return Complex(c.algebra());
    std::vector<Module> mods;
    std::vector<Mat> diffs;
    for (int k = n; k <= c.hi(); ++k) mods.push_back(c.module_at(k));
    for (int k = n + 1; k <= c.hi(); ++k) diffs.push_back(c.diff_at(k));
    return Complex(c.algebra(), n, std::move(mods), std::move(diffs), false);
}

Complex truncate_below(const Complex& c, int n) {
    if (c.window_empty() || n >= c.hi()) return c;
    if (n < c.lo()) return Complex(c.algebra());
    std::vector<Module> mods;
    std::vector<Mat> diffs;
    for (int k = c.lo(); k <= n; ++k) mods.push_back(c.module_at(k));
    for (int k = c.lo() + 1; k <= n; ++k) diffs.push_back(c.diff_at(k));
    return Complex(c.algebra(), c.lo(), std::move(mods), std::move(diffs), false);
}

// ---------------------------------------------------------------------------
// Homology
// ---------------------------------------------------------------------------

Homology::Homology(const Complex& c, int n) {
    const std::uint32_t p = c.algebra()->p();
    cycle_test_ = c.diff_at(n);
    Mat cycles = kernel_basis(cycle_test_);
    bnd_basis_ = column_space_basis(c.diff_at(n + 1));
    boundaries_ = bnd_basis_.basis;

    // reduce cycle representatives modulo boundaries, then canonicalize
    const int dim = c.module_at(n).dim();
    Mat sel(p, boundaries_.cols(), dim);
    for (int i = 0; i < boundaries_.cols(); ++i) sel(i, bnd_basis_.pivot_rows[i]) = 1;
    Mat reduce = Mat::identity(p, dim) - boundaries_ * sel;
    Mat reduced = reduce * cycles;
    rep_basis_ = column_space_basis(reduced);
    reps_ = rep_basis_.basis;
}

bool Homology::is_cycle(const Mat& v) const { return (cycle_test_ * v).is_zero(); }

Mat Homology::class_of(const Mat& cycle) const {
    if (!is_cycle(cycle)) throw ValidationError("class_of: not a cycle");
    const std::uint32_t p = cycle.p();
    Mat v = cycle;
    if (boundaries_.cols() > 0) {
        Mat coords = v.rows_selected(bnd_basis_.pivot_rows);
        v = v - boundaries_ * coords;
    }
    Mat out(p, reps_.cols(), 1);
    if (reps_.cols() > 0) out = v.rows_selected(rep_basis_.pivot_rows);
    if (reps_ * out != v) throw InternalCheckFailed("cycle class outside representative span");
    return out;
}

int homology_dim(const Complex& c, int n) { return Homology(c, n).dim(); }

std::map<int, int> homology_table(const Complex& c, int lo, int hi) {
    std::map<int, int> t;
    for (int n = lo; n <= hi; ++n) t[n] = homology_dim(c, n);
    return t;
}

bool is_exact(const Complex& c) {
    for (int n = c.lo(); n <= c.hi(); ++n)
        if (homology_dim(c, n) != 0) return false;
    return true;
}

Mat homology_map(const ChainMap& f, int n, const Homology& hn_src, const Homology& hn_tgt) {
    Mat out(f.component(n).p(), hn_tgt.dim(), hn_src.dim());
    for (int j = 0; j < hn_src.dim(); ++j) {
        Mat z = hn_src.representatives().col(j);
        out.set_col(j, hn_tgt.class_of(f.component(n) * z));
    }
    return out;
}

bool is_quasiiso(const ChainMap& f) {
    if (f.degree() != 0) return false;
    if (!f.is_chain_map()) return false;
    int lo = std::min(f.source().lo(), f.target().lo()) - 1;
    int hi = std::max(f.source().hi(), f.target().hi()) + 1;
    for (int n = lo; n <= hi; ++n) {
        Homology hs(f.source(), n), ht(f.target(), n);
        if (hs.dim() != ht.dim()) return false;
        Mat m = homology_map(f, n, hs, ht);
        if (!is_invertible(m)) return false;
    }
    return true;
}

QuotModule coker_at(const Complex& c, int n) {
    return cokernel(c.diff_map(n + 1));
}

// ---------------------------------------------------------------------------
// Hom complexes
// ---------------------------------------------------------------------------

AlgebraPtr trivial_algebra(std::uint32_t p) {
    static std::mutex mu;
    static std::map<std::uint32_t, AlgebraPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;
    AlgebraData d;
    d.p = p;
    d.dim = 1;
    d.basis_labels = {"1"};
    d.unit = {1};
    d.mul = {{{1}}};
    auto a = Algebra::make(std::move(d));
    cache[p] = a;
    return a;
}

namespace {

Module fp_space(std::uint32_t p, int dim) {
    auto triv = trivial_algebra(p);
    return Module(triv, {Mat::identity(p, dim)});
}

} // namespace

Mat HomComplex::pack(int n, const std::map<int, Mat>& components) const {
    const std::uint32_t p = complex.algebra()->p();
    Mat out(p, complex.module_at(n).dim(), 1);
    auto deg_slots = slots.find(n);
    if (deg_slots == slots.end()) {
        for (const auto& [i, m] : components)
            if (!m.is_zero()) throw ShapeMismatch("pack: nonzero component outside window");
        return out;
    }
    for (const auto& [i, hb] : deg_slots->second) {
        auto it = components.find(i);
        if (it == components.end()) continue;
        Mat coords = hb.coordinates(it->second);
        out.paste(coords, offsets.at(n).at(i), 0);
    }
    return out;
}

Mat HomComplex::unpack(int n, int i, const Mat& packed) const {
    const auto& hb = slots.at(n).at(i);
    Mat coords = packed.block(offsets.at(n).at(i), 0, hb.dim(), 1);
    return hb.map_of(coords);
}

HomComplex hom_complex(const Complex& m, const Complex& n, int lo, int hi) {
    const std::uint32_t p = m.algebra()->p();
    if (p != n.algebra()->p()) throw FieldMismatch("hom_complex over different primes");
    HomComplex out{Complex(trivial_algebra(p)), {}, {}};
    PrimeField fld(p);

    std::vector<Module> comps;
    for (int deg = lo; deg <= hi; ++deg) {
        int total = 0;
        for (int i = m.lo(); i <= m.hi(); ++i) {
            if (m.module_at(i).dim() == 0 || n.module_at(i + deg).dim() == 0) continue;
            HomBasis hb = hom_space(m.module_at(i), n.module_at(i + deg));
            out.offsets[deg][i] = total;
            total += hb.dim();
            out.slots[deg].emplace(i, std::move(hb));
        }
        comps.push_back(fp_space(p, total));
    }

    std::vector<Mat> diffs;
    for (int deg = lo + 1; deg <= hi; ++deg) {
        const int rows = comps[deg - 1 - lo].dim();
        const int cols = comps[deg - lo].dim();
        Mat d(p, rows, cols);
        bool odd = deg % 2 != 0;
        auto src_slots = out.slots.find(deg);
        if (src_slots != out.slots.end()) {
            for (const auto& [j, hb] : src_slots->second) {
                int coff = out.offsets[deg][j];
                for (int k = 0; k < hb.dim(); ++k) {
                    Mat b = hb.basis_map(k);
                    // target slot (deg-1, j): d^N o b
                    if (out.slots.count(deg - 1) && out.slots[deg - 1].count(j)) {
                        Mat comp = n.diff_at(j + deg) * b;
                        Mat coords = out.slots[deg - 1].at(j).coordinates(comp);
                        d.paste(coords, out.offsets[deg - 1][j], coff + k);
                    }
                    // target slot (deg-1, j+1): -(-1)^deg b o d^M
                    if (out.slots.count(deg - 1) && out.slots[deg - 1].count(j + 1)) {
                        Mat comp = b * m.diff_at(j + 1);
                        if (!odd) comp = comp.negated();
                        Mat coords = out.slots[deg - 1].at(j + 1).coordinates(comp);
                        d.paste(coords, out.offsets[deg - 1][j + 1], coff + k);
                    }
                }
            }
        }
        diffs.push_back(std::move(d));
    }
    out.complex = Complex(trivial_algebra(p), lo, std::move(comps), std::move(diffs));
    return out;
}

// ---------------------------------------------------------------------------
// Homotopies
// ---------------------------------------------------------------------------

std::optional<ChainMap> solve_homotopy(const ChainMap& f, const ChainMap& g) {
    if (f.degree() != g.degree())
        throw ShapeMismatch("homotopy between maps of different degrees");
    const Complex& m = f.source();
    const Complex& n = f.target();
    const int deg = f.degree();
    HomComplex hc = hom_complex(m, n, deg, deg + 1);

    std::map<int, Mat> rhs_comp;
    for (int i = m.lo(); i <= m.hi(); ++i) {
        Mat diff = f.component(i) - g.component(i);
        if (!diff.is_zero()) rhs_comp[i] = std::move(diff);
    }
    Mat rhs;
    try {
        rhs = hc.pack(deg, rhs_comp);
    } catch (const ShapeMismatch&) {
        return std::nullopt; // difference has a component no homotopy can reach
    }
    Mat d = hc.complex.diff_at(deg + 1);
    auto sol = solve(d, rhs);
    if (!sol) return std::nullopt;

    std::map<int, Mat> comp;
    if (hc.slots.count(deg + 1)) {
        for (const auto& [i, hb] : hc.slots.at(deg + 1)) {
            Mat k = hc.unpack(deg + 1, i, *sol);
            if (!k.is_zero()) comp[i] = std::move(k);
        }
    }
    return ChainMap(m, n, deg + 1, std::move(comp));
}

bool is_contractible(const Complex& c) {
    ChainMap id = ChainMap::identity(c);
    ChainMap zero = ChainMap::zero(c, c);
    return solve_homotopy(id, zero).has_value();
}

// ---------------------------------------------------------------------------
// Split exact sequences
// ---------------------------------------------------------------------------

Mat SplitSes::nu_prime_at(int i) const {
    auto it = nu_prime.find(i);
    if (it != nu_prime.end()) return it->second;
    return Mat(sub.algebra()->p(), sub.module_at(i).dim(), mid.module_at(i).dim());
}

Mat SplitSes::nu_doubleprime_at(int i) const {
    auto it = nu_doubleprime.find(i);
    if (it != nu_doubleprime.end()) return it->second;
    return Mat(sub.algebra()->p(), mid.module_at(i).dim(), quot.module_at(i).dim());
}

void SplitSes::validate() const {
    if (!mu.is_morphism() || !mu_prime.is_morphism())
        throw SplittingInvalid("structure maps are not morphisms");
    int lo = std::min({sub.lo(), mid.lo(), quot.lo()});
    int hi = std::max({sub.hi(), mid.hi(), quot.hi()});
    for (int i = lo; i <= hi; ++i) {
        int dm = sub.module_at(i).dim(), dmm = mid.module_at(i).dim(),
            dq = quot.module_at(i).dim();
        if (dm + dq != dmm)
            throw InputNotExact("dimension mismatch at degree " + std::to_string(i));
        Mat mu_i = mu.component(i), mup_i = mu_prime.component(i);
        if (rank(mu_i) != dm || rank(mup_i) != dq || !(mup_i * mu_i).is_zero())
            throw InputNotExact("sequence not exact at degree " + std::to_string(i));
        Mat np = nu_prime_at(i), ns = nu_doubleprime_at(i);
        const std::uint32_t p = sub.algebra()->p();
        bool ok = (np * ns).is_zero() && (mup_i * ns).is_identity() &&
                  (np * mu_i).is_identity() &&
                  (ns * mup_i + mu_i * np) == Mat::identity(p, dmm);
        if (!ok) throw SplittingInvalid("splitting identities fail at degree " + std::to_string(i));
    }
}

SplitSes make_split_ses(const ChainMap& mu, const ChainMap& mu_prime) {
    const Complex& sub = mu.source();
    const Complex& mid = mu.target();
    const Complex& quot = mu_prime.target();
    SplitSes ses{sub, mid, quot, mu, mu_prime, {}, {}};

    int lo = std::min({sub.lo(), mid.lo(), quot.lo()});
    int hi = std::max({sub.hi(), mid.hi(), quot.hi()});
    for (int i = lo; i <= hi; ++i) {
        const Module& q = quot.module_at(i);
        const Module& md = mid.module_at(i);
        const Module& sb = sub.module_at(i);
        if (q.dim() == 0 && md.dim() == 0) continue;
        // module-linear section of mu': solve within Hom(quot_i, mid_i)
        HomBasis hb = hom_space(q, md);
        const std::uint32_t p = q.algebra()->p();
        Mat sys(p, q.dim() * q.dim(), hb.dim());
        for (int k = 0; k < hb.dim(); ++k)
            sys.set_col(k, (mu_prime.component(i) * hb.basis_map(k)).vectorized());
        Mat rhs = Mat::identity(p, q.dim()).vectorized();
        auto coords = solve(sys, rhs);
        if (!coords)
            throw SplittingInvalid("no module-linear section at degree " + std::to_string(i));
        Mat ns = hb.map_of(*coords);
        // nu' is the unique solution of mu o nu' = id - nu'' mu'
        Mat target = Mat::identity(p, md.dim()) - ns * mu_prime.component(i);
        auto np = solve(mu.component(i), target);
        if (!np)
            throw SplittingInvalid("no retraction at degree " + std::to_string(i));
        ses.nu_doubleprime[i] = std::move(ns);
        ses.nu_prime[i] = std::move(*np);
    }
    ses.validate();
    return ses;
}

ChainMap theta(const SplitSes& ses) {
    Complex shifted = shift(ses.sub, 1);
    std::map<int, Mat> comp;
    int lo = ses.quot.lo(), hi = ses.quot.hi();
    for (int i = lo; i <= hi; ++i) {
        Mat t = ses.nu_prime_at(i - 1) * ses.mid.diff_at(i) * ses.nu_doubleprime_at(i);
        if (!t.is_zero()) comp[i] = std::move(t);
    }
    ChainMap th(ses.quot, shifted, 0, std::move(comp));
    check(th.is_morphism(), "theta is not a morphism");
    return th;
}

Mat connecting_hom_first_arg(const SplitSes& ses, const Complex& n_cx, int n,
                             const HomComplex& hom_sub, const HomComplex& hom_quot) {
    ChainMap th = theta(ses);
    Homology h_src(hom_sub.complex, 1 - n);   // H^{n-1}(Hom(M, N))
    Homology h_tgt(hom_quot.complex, -n);     // H^n(Hom(M'', N))
    const std::uint32_t p = n_cx.algebra()->p();
    Mat out(p, h_tgt.dim(), h_src.dim());
    for (int col = 0; col < h_src.dim(); ++col) {
        Mat packed = h_src.representatives().col(col);
        // kappa_i: M_i -> N_{i+1-n}; image xi_i = kappa_{i-1} o theta_i
        std::map<int, Mat> image;
        for (int i = ses.quot.lo(); i <= ses.quot.hi(); ++i) {
            if (!hom_quot.slots.count(-n) || !hom_quot.slots.at(-n).count(i)) continue;
            Mat theta_i = th.component(i);
            Mat kappa_prev;
            if (hom_sub.slots.count(1 - n) && hom_sub.slots.at(1 - n).count(i - 1))
                kappa_prev = hom_sub.unpack(1 - n, i - 1, packed);
            else
                kappa_prev = Mat(p, n_cx.module_at(i - n).dim(), ses.sub.module_at(i - 1).dim());
            Mat xi = kappa_prev * theta_i;
            if (!xi.is_zero()) image[i] = std::move(xi);
        }
        Mat packed_img = hom_quot.pack(-n, image);
        Mat cls = h_tgt.class_of(packed_img);
        out.set_col(col, cls);
    }
    if (n % 2 != 0) out = out.negated();
    return out;
}

ChainMap hom_induced_first(const ChainMap& f, const Complex& n_cx,
                           const HomComplex& hom_b, const HomComplex& hom_a) {
    (void)n_cx;
    const Complex& hb = hom_b.complex;
    const Complex& ha = hom_a.complex;
    const std::uint32_t p = hb.algebra()->p();
    std::map<int, Mat> comp;
    for (int deg = hb.lo(); deg <= hb.hi(); ++deg) {
        if (deg < ha.lo() || deg > ha.hi()) continue;
        Mat m(p, ha.module_at(deg).dim(), hb.module_at(deg).dim());
        if (hom_b.slots.count(deg)) {
            for (const auto& [j, slot] : hom_b.slots.at(deg)) {
                for (int k = 0; k < slot.dim(); ++k) {
                    Mat phi = slot.basis_map(k);
                    // (phi o f)_i = phi_i f_i, only slot i = j contributes
                    if (hom_a.slots.count(deg) && hom_a.slots.at(deg).count(j)) {
                        Mat comp_map = phi * f.component(j);
                        Mat coords = hom_a.slots.at(deg).at(j).coordinates(comp_map);
                        m.paste(coords, hom_a.offsets.at(deg).at(j),
                                hom_b.offsets.at(deg).at(j) + k);
                    }
                }
            }
        }
        if (!m.is_zero()) comp[deg] = std::move(m);
    }
    return ChainMap(hb, ha, 0, std::move(comp));
}

ChainMap hom_induced_second(const Complex& m, const ChainMap& g,
                            const HomComplex& hom_a, const HomComplex& hom_b) {
    const Complex& ha = hom_a.complex;
    const Complex& hb = hom_b.complex;
    const std::uint32_t p = ha.algebra()->p();
    std::map<int, Mat> comp;
    for (int deg = ha.lo(); deg <= ha.hi(); ++deg) {
        if (deg < hb.lo() || deg > hb.hi()) continue;
        Mat out(p, hb.module_at(deg).dim(), ha.module_at(deg).dim());
        if (hom_a.slots.count(deg)) {
            for (const auto& [j, slot] : hom_a.slots.at(deg)) {
                for (int k = 0; k < slot.dim(); ++k) {
                    Mat phi = slot.basis_map(k);
                    if (hom_b.slots.count(deg) && hom_b.slots.at(deg).count(j)) {
                        Mat comp_map = g.component(j + deg) * phi;
                        Mat coords = hom_b.slots.at(deg).at(j).coordinates(comp_map);
                        out.paste(coords, hom_b.offsets.at(deg).at(j),
                                  hom_a.offsets.at(deg).at(j) + k);
                    }
                }
            }
        }
        if (!out.is_zero()) comp[deg] = std::move(out);
    }
    return ChainMap(ha, hb, 0, std::move(comp));
    (void)m;
}

// ---------------------------------------------------------------------------
// Cone factorization
// ---------------------------------------------------------------------------

ConeFactorization factor_through_cone(const ChainMap& f) {
    if (!f.is_morphism()) throw NotAMorphism("factor_through_cone needs a morphism");
    const Complex& m = f.source();
    const Complex& n = f.target();
    const std::uint32_t p = m.algebra()->p();

    Complex desus = shift(n, -1);
    ConeData cd = cone(ChainMap::identity(desus));
    const Complex& d = cd.cone; // D_k = N_k (+) N_{k+1}, contractible

    Complex through = direct_sum_complex(m, d);
    int lo = through.lo(), hi = through.hi();

    std::map<int, Mat> mu_c, surj_c, inv_c;
    for (int k = lo; k <= hi; ++k) {
        int md = m.module_at(k).dim();
        int dd = d.module_at(k).dim();
        int nd = n.module_at(k).dim();
        Mat mu(p, md + dd, md);
        mu.paste(Mat::identity(p, md), 0, 0);
        if (!mu.is_zero()) mu_c[k] = std::move(mu);
        Mat inv(p, md, md + dd);
        inv.paste(Mat::identity(p, md), 0, 0);
        if (!inv.is_zero()) inv_c[k] = std::move(inv);
        // surjection: f on the M part, projection to N_k on the cone part
        Mat s(p, nd, md + dd);
        s.paste(f.component(k), 0, 0);
        if (nd > 0) s.paste(Mat::identity(p, nd), 0, md); // D_k = N_k (+) N_{k+1}
        if (!s.is_zero()) surj_c[k] = std::move(s);
    }
    ConeFactorization out{through,
                          ChainMap(m, through, 0, std::move(mu_c)),
                          ChainMap(through, n, 0, std::move(surj_c)),
                          ChainMap(through, m, 0, std::move(inv_c))};
    check(out.mu.is_morphism(), "cone factorization: mu not a morphism");
    check(out.surjection.is_morphism(), "cone factorization: surjection not a morphism");
    check(out.mu_inverse.is_morphism(), "cone factorization: retraction not a morphism");
    for (int k = n.lo(); k <= n.hi(); ++k)
        check(rank(out.surjection.component(k)) == n.module_at(k).dim(),
              "cone factorization not degreewise surjective");
    return out;
}

} // namespace homcx
