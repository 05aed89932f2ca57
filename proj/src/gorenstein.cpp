#include "homcx/gorenstein.hpp"

#include <mutex>

namespace homcx {

// ---------------------------------------------------------------------------
// Module-map solving in hom coordinates (echelon-minimal, deterministic)
// ---------------------------------------------------------------------------

namespace {

/// Least solution X: from -> to with X * precompose = rhs; nullopt if none.
std::optional<Mat> solve_postfactor(const Module& from, const Module& to,
                                    const Mat& precompose, const Mat& rhs) {
    HomBasis hb = hom_space(from, to);
    const std::uint32_t p = from.algebra()->p();
    const int rows = to.dim() * precompose.cols();
    Mat sys(p, rows, hb.dim());
    for (int k = 0; k < hb.dim(); ++k)
        sys.set_col(k, (hb.basis_map(k) * precompose).vectorized());
    auto coords = solve(sys, rhs.vectorized());
    if (!coords) return std::nullopt;
    return hb.map_of(*coords);
}

/// Least solution X: from -> to with postcompose * X = rhs; nullopt if none.
std::optional<Mat> solve_prefactor(const Module& from, const Module& to,
                                   const Mat& postcompose, const Mat& rhs) {
    HomBasis hb = hom_space(from, to);
    const std::uint32_t p = from.algebra()->p();
    const int rows = postcompose.rows() * from.dim();
    Mat sys(p, rows, hb.dim());
    for (int k = 0; k < hb.dim(); ++k)
        sys.set_col(k, (postcompose * hb.basis_map(k)).vectorized());
    auto coords = solve(sys, rhs.vectorized());
    if (!coords) return std::nullopt;
    return hb.map_of(*coords);
}

Complex regular_complex(const AlgebraPtr& a) {
    return Complex::concentrated(regular_module(a), 0);
}

} // namespace

std::optional<Mat> solve_map_precompose(const Module& from, const Module& to,
                                        const Mat& precompose, const Mat& rhs) {
    return solve_postfactor(from, to, precompose, rhs);
}

std::optional<Mat> solve_map_postcompose(const Module& from, const Module& to,
                                         const Mat& postcompose, const Mat& rhs) {
    return solve_prefactor(from, to, postcompose, rhs);
}

// ---------------------------------------------------------------------------
// Ext against the regular module, Gorenstein certificates
// ---------------------------------------------------------------------------

std::vector<int> ext_against_regular(const Module& m, int imax) {
    std::vector<int> dims(std::size_t(imax) + 1, 0);
    if (m.is_zero() || imax < 1) return dims;
    Resolution r = free_resolution(m, imax + 1);
    HomComplex hc = hom_complex(r.p_slice(0, imax + 1), regular_complex(m.algebra()),
                                -(imax + 1), 0);
    for (int i = 1; i <= imax; ++i) dims[i] = homology_dim(hc.complex, -i);
    return dims;
}

int hom_regular_dim(const Module& m) {
    return hom_space(m, regular_module(m.algebra())).dim();
}

namespace {

/// pd of a module within the bound; nullopt when no projective syzygy found.
std::optional<int> bounded_pd(const Module& m, int bound) {
    if (m.is_zero()) return kNegInfinity;
    Resolution r = free_resolution(m, 1);
    for (int p = 0; p <= bound; ++p) {
        if (is_projective(syzygy(r, p)).projective) return p;
    }
    return std::nullopt;
}

} // namespace

std::optional<GorensteinCertificate> gorenstein_dimension(const AlgebraPtr& a, int bound) {
    // idim of the left regular module = pd of its linear dual over A^op
    Module left_dual = linear_dual(regular_module(a));
    auto n_left = bounded_pd(left_dual, bound);
    if (!n_left) return std::nullopt;
    // idim of the right regular module = pd over A of its linear dual
    std::vector<Mat> act;
    for (int i = 0; i < a->dim(); ++i) act.push_back(a->right_mult(i).transposed());
    Module right_dual(a, std::move(act));
    auto n_right = bounded_pd(right_dual, bound);
    if (!n_right) return std::nullopt;
    return GorensteinCertificate{a, *n_left, *n_right};
}

bool is_gorenstein_projective(const Module& m, const GorensteinCertificate& cert) {
    if (m.is_zero()) return true;
    auto dims = ext_against_regular(m, cert.n());
    for (int i = 1; i <= cert.n(); ++i)
        if (dims[i] != 0) return false;
    return true;
}

int gpd_of_resolution(const Resolution& res, const GorensteinCertificate& cert) {
    if (res.is_zero_resolution()) return kNegInfinity;
    const Complex& m = res.target();
    int sup_h = m.lo() - 1;
    for (int n = m.lo(); n <= m.hi(); ++n)
        if (homology_dim(m, n) > 0) sup_h = n;
    if (sup_h < m.lo()) return kNegInfinity;
    for (int g = sup_h; g <= sup_h + cert.n(); ++g) {
        if (is_gorenstein_projective(syzygy(res, g), cert)) return g;
    }
    throw CertificateViolated("no Gorenstein projective syzygy within the certified range");
}

int gpd_complex(const Complex& m, const GorensteinCertificate& cert) {
    Resolution r(m);
    return gpd_of_resolution(r, cert);
}

int gpd_module(const Module& m, const GorensteinCertificate& cert) {
    if (m.is_zero()) return kNegInfinity;
    Resolution r = free_resolution(m, 1);
    int g = gpd_of_resolution(r, cert);
    // cross-check against the Ext-sup characterization
    auto dims = ext_against_regular(m, cert.n());
    for (int i = g + 1; i <= cert.n(); ++i)
        if (dims[i] != 0)
            throw CertificateViolated("Ext vanishing fails above the computed Gpd");
    if (g >= 1 && dims[g] == 0)
        throw CertificateViolated("top Ext group vanishes at the computed Gpd");
    if (g == 0 && hom_regular_dim(m) == 0)
        throw CertificateViolated("Hom(M, R) = 0 for a nonzero Gorenstein projective");
    return g;
}

// ---------------------------------------------------------------------------
// The dual resolution arm
// ---------------------------------------------------------------------------

/// Negative half of a totally acyclic complex for a Gorenstein projective G:
/// entry j is the star-dual of the j-th stage of a free resolution of G*
/// over the opposite algebra, spliced through the biduality isomorphism.
class DualArm {
public:
    DualArm() = default;

    explicit DualArm(const Module& g) : s_(std::make_shared<State>()) {
        s_->g = g;
        s_->bid = biduality(g);
        if (!is_invertible(s_->bid.eval.matrix()))
            throw BidualityNotIso("biduality is not an isomorphism; module is not totally reflexive");
        s_->q = Resolution(s_->bid.star.dual);
        extend_to(0);
        if (g.is_zero() || s_->q.is_zero_resolution()) {
            s_->splice = Mat(g.algebra()->p(), 0, g.dim());
        } else {
            // splice G -> (Q_0)^*: dualized augmentation composed with eval
            ModMap aug(s_->q.module_at(0), s_->bid.star.dual, s_->q.pi_at(0));
            ModMap dual_aug = star_dual_map(aug, s_->bid.double_star, s_->duals[0]);
            s_->splice = dual_aug.matrix() * s_->bid.eval.matrix();
            check(rank(s_->splice) == g.dim(), "dual arm splice map is not injective");
        }
    }

    const Module& module_entry(int j) const {
        extend_to(j);
        return s_->duals[j].dual;
    }
    /// differential entry(j-1) -> entry(j), j >= 1
    Mat diff_entry(int j) const {
        extend_to(j);
        return s_->diffs[j];
    }
    Mat splice_from_g() const { return s_->splice; }
    const Module& g_module() const { return s_->g; }

    void extend_to(int j) const {
        std::lock_guard<std::mutex> lock(s_->mu);
        while (int(s_->duals.size()) <= j) {
            int k = int(s_->duals.size());
            if (s_->q.is_zero_resolution()) {
                s_->duals.push_back(StarDual{Module::zero(s_->g.algebra()), HomBasis{}});
                s_->diffs.push_back(Mat(s_->g.algebra()->p(), 0, 0));
                continue;
            }
            s_->q.extend_to(k);
            s_->duals.push_back(star_dual(s_->q.module_at(k), s_->g.algebra()));
            if (k == 0) {
                s_->diffs.push_back(Mat(s_->g.algebra()->p(), s_->duals[0].dual.dim(), 0));
            } else {
                ModMap d(s_->q.module_at(k), s_->q.module_at(k - 1), s_->q.diff_at(k));
                s_->diffs.push_back(
                    star_dual_map(d, s_->duals[k - 1], s_->duals[k]).matrix());
            }
        }
    }

private:
    struct State {
        Module g;
        Biduality bid;
        Resolution q;
        std::vector<StarDual> duals;
        std::vector<Mat> diffs;
        Mat splice;
        mutable std::mutex mu;
    };
    std::shared_ptr<State> s_;
};

// ---------------------------------------------------------------------------
// CompleteResolution
// ---------------------------------------------------------------------------

struct CompleteResolution::State {
    enum class Kind { Base, Spliced, Surjective } kind = Kind::Base;
    Resolution p;
    int g = 0;
    int computed_lo = 0;
    std::map<int, Module> t_below;  // degrees < g
    std::map<int, Mat> d_below;     // source degrees <= g
    std::map<int, Mat> tau_below;   // degrees < g

    // Base
    DualArm arm;
    Mat coker_proj; // P_g -> G

    // Spliced (from a special resolution); K_i = G_i above t, arm entries below
    int t = 0;
    Complex g_cx;
    std::map<int, Mat> gamma_comp;

    // Surjective wrapper
    std::shared_ptr<State> inner;
    Complex cone_summand;

    std::pair<int, int> verified{1, 0};
    mutable std::mutex mu;

    const AlgebraPtr& alg() const { return p.target().algebra(); }

    Module t_module_nolock(int i) {
        if (i >= g) {
            p.extend_to(i);
            if (p.is_zero_resolution()) return Module::zero(alg());
            return p.module_at(i);
        }
        auto it = t_below.find(i);
        check(it != t_below.end(), "complete resolution window too small");
        return it->second;
    }

    Mat t_diff_nolock(int i) {
        if (i > g) {
            p.extend_to(i);
            return p.diff_at(i);
        }
        auto it = d_below.find(i);
        check(it != d_below.end(), "complete resolution window too small");
        return it->second;
    }

    Mat tau_nolock(int i) {
        if (i >= g) {
            p.extend_to(i);
            int d = p.is_zero_resolution() ? 0 : p.module_at(i).dim();
            return Mat::identity(alg()->p(), d);
        }
        auto it = tau_below.find(i);
        check(it != tau_below.end(), "complete resolution window too small");
        return it->second;
    }

    // K-complex data for the spliced variant
    Module k_module(int i) {
        if (i > t) {
            if (g_cx.window_empty() || i > g_cx.hi()) return Module::zero(alg());
            return g_cx.module_at(i);
        }
        return arm.module_entry(t - i);
    }
    Mat k_diff(int i) {
        const std::uint32_t pr = alg()->p();
        if (g_cx.window_empty()) return Mat(pr, k_module(i - 1).dim(), k_module(i).dim());
        if (i > g_cx.hi() + 1) return Mat(pr, k_module(i - 1).dim(), k_module(i).dim());
        if (i > t + 1) return g_cx.diff_at(i);
        if (i == t + 1) return arm.splice_from_g() * g_cx.diff_at(t + 1);
        return arm.diff_entry(t - i + 1);
    }
    Mat kappa(int i) {
        const std::uint32_t pr = alg()->p();
        int pdim = p.is_zero_resolution() ? 0 : p.module_at(i).dim();
        if (g_cx.window_empty() || i > g_cx.hi() || i < t)
            return Mat(pr, k_module(i).dim(), pdim);
        Mat gamma_i = gamma_comp.count(i) ? gamma_comp.at(i)
                                          : Mat(pr, g_cx.module_at(i).dim(), pdim);
        if (i == t) return arm.splice_from_g() * gamma_i;
        return gamma_i;
    }

    void step_down() {
        const std::uint32_t pr = alg()->p();
        int j = computed_lo - 1;
        switch (kind) {
            case Kind::Base: {
                int idx = (g - 1) - j;
                Module tj = arm.module_entry(idx);
                Mat dj1 = (j + 1 == g) ? arm.splice_from_g() * coker_proj
                                       : arm.diff_entry(idx);
                Mat dp = p.diff_at(j + 1);
                Mat tau_rhs = dp * tau_nolock(j + 1);
                auto tau_j = solve_postfactor(tj, p.module_at(j), dj1, tau_rhs);
                if (!tau_j)
                    throw SystemInfeasible("cannot extend tau below degree " +
                                           std::to_string(j + 1));
                t_below.emplace(j, tj);
                d_below.emplace(j + 1, std::move(dj1));
                tau_below.emplace(j, std::move(*tau_j));
                break;
            }
            case Kind::Spliced: {
                p.extend_to(std::max(j + 2, g));
                int pdim_j = p.is_zero_resolution() ? 0 : p.module_at(j).dim();
                Module pj = p.is_zero_resolution() ? Module::zero(alg()) : p.module_at(j);
                Module tj = direct_sum(pj, k_module(j + 1)).module;
                // d_{j+1}: (p, k) -> (d p, kappa p - d^K k)
                int pr_rows = pdim_j, kr_rows = k_module(j + 1).dim();
                int pc = p.is_zero_resolution() ? 0 : p.module_at(j + 1).dim();
                int kc = k_module(j + 2).dim();
                Mat d(pr, pr_rows + kr_rows, pc + kc);
                d.paste(p.diff_at(j + 1), 0, 0);
                d.paste(kappa(j + 1), pr_rows, 0);
                d.paste(k_diff(j + 2).negated(), pr_rows, pc);
                Mat tau_j(pr, pdim_j, pr_rows + kr_rows);
                if (pdim_j > 0) tau_j.paste(Mat::identity(pr, pdim_j), 0, 0);
                t_below.emplace(j, std::move(tj));
                d_below.emplace(j + 1, std::move(d));
                tau_below.emplace(j, std::move(tau_j));
                break;
            }
            case Kind::Surjective: {
                {
                    std::lock_guard<std::mutex> lock(inner->mu);
                    while (inner->computed_lo > j) inner->step_down();
                }
                Module inner_tj, ci = cone_summand.module_at(j);
                Mat inner_d, inner_tau;
                {
                    std::lock_guard<std::mutex> lock(inner->mu);
                    inner_tj = inner->t_module_nolock(j);
                    inner_d = inner->t_diff_nolock(j + 1);
                    inner_tau = inner->tau_nolock(j);
                }
                Module tj = direct_sum(inner_tj, ci).module;
                Mat d = Mat::block_diag(inner_d, cone_summand.diff_at(j + 1));
                Mat tau_j(pr, inner_tau.rows(), inner_tau.cols() + ci.dim());
                tau_j.paste(inner_tau, 0, 0);
                // cone summand C_j = P_j (+) P_{j+1}; tau' projects to P_j
                int pj = (p.is_zero_resolution() || j < p.inf_degree())
                             ? 0 : p.module_at(j).dim();
                if (pj > 0 && ci.dim() > 0)
                    tau_j.paste(Mat::identity(pr, pj), 0, inner_tau.cols());
                t_below.emplace(j, std::move(tj));
                d_below.emplace(j + 1, std::move(d));
                tau_below.emplace(j, std::move(tau_j));
                break;
            }
        }
        computed_lo = j;
    }
};

int CompleteResolution::g() const { return s_->g; }
const Resolution& CompleteResolution::res() const { return s_->p; }
const AlgebraPtr& CompleteResolution::algebra() const {
    return s_->p.target().algebra();
}

void CompleteResolution::extend_to(int lo, int hi) const {
    s_->p.extend_to(std::max(hi + 1, s_->g));
    std::lock_guard<std::mutex> lock(s_->mu);
    while (s_->computed_lo > lo) s_->step_down();
}

Module CompleteResolution::t_module(int i) const {
    extend_to(std::min(i, s_->g), std::max(i, s_->g));
    std::lock_guard<std::mutex> lock(s_->mu);
    return s_->t_module_nolock(i);
}

Mat CompleteResolution::t_diff(int i) const {
    extend_to(std::min(i - 1, s_->g), std::max(i, s_->g));
    std::lock_guard<std::mutex> lock(s_->mu);
    return s_->t_diff_nolock(i);
}

Mat CompleteResolution::tau_at(int i) const {
    extend_to(std::min(i, s_->g), std::max(i, s_->g));
    std::lock_guard<std::mutex> lock(s_->mu);
    return s_->tau_nolock(i);
}

Complex CompleteResolution::t_slice(int lo, int hi) const {
    extend_to(lo, hi);
    std::vector<Module> mods;
    std::vector<Mat> diffs;
    std::lock_guard<std::mutex> lock(s_->mu);
    for (int i = lo; i <= hi; ++i) mods.push_back(s_->t_module_nolock(i));
    for (int i = lo + 1; i <= hi; ++i) diffs.push_back(s_->t_diff_nolock(i));
    return Complex(algebra(), lo, std::move(mods), std::move(diffs));
}

Complex CompleteResolution::p_slice(int lo, int hi) const {
    return s_->p.p_slice(lo, hi);
}

ChainMap CompleteResolution::tau_chain(int lo, int hi) const {
    Complex t = t_slice(lo, hi);
    Complex p = p_slice(lo, hi);
    std::map<int, Mat> comp;
    for (int i = lo; i <= hi; ++i) {
        Mat m = tau_at(i);
        if (!m.is_zero()) comp[i] = std::move(m);
    }
    return ChainMap(std::move(t), std::move(p), 0, std::move(comp));
}

void CompleteResolution::verify_window(int lo, int hi) const {
    Complex t = t_slice(lo - 1, hi + 1);
    for (int n = lo; n <= hi; ++n)
        check(homology_dim(t, n) == 0, "T not exact at degree " + std::to_string(n));
    HomComplex ht = hom_complex(t, regular_complex(algebra()), -hi - 1, -lo + 1);
    for (int n = -hi; n <= -lo; ++n)
        check(homology_dim(ht.complex, n) == 0,
              "Hom(T, R) not exact at degree " + std::to_string(-n));
    ChainMap tau = tau_chain(lo - 1, hi + 1);
    check(tau.is_morphism(), "tau is not a morphism");
    for (int i = std::max(lo, s_->g); i <= hi; ++i)
        check(tau_at(i).is_identity(), "tau not the identity above g");
    std::lock_guard<std::mutex> lock(s_->mu);
    if (s_->verified.first > s_->verified.second) s_->verified = {lo, hi};
    else s_->verified = {std::min(lo, s_->verified.first), std::max(hi, s_->verified.second)};
}

std::pair<int, int> CompleteResolution::verified_window() const {
    std::lock_guard<std::mutex> lock(s_->mu);
    return s_->verified;
}

CompleteResolution complete_resolution_on(const Resolution& p, int g) {
    CompleteResolution cr;
    cr.s_ = std::make_shared<CompleteResolution::State>();
    auto& st = *cr.s_;
    st.kind = CompleteResolution::State::Kind::Base;
    st.p = p;
    st.g = g;
    st.computed_lo = g;
    if (p.is_zero_resolution()) {
        // trivial complete resolution of an exact complex: T = 0
        st.kind = CompleteResolution::State::Kind::Spliced;
        st.t = g;
        st.g_cx = Complex(p.target().algebra());
        st.arm = DualArm(Module::zero(p.target().algebra()));
        return cr;
    }
    QuotModule ck = p.coker_at(g);
    st.arm = DualArm(ck.module);
    st.coker_proj = ck.projection.matrix();
    return cr;
}

CompleteResolution complete_resolution(const Complex& m, const GorensteinCertificate& cert) {
    Resolution r(m);
    int g = gpd_of_resolution(r, cert);
    if (g == kNegInfinity) return complete_resolution_on(r, 0);
    return complete_resolution_on(r, g);
}

CompleteResolution complete_resolution(const Module& m, const GorensteinCertificate& cert) {
    return complete_resolution(Complex::concentrated(m, 0), cert);
}

CompleteResolution totally_acyclic_from_gp(const Module& g, const GorensteinCertificate& cert) {
    if (!is_gorenstein_projective(g, cert))
        throw CertificateViolated("totally_acyclic_from_gp needs a Gorenstein projective module");
    Resolution r = free_resolution(g, 1);
    return complete_resolution_on(r, 0);
}

CompleteResolution surjectify(const CompleteResolution& cr) {
    const auto& st = *cr.state();
    const AlgebraPtr& a = cr.algebra();
    CompleteResolution out;
    out.s_ = std::make_shared<CompleteResolution::State>();
    auto& so = *out.s_;
    so.kind = CompleteResolution::State::Kind::Surjective;
    so.p = st.p;
    so.g = st.g;
    so.computed_lo = st.g;
    so.inner = cr.state();
    if (st.p.is_zero_resolution()) {
        so.cone_summand = Complex(a);
        return out;
    }
    int t = st.p.inf_degree();
    if (t >= st.g) {
        so.cone_summand = Complex(a);
        return out;
    }
    Complex below = st.p.p_slice(t, st.g - 1);
    so.cone_summand = cone(ChainMap::identity(shift(below, -1))).cone;
    return out;
}

// ---------------------------------------------------------------------------
// Downward extension of chain maps
// ---------------------------------------------------------------------------

std::map<int, Mat> extend_chain_map_down(const Complex& t, const Complex& q,
                                         std::map<int, Mat> partial,
                                         int from_deg, int to_deg) {
    for (int j = from_deg; j > to_deg; --j) {
        Mat phi_j = partial.count(j) ? partial.at(j)
                                     : Mat(t.algebra()->p(), q.module_at(j).dim(),
                                           t.module_at(j).dim());
        Mat rhs = q.diff_at(j) * phi_j;
        auto x = solve_postfactor(t.module_at(j - 1), q.module_at(j - 1), t.diff_at(j), rhs);
        if (!x)
            throw SystemInfeasible("chain map extension infeasible at degree " +
                                   std::to_string(j - 1));
        if (!x->is_zero()) partial[j - 1] = std::move(*x);
    }
    return partial;
}

// ---------------------------------------------------------------------------
// Special Gorenstein projective resolutions
// ---------------------------------------------------------------------------

SpecialGpResolution special_gp_resolution(const Complex& m, const GorensteinCertificate& cert) {
    CompleteResolution cr0 = complete_resolution(m, cert);
    CompleteResolution cr = surjectify(cr0);
    const AlgebraPtr& a = m.algebra();
    const std::uint32_t p = a->p();
    const Resolution& res = cr.res();
    if (res.is_zero_resolution())
        throw UnboundedInput("special resolution needs nonzero homology");
    int t = res.inf_degree();
    int g = cr.g();
    cr.extend_to(t - 2, g + 1);

    // kernels L_i = Ker tau'_i with reduced bases plus graded splittings
    std::map<int, SubModule> l;
    std::map<int, Mat> nu2;  // sections P_i -> T'_i
    std::map<int, Mat> nu1;  // projections T'_i -> L_i
    for (int i = t - 2; i <= g + 1; ++i) {
        Module ti = cr.t_module(i);
        Module pi = res.module_at(i);
        Mat tau = cr.tau_at(i);
        ModMap tau_map = ModMap::unchecked(ti, pi, tau);
        check(rank(tau) == pi.dim(), "surjectified tau is not surjective");
        l.emplace(i, kernel(tau_map));
        auto sec = solve_prefactor(pi, ti, tau, Mat::identity(p, pi.dim()));
        check(sec.has_value(), "no module-linear section of tau");
        nu2[i] = *sec;
        Mat proj_to_l = Mat::identity(p, ti.dim()) - *sec * tau;
        KerBasis kb = kernel_basis_full(tau);
        Mat coords = proj_to_l.rows_selected(kb.unit_rows);
        check(kb.basis * coords == proj_to_l, "kernel projection failed");
        nu1[i] = coords;
    }

    // lambda = theta^P: P -> S L, lambda_i = nu1_{i-1} d^{T'}_i nu2_i
    std::map<int, Mat> lambda;
    for (int i = t; i <= g + 1; ++i)
        lambda[i] = nu1.at(i - 1) * cr.t_diff(i) * nu2.at(i);

    // G_t = C_t(T'), G_i = L_{i-1} for i in (t, g]
    QuotModule ct = cokernel(ModMap::unchecked(cr.t_module(t + 1), cr.t_module(t),
                                               cr.t_diff(t + 1)));
    std::vector<Module> g_mods;
    std::vector<Mat> g_diffs;
    g_mods.push_back(ct.module);
    for (int i = t + 1; i <= g; ++i) g_mods.push_back(l.at(i - 1).module);
    for (int i = t + 1; i <= g; ++i) {
        if (i == t + 1) {
            // -sigma: L_t -> C_t(T')
            Mat sigma = ct.projection.matrix() * l.at(t).inclusion.matrix();
            g_diffs.push_back(sigma.negated());
        } else {
            // -d^L_{i-1}: L_{i-1} -> L_{i-2}
            Mat dl = cr.t_diff(i - 1) * l.at(i - 1).inclusion.matrix();
            KerBasis kb = kernel_basis_full(cr.tau_at(i - 2));
            Mat coords = dl.rows_selected(kb.unit_rows);
            check(kb.basis * coords == dl, "kernel differential failed");
            g_diffs.push_back(coords.negated());
        }
    }
    Complex g_cx(a, t, std::move(g_mods), std::move(g_diffs));

    // gamma: P -> G
    std::map<int, Mat> gamma_c;
    gamma_c[t] = ct.projection.matrix() * nu2.at(t);
    for (int i = t + 1; i <= g; ++i) gamma_c[i] = lambda.at(i);
    Complex p_slice = res.p_slice(t, g + 1);
    ChainMap gamma(p_slice, g_cx, 0, std::move(gamma_c));
    check(gamma.is_morphism(), "special resolution comparison is not a morphism");
    ChainMap pi_chain = res.pi_chain(t, g + 1);

    SpecialGpResolution out{t, g, g_cx, p_slice, gamma, pi_chain, std::nullopt, res};

    // module case: eps: G -> M with eps o gamma = pi
    Complex mt = m.trimmed();
    if (!mt.window_empty() && mt.lo() == t && mt.hi() == t) {
        const Module& m_mod = mt.module_at(t);
        ColBasis cb = column_space_basis(cr.t_diff(t + 1));
        std::vector<bool> is_p(cr.t_module(t).dim(), false);
        for (int r : cb.pivot_rows) is_p[r] = true;
        Mat sec(p, cr.t_module(t).dim(), ct.module.dim());
        int col = 0;
        for (int i = 0; i < cr.t_module(t).dim(); ++i)
            if (!is_p[i]) sec(i, col++) = 1;
        Mat eps_mat = res.pi_at(t) * cr.tau_at(t) * sec;
        ChainMap eps(g_cx, Complex::concentrated(m_mod, t), 0, {{t, eps_mat}});
        check(eps.is_morphism(), "eps is not a morphism");
        for (int i = t; i <= g; ++i)
            check(eps.component(i) * gamma.component(i) == pi_chain.component(i),
                  "eps o gamma != pi");
        out.eps = std::move(eps);
    }

    // invariants: G_i projective for i > t, G_t Gorenstein projective
    for (int i = t + 1; i <= g; ++i)
        check(is_projective(out.g_complex.module_at(i)).projective,
              "special resolution has a non-projective upper term");
    check(is_gorenstein_projective(out.g_complex.module_at(t), cert),
          "special resolution bottom is not Gorenstein projective");
    return out;
}

SpecialGpResolution special_gp_resolution(const Module& m, const GorensteinCertificate& cert) {
    return special_gp_resolution(Complex::concentrated(m, 0), cert);
}

CompleteResolution complete_from_special(const SpecialGpResolution& sp, const Resolution& p) {
    CompleteResolution cr;
    cr.s_ = std::make_shared<CompleteResolution::State>();
    auto& st = *cr.s_;
    st.kind = CompleteResolution::State::Kind::Spliced;
    st.p = p;
    st.g = sp.g;
    st.computed_lo = sp.g;
    st.t = sp.t;
    st.g_cx = sp.g_complex;
    st.arm = DualArm(sp.g_complex.module_at(sp.t));
    for (int i = sp.t; i <= sp.g; ++i) {
        Mat c = sp.gamma.component(i);
        if (!c.is_zero()) st.gamma_comp[i] = std::move(c);
    }
    check(sp.g_complex.hi() <= sp.g, "special resolution exceeds its stated top");
    return cr;
}

// ---------------------------------------------------------------------------
// Horseshoe for complete resolutions
// ---------------------------------------------------------------------------

namespace {

struct EagerComplete {
    Complex t;                 ///< on [lo, hi]
    std::map<int, Mat> tau;    ///< T_i -> P_i
};

/// Surjective complete resolution on a bounded resolution slice: T = P above
/// g, dual arm below, plus a contractible cone summand for surjectivity.
EagerComplete build_eager_complete(const Complex& p, int g, int lo) {
    const AlgebraPtr& a = p.algebra();
    const std::uint32_t pr = a->p();
    QuotModule gq = coker_at(p, g);
    DualArm arm(gq.module);

    std::map<int, Module> tmod;
    std::map<int, Mat> tdiff, tau;
    for (int i = lo; i <= p.hi(); ++i) {
        if (i >= g) tmod.emplace(i, p.module_at(i));
        else tmod.emplace(i, arm.module_entry(g - 1 - i));
    }
    for (int i = lo + 1; i <= p.hi(); ++i) {
        if (i > g) tdiff[i] = p.diff_at(i);
        else if (i == g) tdiff[i] = arm.splice_from_g() * gq.projection.matrix();
        else tdiff[i] = arm.diff_entry(g - i);
    }
    for (int i = p.hi(); i >= lo; --i) {
        if (i >= g) {
            tau[i] = Mat::identity(pr, p.module_at(i).dim());
            continue;
        }
        Mat rhs = p.diff_at(i + 1) * tau.at(i + 1);
        auto x = solve_postfactor(tmod.at(i), p.module_at(i), tdiff.at(i + 1), rhs);
        if (!x) throw SystemInfeasible("eager tau extension failed at " + std::to_string(i));
        tau[i] = std::move(*x);
    }

    auto inf_p = p.inf();
    Complex cone_summand(a);
    if (inf_p && *inf_p < g) {
        Complex below = truncate_below(p, g - 1);
        cone_summand = cone(ChainMap::identity(shift(below, -1))).cone;
    }
    std::vector<Module> mods;
    std::vector<Mat> diffs;
    std::map<int, Mat> tau_out;
    for (int i = lo; i <= p.hi(); ++i) {
        Module ci = cone_summand.module_at(i);
        mods.push_back(direct_sum(tmod.at(i), ci).module);
        Mat ti(pr, p.module_at(i).dim(), tmod.at(i).dim() + ci.dim());
        ti.paste(tau.at(i), 0, 0);
        int pj = p.module_at(i).dim();
        if (pj > 0 && ci.dim() > 0) ti.paste(Mat::identity(pr, pj), 0, tmod.at(i).dim());
        tau_out[i] = std::move(ti);
    }
    for (int i = lo + 1; i <= p.hi(); ++i)
        diffs.push_back(Mat::block_diag(tdiff.at(i), cone_summand.diff_at(i)));
    EagerComplete out{Complex(a, lo, std::move(mods), std::move(diffs)), std::move(tau_out)};
    for (int i = lo; i <= p.hi(); ++i)
        check(rank(out.tau.at(i)) == p.module_at(i).dim(),
              "eager complete resolution: tau not surjective");
    return out;
}

int gpd_on_slice(const Complex& p, const Complex& target, const GorensteinCertificate& cert) {
    int sup_h = target.lo() - 1;
    for (int n = target.lo(); n <= target.hi(); ++n)
        if (homology_dim(target, n) > 0) sup_h = n;
    if (sup_h < target.lo()) return kNegInfinity;
    for (int g = sup_h; g <= sup_h + cert.n(); ++g)
        if (is_gorenstein_projective(coker_at(p, g).module, cert)) return g;
    throw CertificateViolated("no Gorenstein projective cokernel on the slice");
}

/// canonical map C_j(T) -> T_{j-1} induced by the differential
Mat coker_injection(const Complex& c, int j) {
    ColBasis cb = column_space_basis(c.diff_at(j + 1));
    std::vector<bool> isp(c.module_at(j).dim(), false);
    for (int r : cb.pivot_rows) isp[r] = true;
    QuotModule q = coker_at(c, j);
    Mat sec(c.algebra()->p(), c.module_at(j).dim(), q.module.dim());
    int col = 0;
    for (int i = 0; i < c.module_at(j).dim(); ++i)
        if (!isp[i]) sec(i, col++) = 1;
    return c.diff_at(j) * sec;
}

} // namespace

TateHorseshoe tate_horseshoe(const ChainMap& mu, const ChainMap& mu_prime,
                             const GorensteinCertificate& cert, int lo, int hi) {
    const AlgebraPtr& a = mu.source().algebra();
    const std::uint32_t p = a->p();

    int sup_all = std::max({mu.source().hi(), mu.target().hi(), mu_prime.target().hi()});
    int up_to = std::max(hi + 1, sup_all + cert.n() + 2);
    HorseshoeDiagram hs = horseshoe(mu, mu_prime, up_to);

    int g_sub = gpd_on_slice(hs.p_sub, mu.source(), cert);
    int g_quot = gpd_on_slice(hs.p_quot, mu_prime.target(), cert);
    int g = 0;
    if (g_sub != kNegInfinity) g = std::max(g, g_sub);
    if (g_quot != kNegInfinity) g = std::max(g, g_quot);

    EagerComplete ct = build_eager_complete(hs.p_sub, g, lo - 1);
    EagerComplete ctq = build_eager_complete(hs.p_quot, g, lo - 1);
    const Complex& t_sub = ct.t;
    const Complex& t_quot = ctq.t;

    // Step 1: splice T' by descending induction on the cokernel rows
    std::map<int, Module> tp_mods;
    std::map<int, Mat> tp_diffs;
    for (int i = g; i <= up_to; ++i) tp_mods.emplace(i, hs.p_mid.module_at(i));
    for (int i = g + 1; i <= up_to; ++i) tp_diffs[i] = hs.p_mid.diff_at(i);

    auto section_of = [&](const Mat& d_next, int dim) {
        ColBasis cb = column_space_basis(d_next);
        std::vector<bool> isp(dim, false);
        for (int r : cb.pivot_rows) isp[r] = true;
        int cols = dim - int(cb.pivot_rows.size());
        Mat sec(p, dim, cols);
        int col = 0;
        for (int i = 0; i < dim; ++i)
            if (!isp[i]) sec(i, col++) = 1;
        return sec;
    };

    QuotModule w = coker_at(hs.p_mid, g);
    QuotModule ct_g = coker_at(t_sub, g);
    QuotModule ctq_g = coker_at(t_quot, g);
    Mat w_sec = section_of(hs.p_mid.diff_at(g + 1), hs.p_mid.module_at(g).dim());
    Mat ct_sec = section_of(t_sub.diff_at(g + 1), t_sub.module_at(g).dim());
    Mat alpha = w.projection.matrix() * hs.mu_bar.component(g) * ct_sec;
    Mat alpha_p = ctq_g.projection.matrix() * hs.mu_bar_prime.component(g) * w_sec;
    Module w_mod = w.module;
    check(rank(alpha) == ct_g.module.dim(), "horseshoe row: left map not injective");
    check(rank(alpha_p) == ctq_g.module.dim(), "horseshoe row: right map not surjective");
    check(ct_g.module.dim() + ctq_g.module.dim() == w_mod.dim(),
          "horseshoe row: dims mismatch");

    Mat eps_proj = w.projection.matrix(); // T'_g -> W_g
    for (int j = g; j > lo - 1; --j) {
        Mat iota = coker_injection(t_sub, j);
        auto beta = solve_postfactor(w_mod, t_sub.module_at(j - 1), alpha, iota);
        if (!beta) throw SystemInfeasible("horseshoe splice: beta unsolvable at " + std::to_string(j));
        Mat iota_q = coker_injection(t_quot, j);
        DirectSum tsum = direct_sum(t_sub.module_at(j - 1), t_quot.module_at(j - 1));
        Mat iota_prime = Mat::vstack(*beta, iota_q * alpha_p);
        tp_mods.emplace(j - 1, tsum.module);
        tp_diffs[j] = iota_prime * eps_proj;

        ModMap ip = ModMap::unchecked(w_mod, tsum.module, iota_prime);
        QuotModule wq = cokernel(ip);
        Mat w_next_sec = section_of(iota_prime, tsum.module.dim());
        QuotModule cs = coker_at(t_sub, j - 1);
        QuotModule cq = coker_at(t_quot, j - 1);
        Mat cs_sec = section_of(t_sub.diff_at(j), t_sub.module_at(j - 1).dim());
        check((wq.projection.matrix() * tsum.inj1.matrix() * t_sub.diff_at(j)).is_zero(),
              "horseshoe: alpha not well defined");
        Mat alpha_next = wq.projection.matrix() * tsum.inj1.matrix() * cs_sec;
        Mat alpha_p_next = cq.projection.matrix() * tsum.proj2.matrix() * w_next_sec;
        check(rank(alpha_next) == cs.module.dim(), "horseshoe row: exactness fails (left)");
        check(rank(alpha_p_next) == cq.module.dim(), "horseshoe row: exactness fails (right)");
        check(cs.module.dim() + cq.module.dim() == wq.module.dim(),
              "horseshoe row: dims mismatch");

        w_mod = wq.module;
        eps_proj = wq.projection.matrix();
        alpha = alpha_next;
        alpha_p = alpha_p_next;
    }

    std::vector<Module> tp_vec;
    std::vector<Mat> tp_dvec;
    for (int i = lo - 1; i <= up_to; ++i) tp_vec.push_back(tp_mods.at(i));
    for (int i = lo; i <= up_to; ++i) tp_dvec.push_back(tp_diffs.at(i));
    Complex t_mid(a, lo - 1, std::move(tp_vec), std::move(tp_dvec));

    std::map<int, Mat> mh_c, mhp_c, nu1_c, nu2_c;
    for (int i = lo - 1; i <= up_to; ++i) {
        int ds = t_sub.module_at(i).dim();
        int dq = t_quot.module_at(i).dim();
        int dm = t_mid.module_at(i).dim();
        if (i >= g) {
            mh_c[i] = hs.mu_bar.component(i);
            mhp_c[i] = hs.mu_bar_prime.component(i);
            nu1_c[i] = hs.bottom.nu_prime_at(i);
            nu2_c[i] = hs.bottom.nu_doubleprime_at(i);
        } else {
            Mat inj(p, dm, ds), prj(p, dq, dm), n1(p, ds, dm), n2(p, dm, dq);
            inj.paste(Mat::identity(p, ds), 0, 0);
            prj.paste(Mat::identity(p, dq), 0, ds);
            n1.paste(Mat::identity(p, ds), 0, 0);
            n2.paste(Mat::identity(p, dq), ds, 0);
            mh_c[i] = std::move(inj);
            mhp_c[i] = std::move(prj);
            nu1_c[i] = std::move(n1);
            nu2_c[i] = std::move(n2);
        }
    }
    ChainMap mu_hat(t_sub, t_mid, 0, mh_c);
    ChainMap mu_hat_prime(t_mid, t_quot, 0, mhp_c);
    SplitSes t_row{t_sub, t_mid, t_quot, mu_hat, mu_hat_prime, nu1_c, nu2_c};
    t_row.validate();

    // Step 2: Delta by descending induction on the correction identity
    auto theta_p = [&](int i) {
        return hs.bottom.nu_prime_at(i - 1) * hs.p_mid.diff_at(i) *
               hs.bottom.nu_doubleprime_at(i);
    };
    auto theta_t = [&](int i) {
        Mat n1 = nu1_c.count(i - 1) ? nu1_c.at(i - 1)
                                    : Mat(p, t_sub.module_at(i - 1).dim(),
                                          t_mid.module_at(i - 1).dim());
        return n1 * t_mid.diff_at(i) * nu2_c.at(i);
    };
    std::map<int, Mat> delta;
    auto delta_at = [&](int i) {
        if (delta.count(i)) return delta.at(i);
        return Mat(p, hs.p_sub.module_at(i).dim(), t_quot.module_at(i).dim());
    };
    for (int i = g; i > lo; --i) {
        Mat rhs = theta_p(i) * ctq.tau.at(i) - ct.tau.at(i - 1) * theta_t(i) +
                  hs.p_sub.diff_at(i) * delta_at(i);
        auto d = solve_postfactor(t_quot.module_at(i - 1), hs.p_sub.module_at(i - 1),
                                  t_quot.diff_at(i), rhs);
        if (!d) throw SystemInfeasible("horseshoe Delta unsolvable at " + std::to_string(i - 1));
        if (!d->is_zero()) delta[i - 1] = std::move(*d);
    }
    for (int i = lo + 1; i <= up_to; ++i) {
        Mat lhs = delta_at(i - 1) * t_quot.diff_at(i) - hs.p_sub.diff_at(i) * delta_at(i);
        Mat rhs = theta_p(i) * ctq.tau.at(i) - ct.tau.at(i - 1) * theta_t(i);
        check(lhs == rhs, "horseshoe recurrence fails at degree " + std::to_string(i));
    }

    // tau' = [[tau, Delta], [0, tau'']] transported through the splittings
    std::map<int, Mat> tau_mid;
    for (int i = lo - 1; i <= up_to; ++i) {
        if (i >= g) {
            tau_mid[i] = Mat::identity(p, t_mid.module_at(i).dim());
            continue;
        }
        int ds = t_sub.module_at(i).dim();
        int dq = t_quot.module_at(i).dim();
        Mat top(p, hs.p_sub.module_at(i).dim(), ds + dq);
        top.paste(ct.tau.at(i), 0, 0);
        top.paste(delta_at(i), 0, ds);
        Mat bottom(p, hs.p_quot.module_at(i).dim(), ds + dq);
        bottom.paste(ctq.tau.at(i), 0, ds);
        tau_mid[i] = hs.mu_bar.component(i) * top +
                     hs.bottom.nu_doubleprime_at(i) * bottom;
    }

    ChainMap tau_sub_chain(t_sub, hs.p_sub, 0, ct.tau);
    ChainMap tau_mid_chain(t_mid, hs.p_mid, 0, tau_mid);
    ChainMap tau_quot_chain(t_quot, hs.p_quot, 0, ctq.tau);
    check(tau_mid_chain.is_morphism(), "horseshoe: tau' is not a morphism");
    for (int i = lo; i <= up_to; ++i) {
        check(rank(tau_mid_chain.component(i)) == hs.p_mid.module_at(i).dim(),
              "horseshoe: tau' not surjective");
        check(tau_mid_chain.component(i) * mu_hat.component(i) ==
                  hs.mu_bar.component(i) * tau_sub_chain.component(i),
              "horseshoe: left column square fails");
        check(tau_quot_chain.component(i) * mu_hat_prime.component(i) ==
                  hs.mu_bar_prime.component(i) * tau_mid_chain.component(i),
              "horseshoe: right column square fails");
    }
    for (int n = lo; n <= hi; ++n)
        check(homology_dim(t_mid, n) == 0, "horseshoe: T' not exact");
    HomComplex hm = hom_complex(t_mid, regular_complex(a), -hi, -lo);
    for (int n = -hi + 1; n <= -lo - 1; ++n)
        check(homology_dim(hm.complex, n) == 0, "horseshoe: Hom(T', R) not exact");

    return TateHorseshoe{g, lo, hi, hs, t_sub, t_mid, t_quot,
                         mu_hat, mu_hat_prime,
                         tau_sub_chain, tau_mid_chain, tau_quot_chain,
                         t_row, delta};
}

// ---------------------------------------------------------------------------
// Lifting to complete resolutions
// ---------------------------------------------------------------------------

CompleteLift lift_to_complete(const ChainMap& mu, const CompleteResolution& cr_src,
                              const CompleteResolution& cr_tgt, int lo, int hi) {
    int n0 = std::max(cr_src.g(), cr_tgt.g());
    int sub_hi = std::max(hi + 1, n0 + 1);
    cr_src.extend_to(lo - 1, sub_hi);
    cr_tgt.extend_to(lo - 1, sub_hi);
    int sub_lo = lo;
    if (!cr_src.res().is_zero_resolution())
        sub_lo = std::min(lo, cr_src.res().inf_degree());

    ChainMap mu_bar = lift_morphism(mu, cr_src.res(), cr_tgt.res(), sub_lo, sub_hi);

    Complex t_src = cr_src.t_slice(lo - 1, sub_hi);
    Complex t_tgt = cr_tgt.t_slice(lo - 1, sub_hi);
    std::map<int, Mat> partial;
    for (int i = n0; i <= sub_hi; ++i) {
        Mat m = mu_bar.component(i);
        if (!m.is_zero()) partial[i] = std::move(m);
    }
    auto full = extend_chain_map_down(t_src, t_tgt, std::move(partial), n0, lo - 1);
    std::map<int, Mat> comp;
    for (auto& [i, m] : full)
        if (i >= lo - 1 && i <= sub_hi && !m.is_zero()) comp[i] = m;
    ChainMap mu_hat(t_src, t_tgt, 0, std::move(comp));
    check(mu_hat.is_chain_map(), "lift_to_complete: extension is not a chain map");

    // the right square commutes up to homotopy on the window
    Complex p_tgt = cr_tgt.p_slice(lo - 1, sub_hi);
    std::map<int, Mat> diff_c;
    for (int i = lo; i <= hi; ++i) {
        Mat d = cr_tgt.tau_at(i) * mu_hat.component(i) -
                mu_bar.component(i) * cr_src.tau_at(i);
        if (!d.is_zero()) diff_c[i] = std::move(d);
    }
    ChainMap diff(t_src, p_tgt, 0, std::move(diff_c));
    auto h = solve_homotopy(diff, ChainMap::zero(t_src, p_tgt));
    check(h.has_value(), "lift_to_complete: squares do not commute up to homotopy");

    return CompleteLift{mu_bar, mu_hat};
}

} // namespace homcx
