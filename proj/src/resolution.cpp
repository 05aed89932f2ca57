#include "homcx/resolution.hpp"

#include <mutex>

namespace homcx {

// ---------------------------------------------------------------------------
// Resolution
// ---------------------------------------------------------------------------

struct Resolution::State {
    Complex target;
    CoverStrategy strategy = CoverStrategy::Greedy;
    bool zero_resolution = false;
    int t = 0;                    // bottom degree of P
    int up_to = 0;                // highest computed degree
    std::vector<Module> modules;  // index i-t
    std::vector<int> ranks;
    std::vector<Mat> diffs;       // diffs[i-t]: P_i -> P_{i-1}
    std::vector<Mat> pis;         // P_i -> target_i
    std::mutex mu;

    const AlgebraPtr& alg() const { return target.algebra(); }

    void build_degree(int i) {
        const auto& a = alg();
        const std::uint32_t p = a->p();
        const Module& m_i = target.module_at(i);
        SubModule x{};
        Mat to_prev_of_x;   // X -> P_{i-1} (through the cycle submodule)
        Mat to_target_of_x; // X -> target_i
        if (i == t) {
            ModMap dt = target.diff_map(t);
            x = kernel(dt);
            to_prev_of_x = Mat(p, 0, x.module.dim());
            to_target_of_x = x.inclusion.matrix();
        } else {
            const Module& p_prev = modules[i - 1 - t];
            Module p_prev2 = (i - 1 == t) ? Module::zero(a) : modules[i - 2 - t];
            ModMap d_prev_map = ModMap::unchecked(p_prev, p_prev2, diffs[i - 1 - t]);
            SubModule z = kernel(d_prev_map);
            DirectSum zd = direct_sum(z.module, m_i);
            // g(z, m) = pi(z) - d(m); X = ker g
            Mat g = Mat::hstack(pis[i - 1 - t] * z.inclusion.matrix(),
                                target.diff_at(i).negated());
            ModMap g_map = ModMap::unchecked(zd.module, target.module_at(i - 1), g);
            x = kernel(g_map);
            to_prev_of_x = z.inclusion.matrix() * zd.proj1.matrix() * x.inclusion.matrix();
            to_target_of_x = zd.proj2.matrix() * x.inclusion.matrix();
        }
        FreeCover cover = free_cover(x.module, strategy);
        modules.push_back(cover.free);
        ranks.push_back(int(cover.generators.size()));
        pis.push_back(to_target_of_x * cover.projection.matrix());
        if (i > t) diffs.push_back(to_prev_of_x * cover.projection.matrix());
        else diffs.push_back(Mat(p, 0, cover.free.dim()));
    }
};

Resolution::Resolution(Complex target, CoverStrategy strategy)
    : s_(std::make_shared<State>()) {
    s_->target = target.trimmed();
    s_->strategy = strategy;
    if (s_->target.window_empty()) {
        s_->zero_resolution = true;
        return;
    }
    std::optional<int> t;
    for (int n = s_->target.lo(); n <= s_->target.hi() + 1; ++n) {
        if (homology_dim(s_->target, n) > 0) { t = n; break; }
    }
    if (!t) {
        s_->zero_resolution = true;
        return;
    }
    s_->t = *t;
    s_->up_to = *t - 1;
}

Resolution::Resolution(const Module& target, CoverStrategy strategy)
    : Resolution(Complex::concentrated(target, 0), strategy) {}

Resolution Resolution::strict(Complex target, CoverStrategy strategy) {
    Resolution r;
    r.s_ = std::make_shared<State>();
    r.s_->target = target.trimmed();
    r.s_->strategy = strategy;
    if (r.s_->target.window_empty()) {
        r.s_->zero_resolution = true;
        return r;
    }
    r.s_->t = r.s_->target.lo();
    r.s_->up_to = r.s_->t - 1;
    return r;
}

bool Resolution::is_zero_resolution() const { return s_->zero_resolution; }

int Resolution::inf_degree() const {
    if (s_->zero_resolution) throw WindowTooSmall("zero resolution has empty support");
    return s_->t;
}

int Resolution::computed_up_to() const {
    return s_->zero_resolution ? 0 : s_->up_to;
}

void Resolution::extend_to(int up_to) const {
    if (s_->zero_resolution) return;
    std::lock_guard<std::mutex> lock(s_->mu);
    while (s_->up_to < up_to) s_->build_degree(++s_->up_to);
}

const Complex& Resolution::target() const { return s_->target; }
CoverStrategy Resolution::strategy() const { return s_->strategy; }

int Resolution::rank_at(int i) const {
    if (s_->zero_resolution || i < s_->t) return 0;
    if (i > s_->up_to) throw WindowTooSmall("resolution not computed at degree " + std::to_string(i));
    return s_->ranks[i - s_->t];
}

Module Resolution::module_at(int i) const {
    if (s_->zero_resolution || i < s_->t) return Module::zero(s_->target.algebra());
    if (i > s_->up_to) throw WindowTooSmall("resolution not computed at degree " + std::to_string(i));
    return s_->modules[i - s_->t];
}

Mat Resolution::diff_at(int i) const {
    const std::uint32_t p = s_->target.algebra()->p();
    if (s_->zero_resolution || i <= s_->t || i > s_->up_to)
        return Mat(p, module_at(i - 1).dim(), module_at(i).dim());
    return s_->diffs[i - s_->t];
}

Mat Resolution::pi_at(int i) const {
    const std::uint32_t p = s_->target.algebra()->p();
    if (s_->zero_resolution || i < s_->t)
        return Mat(p, s_->target.module_at(i).dim(), 0);
    if (i > s_->up_to) throw WindowTooSmall("resolution not computed at degree " + std::to_string(i));
    return s_->pis[i - s_->t];
}

Mat Resolution::generators_at(int i) const {
    return free_generators(s_->target.algebra(), rank_at(i));
}

Complex Resolution::p_slice(int lo, int hi) const {
    const auto& a = s_->target.algebra();
    if (s_->zero_resolution) return Complex(a);
    extend_to(hi);
    std::vector<Module> mods;
    std::vector<Mat> diffs;
    for (int i = lo; i <= hi; ++i) mods.push_back(module_at(i));
    for (int i = lo + 1; i <= hi; ++i) diffs.push_back(diff_at(i));
    return Complex(a, lo, std::move(mods), std::move(diffs), false);
}

ChainMap Resolution::pi_chain(int lo, int hi) const {
    Complex p = p_slice(lo, hi);
    std::map<int, Mat> comp;
    if (!s_->zero_resolution) {
        for (int i = std::max(lo, s_->t); i <= hi; ++i) {
            Mat m = pi_at(i);
            if (!m.is_zero()) comp[i] = std::move(m);
        }
    }
    return ChainMap(std::move(p), s_->target, 0, std::move(comp));
}

QuotModule Resolution::coker_at(int n) const {
    if (s_->zero_resolution || n < s_->t) {
        Module z = Module::zero(s_->target.algebra());
        return QuotModule{z, ModMap::identity(z)};
    }
    extend_to(n + 1);
    ModMap d = ModMap::unchecked(module_at(n + 1), module_at(n), diff_at(n + 1));
    return cokernel(d);
}

Resolution free_resolution(const Complex& m, int up_to, CoverStrategy strategy) {
    Resolution r(m, strategy);
    if (!r.is_zero_resolution()) r.extend_to(up_to);
    return r;
}

Resolution free_resolution(const Module& m, int up_to, CoverStrategy strategy) {
    return free_resolution(Complex::concentrated(m, 0), up_to, strategy);
}

Module syzygy(const Resolution& res, int n) { return res.coker_at(n).module; }

// ---------------------------------------------------------------------------
// Projective dimension
// ---------------------------------------------------------------------------

std::string PdResult::describe() const {
    switch (kind) {
        case Finite:
            return value == kNegInfinity ? "-inf" : std::to_string(value);
        case Infinite:
            return "infinite";
        case UnknownWithin:
        default:
            return "unknown within " + std::to_string(bound);
    }
}

PdResult pd(const Resolution& res, std::optional<int> gorenstein_n,
            std::optional<int> bound) {
    PdResult out;
    if (res.is_zero_resolution()) {
        out.kind = PdResult::Finite;
        out.value = kNegInfinity;
        return out;
    }
    const Complex& m = res.target();
    int sup_h = m.lo() - 1;
    for (int n = m.lo(); n <= m.hi(); ++n)
        if (homology_dim(m, n) > 0) sup_h = n;
    if (sup_h < m.lo()) {
        out.kind = PdResult::Finite;
        out.value = kNegInfinity;
        return out;
    }
    if (!gorenstein_n && !bound)
        throw ValidationError("pd needs a Gorenstein certificate or an explicit bound");
    int limit = gorenstein_n ? sup_h + *gorenstein_n : sup_h + *bound;
    for (int p = sup_h; p <= limit; ++p) {
        if (is_projective(syzygy(res, p)).projective) {
            out.kind = PdResult::Finite;
            out.value = p;
            return out;
        }
    }
    out.kind = gorenstein_n ? PdResult::Infinite : PdResult::UnknownWithin;
    out.bound = limit;
    return out;
}

// ---------------------------------------------------------------------------
// Lifting
// ---------------------------------------------------------------------------

ChainMap lift_morphism(const ChainMap& mu, const Resolution& res_src,
                       const Resolution& res_tgt, int lo, int hi) {
    Complex p_src = res_src.p_slice(lo, hi);
    Complex p_tgt = res_tgt.p_slice(lo, hi);
    const auto& a = mu.source().algebra();
    const std::uint32_t p = a->p();
    std::map<int, Mat> comp;
    Mat prev(p, 0, 0);
    for (int i = lo; i <= hi; ++i) {
        const Module& tgt_mod = p_tgt.module_at(i);
        int rank = 0;
        if (!res_src.is_zero_resolution() && i >= res_src.inf_degree())
            rank = res_src.rank_at(i);
        if (rank == 0) {
            prev = Mat(p, tgt_mod.dim(), p_src.module_at(i).dim());
            continue;
        }
        Mat gens = res_src.generators_at(i);
        Mat pi_tgt = res_tgt.is_zero_resolution()
                         ? Mat(p, mu.target().module_at(i).dim(), tgt_mod.dim())
                         : res_tgt.pi_at(i);
        Mat d_tgt = p_tgt.diff_at(i);
        Mat sys = Mat::vstack(pi_tgt, d_tgt);
        Mat rhs_top = mu.component(i) * (res_src.pi_at(i) * gens);
        if (prev.rows() != p_tgt.module_at(i - 1).dim() ||
            prev.cols() != p_src.module_at(i - 1).dim())
            prev = Mat(p, p_tgt.module_at(i - 1).dim(), p_src.module_at(i - 1).dim());
        Mat rhs_bot = prev * (p_src.diff_at(i) * gens);
        Mat rhs = Mat::vstack(rhs_top, rhs_bot);
        auto x = solve(sys, rhs);
        if (!x)
            throw SystemInfeasible("lift_morphism: no strict lift at degree " + std::to_string(i));
        Mat m_i = free_map_from_generators(a, tgt_mod, *x);
        prev = m_i;
        if (!m_i.is_zero()) comp[i] = std::move(m_i);
    }
    ChainMap out(std::move(p_src), std::move(p_tgt), 0, std::move(comp));
    check(out.is_morphism(), "lift_morphism produced a non-morphism");
    return out;
}

ChainMap lift_identity(const Resolution& from, const Resolution& to, int lo, int hi) {
    check(from.target().structurally_equal(to.target()),
          "lift_identity needs resolutions of one target");
    ChainMap id = ChainMap::identity(from.target());
    return lift_morphism(id, from, to, lo, hi);
}

// ---------------------------------------------------------------------------
// Horseshoe
// ---------------------------------------------------------------------------

namespace {

void check_exact_sequence(const ChainMap& mu, const ChainMap& mu_prime) {
    const Complex& sub = mu.source();
    const Complex& mid = mu.target();
    const Complex& quot = mu_prime.target();
    if (!mu.is_morphism() || !mu_prime.is_morphism())
        throw InputNotExact("sequence maps must be morphisms");
    int lo = std::min({sub.lo(), mid.lo(), quot.lo()});
    int hi = std::max({sub.hi(), mid.hi(), quot.hi()});
    for (int i = lo; i <= hi; ++i) {
        int ds = sub.module_at(i).dim(), dm = mid.module_at(i).dim(),
            dq = quot.module_at(i).dim();
        if (ds + dq != dm)
            throw InputNotExact("dimensions do not add up at degree " + std::to_string(i));
        if (rank(mu.component(i)) != ds)
            throw InputNotExact("first map not injective at degree " + std::to_string(i));
        if (rank(mu_prime.component(i)) != dq)
            throw InputNotExact("second map not surjective at degree " + std::to_string(i));
        if (!(mu_prime.component(i) * mu.component(i)).is_zero())
            throw InputNotExact("composite nonzero at degree " + std::to_string(i));
    }
}

} // namespace

HorseshoeDiagram horseshoe(const ChainMap& mu, const ChainMap& mu_prime, int up_to,
                           CoverStrategy strategy) {
    check_exact_sequence(mu, mu_prime);
    const Complex& m_mid = mu.target();
    const Complex& m_quot = mu_prime.target();
    const auto& a = mu.source().algebra();
    const std::uint32_t p = a->p();

    Resolution res_p(mu.source(), strategy);
    Resolution res_q = Resolution::strict(m_mid, strategy);

    int t = up_to;
    if (!res_p.is_zero_resolution()) t = std::min(t, res_p.inf_degree());
    if (!res_q.is_zero_resolution()) t = std::min(t, res_q.inf_degree());
    res_p.extend_to(up_to);
    res_q.extend_to(up_to);

    Complex p_sub = res_p.p_slice(t, up_to);
    Complex q = res_q.p_slice(t, up_to);

    // alpha: P -> Q with kappa alpha = mu pi
    ChainMap alpha = lift_morphism(mu, res_p, res_q, t, up_to);

    ConeData cd = cone(ChainMap::identity(p_sub));
    Complex cone_part = truncate_below(cd.cone, up_to);
    Complex p_mid = direct_sum_complex(cone_part, q);

    // P'': components P_{n-1} (+) Q_n, differential (p', q) -> (-dp', dq + alpha p')
    std::vector<Module> quot_mods;
    std::vector<Mat> quot_diffs;
    for (int n = t; n <= up_to; ++n)
        quot_mods.push_back(direct_sum(res_p.module_at(n - 1), res_q.module_at(n)).module);
    for (int n = t + 1; n <= up_to; ++n) {
        int pr = res_p.module_at(n - 2).dim(), qr = res_q.module_at(n - 1).dim();
        int pc = res_p.module_at(n - 1).dim(), qc = res_q.module_at(n).dim();
        Mat d(p, pr + qr, pc + qc);
        d.paste(res_p.diff_at(n - 1).negated(), 0, 0);
        d.paste(alpha.component(n - 1), pr, 0);
        d.paste(res_q.diff_at(n), pr, pc);
        quot_diffs.push_back(std::move(d));
    }
    Complex p_quot(a, t, std::move(quot_mods), std::move(quot_diffs));

    std::map<int, Mat> mu_bar_c, mu_bar_prime_c, nu_prime_c, nu_dp_c;
    for (int n = t; n <= up_to; ++n) {
        int pprev = res_p.module_at(n - 1).dim();
        int pcur = res_p.module_at(n).dim();
        int qcur = res_q.module_at(n).dim();
        Mat mb(p, pprev + pcur + qcur, pcur);
        mb.paste(Mat::identity(p, pcur), pprev, 0);
        mb.paste(alpha.component(n), pprev + pcur, 0);
        if (!mb.is_zero()) mu_bar_c[n] = std::move(mb);
        Mat mbp(p, pprev + qcur, pprev + pcur + qcur);
        mbp.paste(Mat::identity(p, pprev), 0, 0);
        mbp.paste(alpha.component(n).negated(), pprev, pprev);
        mbp.paste(Mat::identity(p, qcur), pprev, pprev + pcur);
        if (!mbp.is_zero()) mu_bar_prime_c[n] = std::move(mbp);
        Mat np(p, pcur, pprev + pcur + qcur);
        np.paste(Mat::identity(p, pcur), 0, pprev);
        nu_prime_c[n] = std::move(np);
        Mat nd(p, pprev + pcur + qcur, pprev + qcur);
        nd.paste(Mat::identity(p, pprev), 0, 0);
        nd.paste(Mat::identity(p, qcur), pprev + pcur, pprev);
        nu_dp_c[n] = std::move(nd);
    }
    ChainMap mu_bar(p_sub, p_mid, 0, std::move(mu_bar_c));
    ChainMap mu_bar_prime(p_mid, p_quot, 0, std::move(mu_bar_prime_c));

    ChainMap pi_sub = res_p.pi_chain(t, up_to);
    std::map<int, Mat> pi_mid_c, pi_quot_c;
    for (int n = t; n <= up_to; ++n) {
        int pprev = res_p.module_at(n - 1).dim();
        int pcur = res_p.module_at(n).dim();
        int qcur = res_q.module_at(n).dim();
        Mat kappa = res_q.is_zero_resolution() ? Mat(p, m_mid.module_at(n).dim(), qcur)
                                               : res_q.pi_at(n);
        Mat pm(p, m_mid.module_at(n).dim(), pprev + pcur + qcur);
        pm.paste(kappa, 0, pprev + pcur);
        if (!pm.is_zero()) pi_mid_c[n] = std::move(pm);
        Mat pq(p, m_quot.module_at(n).dim(), pprev + qcur);
        pq.paste(mu_prime.component(n) * kappa, 0, pprev);
        if (!pq.is_zero()) pi_quot_c[n] = std::move(pq);
    }
    ChainMap pi_mid(p_mid, m_mid, 0, std::move(pi_mid_c));
    ChainMap pi_quot(p_quot, m_quot, 0, std::move(pi_quot_c));
    check(pi_mid.is_morphism(), "horseshoe: middle augmentation not a morphism");
    check(pi_quot.is_morphism(), "horseshoe: quotient augmentation not a morphism");

    for (int n = t; n <= up_to; ++n) {
        check(pi_mid.component(n) * mu_bar.component(n) ==
                  mu.component(n) * pi_sub.component(n),
              "horseshoe: left square does not commute");
        check(pi_quot.component(n) * mu_bar_prime.component(n) ==
                  mu_prime.component(n) * pi_mid.component(n),
              "horseshoe: right square does not commute");
    }

    SplitSes bottom{p_sub, p_mid, p_quot, mu_bar, mu_bar_prime,
                    std::move(nu_prime_c), std::move(nu_dp_c)};
    bottom.validate();

    return HorseshoeDiagram{res_p, res_q, p_sub, p_mid, p_quot,
                            pi_sub, pi_mid, pi_quot,
                            mu_bar, mu_bar_prime, std::move(bottom)};
}

} // namespace homcx
