#pragma once

/**
 * @file gorenstein.hpp
 * @brief Gorenstein verification, Gorenstein projective dimension, totally
 *        acyclic complexes, complete resolutions, special resolutions and
 *        the Horseshoe for complete resolutions.
 *
 * Every decision procedure here is a bounded semi-decision carrying its
 * bound; downstream operations require an explicit certificate.
 */

#include "homcx/resolution.hpp"

namespace homcx {

/// Witness that the algebra is Iwanaga-Gorenstein with both one-sided
/// injective dimensions at most n().
struct GorensteinCertificate {
    AlgebraPtr algebra;
    int n_left = 0;   ///< injective dimension of the left regular module
    int n_right = 0;  ///< injective dimension of the right regular module
    int n() const { return std::max(n_left, n_right); }
};

/// Bounded decision of the Gorenstein property; nullopt means
/// "not Gorenstein within the bound" (honest failure, not a refutation).
std::optional<GorensteinCertificate> gorenstein_dimension(const AlgebraPtr& a, int bound);

/// Echelon-minimal module map X: from -> to with X * precompose = rhs.
std::optional<Mat> solve_map_precompose(const Module& from, const Module& to,
                                        const Mat& precompose, const Mat& rhs);
/// Echelon-minimal module map X: from -> to with postcompose * X = rhs.
std::optional<Mat> solve_map_postcompose(const Module& from, const Module& to,
                                         const Mat& postcompose, const Mat& rhs);

/// Ext^i(M, R) for i = 1..imax (dimension table).
std::vector<int> ext_against_regular(const Module& m, int imax);
/// dim Hom(M, R).
int hom_regular_dim(const Module& m);

/// Ext-vanishing test, sound and complete over a certified algebra.
bool is_gorenstein_projective(const Module& m, const GorensteinCertificate& cert);

/// Gorenstein projective dimension of a module; kNegInfinity for the zero
/// module. Cross-checked against the Ext-sup characterization.
int gpd_module(const Module& m, const GorensteinCertificate& cert);

/// Gorenstein projective dimension of a bounded complex; kNegInfinity for
/// exact complexes.
int gpd_complex(const Complex& m, const GorensteinCertificate& cert);
int gpd_of_resolution(const Resolution& res, const GorensteinCertificate& cert);

// ---------------------------------------------------------------------------
// Complete resolutions
// ---------------------------------------------------------------------------

/// Lazy complete resolution T -> P -> M: a two-sided totally acyclic T with
/// tau_i = id for i >= g, extendable in both directions. The negative arm is
/// spliced from the star-dual of a free resolution of the star-dual syzygy.
class CompleteResolution {
public:
    CompleteResolution() = default;

    int g() const;
    const Resolution& res() const;
    const AlgebraPtr& algebra() const;

    /// Ensures T, tau are computed for all degrees in [lo, hi].
    void extend_to(int lo, int hi) const;
    Module t_module(int i) const;
    Mat t_diff(int i) const;    ///< T_i -> T_{i-1}
    Mat tau_at(int i) const;    ///< T_i -> P_i (identity for i >= g)
    Complex t_slice(int lo, int hi) const;
    Complex p_slice(int lo, int hi) const;
    ChainMap tau_chain(int lo, int hi) const;

    /// Checks H(T) = 0, H(Hom(T, R)) = 0, tau a morphism and tau_i = id for
    /// i >= g on the window; records the largest verified window.
    void verify_window(int lo, int hi) const;
    std::pair<int, int> verified_window() const;

    struct State;
    std::shared_ptr<State> state() const { return s_; }

private:
    friend CompleteResolution complete_resolution_on(const Resolution&, int);
    friend CompleteResolution complete_from_special(const struct SpecialGpResolution&,
                                                    const Resolution&);
    friend CompleteResolution surjectify(const CompleteResolution&);
    std::shared_ptr<State> s_;
};

/// Complete resolution built on a given free resolution with identification
/// degree g; requires C_g(P) Gorenstein projective (biduality must close).
CompleteResolution complete_resolution_on(const Resolution& p, int g);

/// Complete resolution of a bounded complex with nonzero homology, with
/// g = gpd(M) computed from the certificate.
CompleteResolution complete_resolution(const Complex& m, const GorensteinCertificate& cert);
CompleteResolution complete_resolution(const Module& m, const GorensteinCertificate& cert);

/// Totally acyclic complex with C_0(T) = G for a Gorenstein projective G,
/// presented as the complete resolution of G (g = 0).
CompleteResolution totally_acyclic_from_gp(const Module& g, const GorensteinCertificate& cert);

/// Surjective variant: T' = T (+) contractible cone summand below g, with
/// tau' degreewise surjective and tau'_i = id for i >= g.
CompleteResolution surjectify(const CompleteResolution& cr);

/// Extends a degree-0 chain map T -> Q defined in degrees >= from_deg down
/// to to_deg by solving the commuting squares (solvable when T is totally
/// acyclic and the Q_i are projective). Returns all components.
std::map<int, Mat> extend_chain_map_down(const Complex& t, const Complex& q,
                                         std::map<int, Mat> partial,
                                         int from_deg, int to_deg);

// ---------------------------------------------------------------------------
// Special Gorenstein projective resolutions
// ---------------------------------------------------------------------------

struct SpecialGpResolution {
    int t = 0;              ///< inf H(M) = inf G
    int g = 0;              ///< sup G = Gpd(M)
    Complex g_complex;      ///< G_t Gorenstein projective, G_i projective above
    Complex p_used;         ///< the resolution slice the comparison lives on
    ChainMap gamma;         ///< P -> G, a quasiisomorphism
    ChainMap pi;            ///< P -> M
    std::optional<ChainMap> eps; ///< G -> M with eps o gamma = pi (module targets)
    Resolution res_p;       ///< the underlying lazy resolution of M
};

SpecialGpResolution special_gp_resolution(const Complex& m, const GorensteinCertificate& cert);
SpecialGpResolution special_gp_resolution(const Module& m, const GorensteinCertificate& cert);

/// Rebuilds a complete resolution from a special resolution: T = S^{-1}Cone(kappa)
/// with kappa = iota' o gamma, Ker tau = S^{-1}K.
CompleteResolution complete_from_special(const SpecialGpResolution& sp, const Resolution& p);

// ---------------------------------------------------------------------------
// Horseshoe for complete resolutions
// ---------------------------------------------------------------------------

struct TateHorseshoe {
    int g = 0;
    int lo = 0, hi = 0;             ///< T-row window
    HorseshoeDiagram resolutions;   ///< the P-row diagram
    Complex t_sub, t_mid, t_quot;
    ChainMap mu_hat;                ///< T -> T'
    ChainMap mu_hat_prime;          ///< T' -> T''
    ChainMap tau_sub, tau_mid, tau_quot; ///< columns, degreewise surjective
    SplitSes t_row;                 ///< with canonical splittings (for theta)
    std::map<int, Mat> delta;       ///< the correction maps T''_i -> P_i
};

/// Builds the simultaneous complete-resolution diagram for an exact sequence
/// of bounded complexes of finite Gorenstein projective dimension; T-row
/// data is produced on [lo, hi].
TateHorseshoe tate_horseshoe(const ChainMap& mu, const ChainMap& mu_prime,
                             const GorensteinCertificate& cert, int lo, int hi);

/// Lift of a morphism across complete resolutions; squares commute up to
/// homotopy (verified).
struct CompleteLift {
    ChainMap mu_bar;   ///< P -> P'
    ChainMap mu_hat;   ///< T -> T'
};
CompleteLift lift_to_complete(const ChainMap& mu, const CompleteResolution& cr_src,
                              const CompleteResolution& cr_tgt, int lo, int hi);

} // namespace homcx
