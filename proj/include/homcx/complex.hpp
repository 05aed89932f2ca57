#pragma once

/**
 * @file complex.hpp
 * @brief Bounded complexes of modules, chain maps, homotopies, cones, shifts,
 *        Hom complexes and the connecting-morphism machinery.
 *
 * Conventions, used consistently everywhere:
 *   - homological (lower) indexing, differentials drop degree by one;
 *   - H^n := H_{-n};
 *   - shift: (S^i M)_n = M_{n-i} with differential (-1)^i d_{n-i};
 *   - Hom differential d(f) = d^N f - (-1)^{|f|} f d^M;
 *   - cone of a morphism t: M -> N: Cone(t)_n = M_{n-1} (+) N_n with
 *     d(m, x) = (-d m, d x - t m).
 */

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "homcx/module.hpp"

namespace homcx {

/// Bounded complex of modules over a fixed algebra. Degrees outside the
/// stored window carry the zero module.
class Complex {
public:
    Complex(); ///< empty complex over the one-dimensional F_2 algebra
    explicit Complex(AlgebraPtr algebra);
    /// modules[k] sits in degree lo+k; diffs[k]: modules[k+1] -> modules[k].
    Complex(AlgebraPtr algebra, int lo, std::vector<Module> modules,
            std::vector<Mat> diffs, bool validate = true);

    /// Single module concentrated in the given degree.
    static Complex concentrated(const Module& m, int degree);

    const AlgebraPtr& algebra() const { return alg_; }
    /// Smallest and largest degree of the stored window (lo > hi when empty).
    int lo() const { return lo_; }
    int hi() const { return hi_; }
    bool window_empty() const { return lo_ > hi_; }

    const Module& module_at(int n) const;
    /// Differential M_n -> M_{n-1} (a zero matrix outside the window).
    Mat diff_at(int n) const;
    ModMap diff_map(int n) const;

    /// sup/inf of the degrees with nonzero module; nullopt when zero complex.
    std::optional<int> sup() const;
    std::optional<int> inf() const;

    /// Drops zero modules at both ends of the window.
    Complex trimmed() const;

    bool structurally_equal(const Complex& o) const;

private:
    void validate_complex() const;

    AlgebraPtr alg_;
    int lo_ = 0, hi_ = -1;
    std::vector<Module> mods_;
    std::vector<Mat> diffs_; // diffs_[k]: degree lo_+k+1 -> lo_+k
    Module zero_;
};

/// Degree-n family of module maps f_i: M_i -> N_{i+n}.
class ChainMap {
public:
    ChainMap() = default;
    ChainMap(Complex source, Complex target, int degree,
             std::map<int, Mat> components);

    static ChainMap zero(const Complex& source, const Complex& target, int degree = 0);
    static ChainMap identity(const Complex& c);

    const Complex& source() const { return *src_; }
    const Complex& target() const { return *tgt_; }
    int degree() const { return deg_; }

    /// Component M_i -> N_{i+deg} (zero matrix when absent).
    Mat component(int i) const;
    void set_component(int i, Mat m);

    /// d^N f = (-1)^{|f|} f d^M degreewise.
    bool is_chain_map() const;
    bool is_morphism() const { return deg_ == 0 && is_chain_map(); }
    bool is_zero() const;

    ChainMap compose(const ChainMap& inner) const; // (*this) o inner
    ChainMap operator+(const ChainMap& o) const;
    ChainMap operator-(const ChainMap& o) const;
    ChainMap negated() const;
    ChainMap scaled(std::uint32_t c) const;

private:
    std::shared_ptr<const Complex> src_, tgt_;
    int deg_ = 0;
    std::map<int, Mat> comp_;
};

// ---------------------------------------------------------------------------
// Elementary constructions
// ---------------------------------------------------------------------------

Complex shift(const Complex& c, int i);
/// Shift of a chain map (components reindexed, same degree).
ChainMap shift_map(const ChainMap& f, int i);

struct ConeData {
    Complex cone;
    ChainMap from_target;   ///< N -> Cone(t)
    ChainMap to_shifted;    ///< Cone(t) -> S M
    /// graded (non-chain) splittings of the cone sequence
    std::map<int, Mat> split_to_target;    ///< Cone_n -> N_n
    std::map<int, Mat> split_from_shifted; ///< (S M)_n -> Cone_n
};
/// Mapping cone of a morphism, with the canonical degreewise split sequence
/// 0 -> N -> Cone(t) -> S M -> 0.
ConeData cone(const ChainMap& t);

Complex direct_sum_complex(const Complex& a, const Complex& b);

/// Hard truncation keeping degrees >= n (differential at n dropped).
Complex truncate_above(const Complex& c, int n);
/// Hard truncation keeping degrees <= n.
Complex truncate_below(const Complex& c, int n);

// ---------------------------------------------------------------------------
// Homology
// ---------------------------------------------------------------------------

/// Homology data at a fixed degree with canonical representative cycles.
class Homology {
public:
    Homology() = default;
    Homology(const Complex& c, int n);

    int dim() const { return reps_.cols(); }
    /// Canonical cycle representatives (columns, echelon form).
    const Mat& representatives() const { return reps_; }
    /// Coordinates of a cycle's class in the representative basis.
    Mat class_of(const Mat& cycle) const;
    /// True when v is a cycle at this degree.
    bool is_cycle(const Mat& v) const;

private:
    Mat boundaries_;       // column basis of Im d_{n+1}
    ColBasis bnd_basis_;
    Mat reps_;             // canonical representatives
    ColBasis rep_basis_;   // for coordinate read-off after reduction
    Mat cycle_test_;       // d_n
};

/// dim H_n(C).
int homology_dim(const Complex& c, int n);
/// All homology dimensions on [lo, hi].
std::map<int, int> homology_table(const Complex& c, int lo, int hi);
/// H(C) = 0 within the stored window (hence everywhere, C bounded).
bool is_exact(const Complex& c);

/// Induced map H_n(f): H_n(source) -> H_n(target + degree shift).
Mat homology_map(const ChainMap& f, int n, const Homology& hn_src, const Homology& hn_tgt);

bool is_quasiiso(const ChainMap& f);

/// C_n(M) = Coker d_{n+1}, with the projection from M_n.
QuotModule coker_at(const Complex& c, int n);

// ---------------------------------------------------------------------------
// Hom complexes (complexes of F_p spaces over the one-dimensional algebra)
// ---------------------------------------------------------------------------

struct HomComplex {
    Complex complex;                        ///< over the trivial algebra
    /// slot bases: hom degree n, source degree i -> basis of Hom(M_i, N_{i+n})
    std::map<int, std::map<int, HomBasis>> slots;
    /// offset of slot (n, i) inside the degree-n component
    std::map<int, std::map<int, int>> offsets;

    /// Coordinates of a degree-n homomorphism family inside component n.
    Mat pack(int n, const std::map<int, Mat>& components) const;
    /// The (n, i) block of a packed vector as a matrix M_i -> N_{i+n}.
    Mat unpack(int n, int i, const Mat& packed) const;
};

/// Hom_R(M, N) as a complex of F_p spaces; component n collects maps of
/// degree n, differential d(f) = d^N f - (-1)^n f d^M.
HomComplex hom_complex(const Complex& m, const Complex& n, int lo, int hi);

/// The trivial one-dimensional algebra over F_p (shared per prime).
AlgebraPtr trivial_algebra(std::uint32_t p);

// ---------------------------------------------------------------------------
// Homotopies and contractibility
// ---------------------------------------------------------------------------

/// Solves d(k) = f - g for a homotopy k of degree |f|+1; nullopt when the
/// (coupled, windowed) linear system is infeasible.
std::optional<ChainMap> solve_homotopy(const ChainMap& f, const ChainMap& g);

bool is_contractible(const Complex& c);

// ---------------------------------------------------------------------------
// Split exact sequences and connecting morphisms
// ---------------------------------------------------------------------------

/// Exact sequence 0 -> M -> M' -> M'' -> 0 of complexes that splits
/// degreewise as modules, with chosen splittings.
struct SplitSes {
    Complex sub, mid, quot;
    ChainMap mu;        ///< M -> M'
    ChainMap mu_prime;  ///< M' -> M''
    std::map<int, Mat> nu_prime;        ///< M' -> M, graded splitting
    std::map<int, Mat> nu_doubleprime;  ///< M'' -> M', graded splitting

    Mat nu_prime_at(int i) const;
    Mat nu_doubleprime_at(int i) const;

    /// Validates exactness and the four splitting identities.
    void validate() const;
};

/// Builds a SplitSes from an exact pair by solving for module-linear
/// splittings degreewise; throws SplittingInvalid when none exist.
SplitSes make_split_ses(const ChainMap& mu, const ChainMap& mu_prime);

/// theta = nu' d^{M'} nu'': M'' -> S M; a morphism whose induced map in
/// homology is the connecting homomorphism.
ChainMap theta(const SplitSes& ses);

/// Connecting homomorphism of the induced Hom long exact sequence,
/// H^{n-1}(Hom(M, N)) -> H^n(Hom(M'', N)), computed as (-1)^n H^n(Hom(theta, N)).
Mat connecting_hom_first_arg(const SplitSes& ses, const Complex& n_cx, int n,
                             const HomComplex& hom_sub, const HomComplex& hom_quot);

/// Map of Hom complexes induced by a chain map in the first argument
/// (precomposition): Hom(B, N) -> Hom(A, N) for f: A -> B of degree 0.
ChainMap hom_induced_first(const ChainMap& f, const Complex& n_cx,
                           const HomComplex& hom_b, const HomComplex& hom_a);
/// Induced map in the second argument (postcomposition):
/// Hom(M, A) -> Hom(M, B) for g: A -> B.
ChainMap hom_induced_second(const Complex& m, const ChainMap& g,
                            const HomComplex& hom_a, const HomComplex& hom_b);

/// Factorization of a morphism f: M -> N through M # Cone(id) with a
/// degreewise surjective second factor.
struct ConeFactorization {
    Complex through;        ///< M (+) contractible complex built from N
    ChainMap mu;            ///< M -> through, homotopy equivalence
    ChainMap surjection;    ///< through -> N, degreewise surjective
    ChainMap mu_inverse;    ///< through -> M, with mu_inverse o mu = id
};
ConeFactorization factor_through_cone(const ChainMap& f);

} // namespace homcx
