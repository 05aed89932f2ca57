#pragma once

/**
 * @file resolution.hpp
 * @brief Bounded-below free resolutions of modules and bounded complexes,
 *        syzygies, projective dimension, comparison lifts and the Horseshoe
 *        construction.
 */

#include <limits>

#include "homcx/complex.hpp"

namespace homcx {

constexpr int kNegInfinity = std::numeric_limits<int>::min();

/// Lazy bounded-below complex of free modules P with a quasiisomorphism
/// pi: P -> target, built degree by degree from inf H(target) upward.
/// Extension is monotone: previously computed degrees never change.
class Resolution {
public:
    Resolution() = default;
    /// Target must be bounded. A target with zero homology yields the zero
    /// resolution (empty support).
    Resolution(Complex target, CoverStrategy strategy = CoverStrategy::Greedy);
    explicit Resolution(const Module& target, CoverStrategy strategy = CoverStrategy::Greedy);

    /// Strict variant: resolves from inf(target) instead of inf H(target),
    /// so pi is degreewise surjective even when the target has exact tails.
    static Resolution strict(Complex target, CoverStrategy strategy = CoverStrategy::Greedy);

    bool is_zero_resolution() const;
    /// inf P = inf H(target); throws when the resolution is zero.
    int inf_degree() const;
    int computed_up_to() const;
    void extend_to(int up_to) const;

    const Complex& target() const;
    CoverStrategy strategy() const;

    /// Free rank of P_i (0 outside the computed range below inf).
    int rank_at(int i) const;
    Module module_at(int i) const;
    Mat diff_at(int i) const;        ///< P_i -> P_{i-1}
    Mat pi_at(int i) const;          ///< P_i -> target_i
    Mat generators_at(int i) const;  ///< generator coordinates of P_i

    /// The resolution as a bounded complex on [lo, hi]; requires hi computed.
    Complex p_slice(int lo, int hi) const;
    /// pi as a chain map from the slice to the target.
    ChainMap pi_chain(int lo, int hi) const;

    /// C_n(P) = Coker d_{n+1}; extends the resolution to n+1 when needed.
    QuotModule coker_at(int n) const;

private:
    struct State;
    std::shared_ptr<State> s_;
};

/// Strict semiprojective resolution realized as a bounded-below free
/// resolution, computed through the given degree.
Resolution free_resolution(const Complex& m, int up_to,
                           CoverStrategy strategy = CoverStrategy::Greedy);
Resolution free_resolution(const Module& m, int up_to,
                           CoverStrategy strategy = CoverStrategy::Greedy);

/// n-th syzygy of a complex (module in degree 0 for module inputs).
Module syzygy(const Resolution& res, int n);

/// Projective dimension decision.
struct PdResult {
    enum Kind { Finite, Infinite, UnknownWithin } kind = UnknownWithin;
    int value = 0;   ///< meaningful for Finite; kNegInfinity for exact inputs
    int bound = 0;   ///< the scan bound used for Infinite / UnknownWithin
    bool is_finite() const { return kind == Finite; }
    std::string describe() const;
};

/// Decides pd by scanning coker projectivity from sup H(M) upward.
/// With a Gorenstein certificate value n the scan is complete at
/// sup H(M) + n and failure soundly reports Infinite; without one the
/// result after `bound` unsuccessful steps is UnknownWithin(bound).
PdResult pd(const Resolution& res, std::optional<int> gorenstein_n,
            std::optional<int> bound);

/// Lift of a morphism through resolutions: a strict lift with
/// pi' o lift = mu o pi degreewise, computed on [lo, hi].
ChainMap lift_morphism(const ChainMap& mu, const Resolution& res_src,
                       const Resolution& res_tgt, int lo, int hi);

/// Comparison lift of the identity between two resolutions of one target.
ChainMap lift_identity(const Resolution& from, const Resolution& to, int lo, int hi);

/// Horseshoe data for an exact sequence 0 -> M -> M' -> M'' -> 0 of bounded
/// complexes: a commutative diagram of resolutions with degreewise split
/// exact bottom row.
struct HorseshoeDiagram {
    Resolution res_sub;        ///< chosen resolution of M
    Resolution res_mid_aux;    ///< auxiliary strict resolution Q -> M'
    Complex p_sub, p_mid, p_quot;
    ChainMap pi_sub, pi_mid, pi_quot;
    ChainMap mu_bar;           ///< P -> P'
    ChainMap mu_bar_prime;     ///< P' -> P''
    SplitSes bottom;           ///< the split exact bottom row with splittings
};

/// Builds the Horseshoe diagram on resolution degrees [t, up_to]; the input
/// sequence must be exact (verified degreewise).
HorseshoeDiagram horseshoe(const ChainMap& mu, const ChainMap& mu_prime, int up_to,
                           CoverStrategy strategy = CoverStrategy::Greedy);

} // namespace homcx
