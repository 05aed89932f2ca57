#pragma once

/**
 * @file cohomology.hpp
 * @brief Ext, Tate and relative cohomology tables, the comparison maps
 *        between them, the four long exact sequences and the rigidity probe.
 *
 * All tables are indexed by the cohomological superscript (H^n = H_{-n}) and
 * carry their window explicitly; representatives are echelon-canonical.
 */

#include "homcx/gorenstein.hpp"
#include "homcx/verify.hpp"

namespace homcx {

struct CohomTable {
    enum Kind { Ext, Tate, Relative } kind = Ext;
    int lo = 0, hi = -1;
    std::map<int, int> dims;
    std::map<int, Mat> representatives; ///< canonical cocycle bases per degree

    int dim_at(int n) const {
        auto it = dims.find(n);
        return it == dims.end() ? 0 : it->second;
    }
    bool all_zero() const {
        for (auto& [n, d] : dims)
            if (d != 0) return false;
        return true;
    }
};

/// Per-degree matrices H^n(source) -> H^n(target) on a shared window.
struct NaturalMap {
    int lo = 0, hi = -1;
    std::map<int, Mat> maps;
    Mat at(int n) const;
};

// ---------------------------------------------------------------------------
// Tables
// ---------------------------------------------------------------------------

CohomTable ext_table(const Complex& m, const Complex& n, int lo, int hi);
CohomTable ext_table(const Module& m, const Module& n, int lo, int hi);

/// Tate table computed from a given complete resolution (for independence
/// testing); the window of T is derived from the requested degrees.
CohomTable tate_table_from(const CompleteResolution& cr, const Complex& n, int lo, int hi);
CohomTable tate_table(const Complex& m, const Complex& n, int lo, int hi,
                      const GorensteinCertificate& cert);
CohomTable tate_table(const Module& m, const Module& n, int lo, int hi,
                      const GorensteinCertificate& cert);

CohomTable relative_table(const Module& m, const Module& n, int lo, int hi,
                          const GorensteinCertificate& cert);

/// eps_hat: Ext^n -> TateExt^n induced by Hom(tau, N). For module arguments
/// the map is verified zero for n < 0 and bijective for n > Gpd(M).
NaturalMap eps_hat(const Complex& m, const Complex& n, int lo, int hi,
                   const GorensteinCertificate& cert);
NaturalMap eps_hat(const Module& m, const Module& n, int lo, int hi,
                   const GorensteinCertificate& cert);

/// eps_gp: relative Ext^n -> Ext^n induced by Hom(gamma, N).
NaturalMap eps_gp(const Module& m, const Module& n, int lo, int hi,
                  const GorensteinCertificate& cert);

// ---------------------------------------------------------------------------
// Long exact sequences
// ---------------------------------------------------------------------------

struct LesNode {
    std::string label;
    int dim = 0;
};

struct LesReport {
    std::string name;
    std::vector<LesNode> nodes;
    std::vector<Mat> maps;        ///< maps[i]: nodes[i] -> nodes[i+1]
    std::vector<bool> exact_at;   ///< verdict per interior node
    bool all_exact = false;
    bool compatibility_ok = false; ///< the displayed square with eps holds
    std::string describe() const;
};

/// Long exact Tate sequence in the second argument for an exact sequence
/// 0 -> N -> N' -> N'' -> 0 of bounded complexes.
LesReport les_tate_covariant(const Complex& m, const ChainMap& theta_n,
                             const ChainMap& theta_n_prime, int lo, int hi,
                             const GorensteinCertificate& cert);

/// Long exact Tate sequence in the first argument for an exact sequence of
/// bounded complexes of finite Gpd; built on the complete-resolution
/// Horseshoe.
LesReport les_tate_contravariant(const ChainMap& mu, const ChainMap& mu_prime,
                                 const Complex& n, int lo, int hi,
                                 const GorensteinCertificate& cert);

/// Relative cohomology long exact sequences for proper sequences of modules.
/// The properness test family consists of the Gorenstein projective bottoms
/// of the special resolutions in play plus the caller's extras; it is named
/// in the report.
struct PropernessReport {
    bool proper = false;
    std::vector<std::string> family;
    std::string failing_member;
};
PropernessReport check_proper(const ModMap& nu, const ModMap& nu_prime,
                              const std::vector<Module>& family,
                              const std::vector<std::string>& names);

LesReport les_relative_first(const ModMap& mu, const ModMap& mu_prime, const Module& n,
                             int top, const GorensteinCertificate& cert,
                             const std::vector<Module>& extra_family = {});
LesReport les_relative_second(const Module& m, const ModMap& nu, const ModMap& nu_prime,
                              int top, const GorensteinCertificate& cert,
                              const std::vector<Module>& extra_family = {});

// ---------------------------------------------------------------------------
// The interleaved sequence and rigidity
// ---------------------------------------------------------------------------

struct AmReport {
    int g = 0;
    bool collapsed = false;       ///< g = 0: Ext^n = TateExt^n for n >= 1
    LesReport les;                ///< the interleaved sequence (g >= 1)
    bool identification_ok = false; ///< H^n(Hom(T_flat, N)) matches the Tate table
    bool sign_identity_ok = false;  ///< connecting = (-1)^n eps_gp, snake-checked
};

AmReport am_sequence(const Module& m, const Module& n, const GorensteinCertificate& cert);

struct RigidityVerdict {
    PdResult pd_result;
    std::map<int, bool> tate_vanishes_at;  ///< over the sampled second arguments
    int ext0_self_dim = -1;                ///< dim TateExt^0(M, M) (modules)
    bool consistent = false;
    std::string detail;
};

RigidityVerdict rigidity_probe(const Complex& m, const GorensteinCertificate& cert,
                               int lo, int hi, const std::vector<Module>& family);

} // namespace homcx
