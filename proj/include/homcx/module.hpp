#pragma once

/**
 * @file module.hpp
 * @brief Finitely generated left modules over a structure-constant algebra
 *        and the exact category operations on them.
 *
 * A module is a finite-dimensional F_p space with one action matrix per
 * algebra basis element (acting on column vectors). Every operation here is
 * total on the zero module and deterministic under the fixed pivot rule.
 */

#include <memory>
#include <optional>
#include <vector>

#include "homcx/algebra.hpp"

namespace homcx {

class Module {
public:
    Module() = default;
    /// Validates the action: unit acts as identity and the action matrices
    /// represent the structure constants.
    Module(AlgebraPtr algebra, std::vector<Mat> action);

    /// Zero module.
    static Module zero(AlgebraPtr algebra);

    const AlgebraPtr& algebra() const { return alg_; }
    int dim() const { return dim_; }
    bool is_zero() const { return dim_ == 0; }
    const Mat& action(int i) const { return action_[i]; }
    const std::vector<Mat>& actions() const { return action_; }
    /// Action matrix of an arbitrary algebra element.
    Mat action_of(const std::vector<std::uint32_t>& coords) const;

    bool structurally_equal(const Module& o) const {
        return dim_ == o.dim_ && action_ == o.action_ &&
               alg_->structurally_equal(*o.alg_);
    }

private:
    AlgebraPtr alg_;
    int dim_ = 0;
    std::vector<Mat> action_;
};

/// Homomorphism of modules over the same algebra, stored as a
/// (codomain.dim x domain.dim) matrix. Intertwining is validated.
class ModMap {
public:
    ModMap() = default;
    ModMap(Module domain, Module codomain, Mat matrix);

    /// Builds without the intertwining check (for matrices known valid).
    static ModMap unchecked(Module domain, Module codomain, Mat matrix);

    static ModMap zero(const Module& domain, const Module& codomain);
    static ModMap identity(const Module& m);

    const Module& domain() const { return dom_; }
    const Module& codomain() const { return cod_; }
    const Mat& matrix() const { return mat_; }

    bool is_intertwining() const;

    ModMap compose(const ModMap& inner) const;  // (*this) o inner
    ModMap operator+(const ModMap& o) const;
    ModMap operator-(const ModMap& o) const;
    ModMap negated() const;

private:
    Module dom_, cod_;
    Mat mat_;
};

// ---------------------------------------------------------------------------
// Construction of standard modules
// ---------------------------------------------------------------------------

/// The algebra as a left module over itself.
Module regular_module(const AlgebraPtr& a);

/// Free module of rank r (block sum of regular modules). Generator j sits in
/// coordinate block [j*d, (j+1)*d).
Module free_module(const AlgebraPtr& a, int r);

/// The value of an A-linear map out of free_module(a, r) determined by its
/// values on the generators (columns of gen_values, one per generator).
Mat free_map_from_generators(const AlgebraPtr& a, const Module& target,
                             const Mat& gen_values);

/// Generator coordinates of free_module(a, r): column j is generator j.
Mat free_generators(const AlgebraPtr& a, int r);

// ---------------------------------------------------------------------------
// Kernels, cokernels, images
// ---------------------------------------------------------------------------

struct SubModule {
    Module module;
    ModMap inclusion;
};
struct QuotModule {
    Module module;
    ModMap projection;
};

/// Kernel with basis in reduced form and induced action.
SubModule kernel(const ModMap& f);
/// Image as a submodule of the codomain.
SubModule image(const ModMap& f);
/// Cokernel with its projection.
QuotModule cokernel(const ModMap& f);

// ---------------------------------------------------------------------------
// Hom spaces
// ---------------------------------------------------------------------------

/// Basis of Hom_A(M, N) as an F_p space, with cheap coordinatization.
class HomBasis {
public:
    HomBasis() = default;
    HomBasis(Module m, Module n, Mat flat_basis);

    int dim() const { return flat_.cols(); }
    const Module& source() const { return m_; }
    const Module& target() const { return n_; }
    /// The k-th basis map as a matrix.
    Mat basis_map(int k) const;
    /// Coordinates of an intertwining map in this basis (throws if outside).
    Mat coordinates(const Mat& map) const;
    /// The map with the given coordinate vector.
    Mat map_of(const Mat& coords) const;

private:
    Module m_, n_;
    Mat flat_;                    // (dimN*dimM) x k, kernel_basis reduced form
    std::vector<int> free_idx_;   // unit-entry positions per basis column
};

HomBasis hom_space(const Module& m, const Module& n);

// ---------------------------------------------------------------------------
// Covers, projectivity, duality, sums
// ---------------------------------------------------------------------------

enum class CoverStrategy {
    Greedy,    ///< keep a basis vector only if outside the submodule generated so far
    AllBasis,  ///< keep every basis vector as a generator
};

struct FreeCover {
    Module free;          ///< free module on the kept generators
    ModMap projection;    ///< surjective map onto M
    SubModule ker;        ///< kernel of the projection
    std::vector<int> generators; ///< indices of kept basis vectors of M
};

/// Deterministic free cover; generator scan follows basis index order.
FreeCover free_cover(const Module& m, CoverStrategy strategy = CoverStrategy::Greedy);

struct ProjectivityWitness {
    bool projective = false;
    ModMap section;     ///< with projection o section = id when projective
    ModMap projection;  ///< the free cover used
};

/// True iff the free cover splits; the witness section is returned on success.
ProjectivityWitness is_projective(const Module& m);

/// F_p-linear dual as a module over the opposite algebra.
Module linear_dual(const Module& m);
/// Dual of a map under linear_dual (transpose).
ModMap linear_dual_map(const ModMap& f, const Module& dual_cod, const Module& dual_dom);

struct StarDual {
    Module dual;          ///< Hom_A(M, A) as a module over opposite(A)
    HomBasis hom;         ///< the underlying Hom basis used as coordinates
};

/// (-)* = Hom_A(-, A) with its right-module structure.
StarDual star_dual(const Module& m, const AlgebraPtr& op_algebra);

/// The canonical biduality map M -> (M*)*.
struct Biduality {
    StarDual star;        ///< M*
    StarDual double_star; ///< (M*)*
    ModMap eval;          ///< M -> (M*)*
};
Biduality biduality(const Module& m);

struct DirectSum {
    Module module;
    ModMap inj1, inj2, proj1, proj2;
};
DirectSum direct_sum(const Module& a, const Module& b);

/// Star-dual of a map f: M -> N, as a map N* -> M* in the given bases.
ModMap star_dual_map(const ModMap& f, const StarDual& dual_of_codomain,
                     const StarDual& dual_of_domain);

} // namespace homcx
