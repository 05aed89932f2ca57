#pragma once

/**
 * @file instances.hpp
 * @brief Instance generators: standard small modules and seeded random
 *        modules, maps and exact sequences for the verification suites.
 */

#include "homcx/io.hpp"
#include "homcx/verify.hpp"

namespace homcx {

/// One-dimensional module on which every non-unit basis direction acts by
/// zero (valid over local algebras such as F_p[x]/(x^n) and tensor powers).
Module trivial_simple(const AlgebraPtr& a);

/// The simple module of the triangular algebra with projective cover of
/// length 1 (the basis order is E11, E12, E22 for n = 2).
Module triangular_simple_top(const AlgebraPtr& triangular2);

/// Module over product_algebra(a, b) from a module over one factor.
Module lift_to_product(const AlgebraPtr& prod, const Module& m, int factor, int dim_a);

/// Random submodule of a free module, closed under the action.
Module random_submodule(const AlgebraPtr& a, Rng& rng, int max_rank);
/// Random quotient of a free module.
Module random_quotient(const AlgebraPtr& a, Rng& rng, int max_rank);
/// Random module (submodule or quotient of a small free module).
Module random_module(const AlgebraPtr& a, Rng& rng, int max_rank);

/// Random module map as a combination of hom-space basis elements.
ModMap random_map(const Module& m, const Module& n, Rng& rng);

struct ModuleSes {
    Module sub, mid, quot;
    ModMap inj, surj;
};
/// Random short exact sequence: submodule inclusion with its quotient.
ModuleSes random_ses(const AlgebraPtr& a, Rng& rng, int max_rank);

/// Random bounded complex: a direct sum of shifted two-term complexes.
Complex random_complex(const AlgebraPtr& a, Rng& rng, int max_rank, int lo, int hi);

/// The stock algebra list used by the verification suites.
std::vector<AlgebraPtr> suite_algebras();

} // namespace homcx
