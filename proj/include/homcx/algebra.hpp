#pragma once

/**
 * @file algebra.hpp
 * @brief Finite-dimensional associative unital algebras over F_p, given by
 *        structure constants, plus the standard instance constructors.
 */

#include <memory>
#include <string>
#include <vector>

#include "homcx/fp.hpp"

namespace homcx {

/// A reported axiom violation from validate_algebra.
struct AlgebraDefect {
    enum Kind { NonAssociative, UnitFailure, ShapeMismatch } kind;
    int i = -1, j = -1, k = -1;
    std::string describe() const;
};

struct AlgebraData {
    std::uint32_t p = 2;
    int dim = 0;
    std::vector<std::string> basis_labels;
    std::vector<std::uint32_t> unit;                       // length dim
    std::vector<std::vector<std::vector<std::uint32_t>>> mul; // mul[i][j] = coords of e_i e_j
};

/// Validated associative unital algebra over a prime field.
class Algebra {
public:
    /// Throws ValidationError (with collected defects) on invalid data.
    static std::shared_ptr<const Algebra> make(AlgebraData data);

    /// Collects violated axioms without throwing; empty result means valid.
    static std::vector<AlgebraDefect> validate(const AlgebraData& data);

    const PrimeField& field() const { return field_; }
    std::uint32_t p() const { return field_.p(); }
    int dim() const { return data_.dim; }
    const std::vector<std::string>& basis_labels() const { return data_.basis_labels; }
    const std::vector<std::uint32_t>& unit() const { return data_.unit; }
    const AlgebraData& data() const { return data_; }

    /// Coordinates of e_i * e_j.
    const std::vector<std::uint32_t>& mul(int i, int j) const { return data_.mul[i][j]; }

    /// Matrix of left multiplication by e_i on the regular module.
    Mat left_mult(int i) const;
    /// Matrix of right multiplication by e_i.
    Mat right_mult(int i) const;
    /// Matrix of left multiplication by an arbitrary element.
    Mat left_mult_by(const std::vector<std::uint32_t>& coords) const;

    bool structurally_equal(const Algebra& o) const {
        return data_.p == o.data_.p && data_.dim == o.data_.dim &&
               data_.unit == o.data_.unit && data_.mul == o.data_.mul;
    }

private:
    explicit Algebra(AlgebraData data)
        : field_(data.p), data_(std::move(data)) {}

    PrimeField field_;
    AlgebraData data_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Opposite algebra: mul_op[i][j] = mul[j][i].
AlgebraPtr opposite(const AlgebraPtr& a);

/// F_p[x]/(x^n), basis 1, x, ..., x^{n-1}.
AlgebraPtr truncated_poly(std::uint32_t p, int n);

/// Upper triangular n x n matrices over F_p, basis E_{ij} (i <= j) in
/// row-major order.
AlgebraPtr triangular(std::uint32_t p, int n);

/// Tensor product A (x) B over the common prime field.
AlgebraPtr tensor_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

/// Direct product A x B.
AlgebraPtr product_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

} // namespace homcx
