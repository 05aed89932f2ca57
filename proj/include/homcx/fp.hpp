#pragma once

/**
 * @file fp.hpp
 * @brief Exact dense linear algebra over prime fields F_p (p < 2^16).
 *
 * All matrix entries are canonical residues in [0, p). Elimination uses a
 * single fixed pivot rule (first nonzero entry, columns left to right, rows
 * top to bottom), so every derived object (rank, kernel basis, solutions)
 * is deterministic and suitable for golden tests.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "homcx/errors.hpp"

namespace homcx {

/// Prime field F_p with 2 <= p < 2^16.
class PrimeField {
public:
    explicit PrimeField(std::uint32_t p) : p_(p) {
        if (p < 2 || p >= (1u << 16) || !is_prime(p))
            throw ValidationError("not a prime in [2, 2^16): " + std::to_string(p));
    }

    std::uint32_t p() const { return p_; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
        return a >= b ? a - b : a + p_ - b;
    }
    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return static_cast<std::uint32_t>((std::uint64_t(a) * b) % p_);
    }
    std::uint32_t inv(std::uint32_t a) const {
        if (a == 0) throw ValidationError("inverse of zero");
        // extended Euclid
        std::int64_t t = 0, nt = 1, r = p_, nr = a;
        while (nr != 0) {
            std::int64_t q = r / nr;
            std::int64_t tmp = t - q * nt; t = nt; nt = tmp;
            tmp = r - q * nr; r = nr; nr = tmp;
        }
        if (t < 0) t += p_;
        return static_cast<std::uint32_t>(t);
    }
    /// Canonical residue of an arbitrary signed integer.
    std::uint32_t residue(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        if (r < 0) r += p_;
        return static_cast<std::uint32_t>(r);
    }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }

    static bool is_prime(std::uint32_t n) {
        if (n < 2) return false;
        for (std::uint32_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

private:
    std::uint32_t p_;
};

/// Dense matrix over F_p, row-major storage.
class Mat {
public:
    Mat() : p_(2), rows_(0), cols_(0) {}
    Mat(std::uint32_t p, int rows, int cols)
        : p_(p), rows_(rows), cols_(cols), a_(std::size_t(rows) * cols, 0) {
        if (rows < 0 || cols < 0) throw ShapeMismatch("negative matrix dimension");
    }

    static Mat identity(std::uint32_t p, int n) {
        Mat m(p, n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static Mat zero(std::uint32_t p, int rows, int cols) { return Mat(p, rows, cols); }

    std::uint32_t p() const { return p_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    std::uint32_t& operator()(int r, int c) { return a_[std::size_t(r) * cols_ + c]; }
    std::uint32_t operator()(int r, int c) const { return a_[std::size_t(r) * cols_ + c]; }

    bool operator==(const Mat& o) const {
        return p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    bool is_zero() const {
        for (auto v : a_) if (v != 0) return false;
        return true;
    }
    bool is_identity() const {
        if (rows_ != cols_) return false;
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if ((*this)(i, j) != (i == j ? 1u : 0u)) return false;
        return true;
    }

    Mat operator*(const Mat& o) const {
        if (cols_ != o.rows_)
            throw ShapeMismatch("matmul " + shape() + " * " + o.shape());
        Mat r(p_, rows_, o.cols_);
        for (int i = 0; i < rows_; ++i) {
            for (int k = 0; k < cols_; ++k) {
                std::uint64_t v = (*this)(i, k);
                if (v == 0) continue;
                for (int j = 0; j < o.cols_; ++j) {
                    std::uint64_t acc = r(i, j) + v * o(k, j);
                    r(i, j) = static_cast<std::uint32_t>(acc % p_);
                }
            }
        }
        return r;
    }
    Mat operator+(const Mat& o) const {
        require_same_shape(o, "add");
        PrimeField f(p_);
        Mat r(p_, rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = f.add(a_[i], o.a_[i]);
        return r;
    }
    Mat operator-(const Mat& o) const {
        require_same_shape(o, "sub");
        PrimeField f(p_);
        Mat r(p_, rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = f.sub(a_[i], o.a_[i]);
        return r;
    }
    Mat negated() const {
        PrimeField f(p_);
        Mat r(p_, rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = f.neg(a_[i]);
        return r;
    }
    Mat scaled(std::uint32_t c) const {
        PrimeField f(p_);
        Mat r(p_, rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = f.mul(a_[i], c);
        return r;
    }
    Mat transposed() const {
        Mat r(p_, cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    Mat col(int j) const {
        Mat r(p_, rows_, 1);
        for (int i = 0; i < rows_; ++i) r(i, 0) = (*this)(i, j);
        return r;
    }
    void set_col(int j, const Mat& v) {
        for (int i = 0; i < rows_; ++i) (*this)(i, j) = v(i, 0);
    }
    Mat rows_selected(const std::vector<int>& idx) const {
        Mat r(p_, int(idx.size()), cols_);
        for (int i = 0; i < int(idx.size()); ++i)
            for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(idx[i], j);
        return r;
    }
    Mat cols_selected(const std::vector<int>& idx) const {
        Mat r(p_, rows_, int(idx.size()));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < int(idx.size()); ++j) r(i, j) = (*this)(i, idx[j]);
        return r;
    }

    static Mat hstack(const Mat& a, const Mat& b) {
        if (a.rows_ != b.rows_ || a.p_ != b.p_) throw ShapeMismatch("hstack");
        Mat r(a.p_, a.rows_, a.cols_ + b.cols_);
        for (int i = 0; i < a.rows_; ++i) {
            for (int j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
            for (int j = 0; j < b.cols_; ++j) r(i, a.cols_ + j) = b(i, j);
        }
        return r;
    }
    static Mat vstack(const Mat& a, const Mat& b) {
        if (a.cols_ != b.cols_ || a.p_ != b.p_) throw ShapeMismatch("vstack");
        Mat r(a.p_, a.rows_ + b.rows_, a.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
        for (int i = 0; i < b.rows_; ++i)
            for (int j = 0; j < a.cols_; ++j) r(a.rows_ + i, j) = b(i, j);
        return r;
    }
    static Mat block_diag(const Mat& a, const Mat& b) {
        if (a.p_ != b.p_) throw ShapeMismatch("block_diag field");
        Mat r(a.p_, a.rows_ + b.rows_, a.cols_ + b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
        for (int i = 0; i < b.rows_; ++i)
            for (int j = 0; j < b.cols_; ++j) r(a.rows_ + i, a.cols_ + j) = b(i, j);
        return r;
    }
    /// Writes `b` into this matrix with top-left corner at (r0, c0).
    void paste(const Mat& b, int r0, int c0) {
        for (int i = 0; i < b.rows_; ++i)
            for (int j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }
    Mat block(int r0, int c0, int nr, int nc) const {
        Mat r(p_, nr, nc);
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
        return r;
    }

    /// Row-major flattening of the matrix as a rows*cols column vector.
    Mat vectorized() const {
        Mat v(p_, rows_ * cols_, 1);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) v(r * cols_ + c, 0) = (*this)(r, c);
        return v;
    }
    static Mat from_vectorized(const Mat& v, int rows, int cols) {
        Mat m(v.p(), rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) m(r, c) = v(r * cols + c, 0);
        return m;
    }

    std::string shape() const {
        return std::to_string(rows_) + "x" + std::to_string(cols_);
    }

    const std::vector<std::uint32_t>& data() const { return a_; }
    std::vector<std::uint32_t>& data() { return a_; }

private:
    void require_same_shape(const Mat& o, const char* op) const {
        if (rows_ != o.rows_ || cols_ != o.cols_ || p_ != o.p_)
            throw ShapeMismatch(std::string(op) + " " + shape() + " vs " + o.shape());
    }

    std::uint32_t p_;
    int rows_, cols_;
    std::vector<std::uint32_t> a_;
};

/// Result of an in-place reduced row echelon computation.
struct Echelon {
    Mat r;                     ///< the RREF matrix
    std::vector<int> pivots;   ///< pivot column per pivot row, increasing
    int rank() const { return int(pivots.size()); }
};

/// Reduced row echelon form under the fixed pivot rule.
Echelon rref(Mat m);

int rank(const Mat& m);

/// Basis of {x : A x = 0} as matrix columns, in reduced form: each basis
/// vector carries a unit entry at its free coordinate and zeros at the free
/// coordinates of the others. Deterministic.
Mat kernel_basis(const Mat& a);

/// Kernel basis plus the unit coordinate of each basis column, so that
/// coordinates in the kernel can be read off those rows.
struct KerBasis {
    Mat basis;
    std::vector<int> unit_rows;
};
KerBasis kernel_basis_full(const Mat& a);

/// Basis of the column space in reduced column echelon form, together with
/// the pivot row per basis column (increasing).
struct ColBasis {
    Mat basis;               ///< n x r, reduced column echelon form
    std::vector<int> pivot_rows;
};
ColBasis column_space_basis(const Mat& a);

/// Echelon-minimal solution X of A X = B (free variables set to zero), or
/// nullopt when the system is infeasible.
std::optional<Mat> solve(const Mat& a, const Mat& b);

/// True when the matrix is invertible; n x n only.
bool is_invertible(const Mat& a);

/// Inverse of an invertible square matrix.
Mat inverse(const Mat& a);

/// Coordinates of the columns of `v` in the span of the reduced column
/// echelon basis `cb` (throws if some column is outside the span).
Mat coordinates_in(const ColBasis& cb, const Mat& v);

} // namespace homcx
