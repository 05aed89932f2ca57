#include "homcx/fp.hpp"

namespace homcx {

Echelon rref(Mat m) {
    PrimeField f(m.p());
    const int rows = m.rows(), cols = m.cols();
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i) {
            if (m(i, c) != 0) { piv = i; break; }
        }
        if (piv < 0) continue;
        if (piv != r) {
            for (int j = 0; j < cols; ++j) std::swap(m(piv, j), m(r, j));
        }
        std::uint32_t inv = f.inv(m(r, c));
        for (int j = c; j < cols; ++j) m(r, j) = f.mul(m(r, j), inv);
        for (int i = 0; i < rows; ++i) {
            if (i == r || m(i, c) == 0) continue;
            std::uint32_t factor = m(i, c);
            for (int j = c; j < cols; ++j)
                m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return Echelon{std::move(m), std::move(pivots)};
}

int rank(const Mat& m) { return rref(m).rank(); }

KerBasis kernel_basis_full(const Mat& a) {
    Echelon e = rref(a);
    const int cols = a.cols();
    std::vector<bool> is_pivot(cols, false);
    for (int c : e.pivots) is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < cols; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    PrimeField f(a.p());
    Mat k(a.p(), cols, int(free_cols.size()));
    for (int j = 0; j < int(free_cols.size()); ++j) {
        int fc = free_cols[j];
        k(fc, j) = 1;
        for (int pr = 0; pr < e.rank(); ++pr)
            k(e.pivots[pr], j) = f.neg(e.r(pr, fc));
    }
    return KerBasis{std::move(k), std::move(free_cols)};
}

Mat kernel_basis(const Mat& a) { return kernel_basis_full(a).basis; }

ColBasis column_space_basis(const Mat& a) {
    Echelon e = rref(a.transposed());
    Mat basis(a.p(), a.rows(), e.rank());
    for (int j = 0; j < e.rank(); ++j)
        for (int i = 0; i < a.rows(); ++i) basis(i, j) = e.r(j, i);
    return ColBasis{std::move(basis), e.pivots};
}

std::optional<Mat> solve(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows())
        throw ShapeMismatch("solve " + a.shape() + ", rhs " + b.shape());
    Echelon e = rref(Mat::hstack(a, b));
    // infeasible iff some pivot falls in the rhs block
    for (int c : e.pivots)
        if (c >= a.cols()) return std::nullopt;
    Mat x(a.p(), a.cols(), b.cols());
    for (int pr = 0; pr < e.rank(); ++pr) {
        int pc = e.pivots[pr];
        for (int j = 0; j < b.cols(); ++j) x(pc, j) = e.r(pr, a.cols() + j);
    }
    return x;
}

bool is_invertible(const Mat& a) {
    return a.rows() == a.cols() && rank(a) == a.rows();
}

Mat inverse(const Mat& a) {
    if (a.rows() != a.cols()) throw ShapeMismatch("inverse of non-square");
    auto x = solve(a, Mat::identity(a.p(), a.rows()));
    if (!x || rank(a) != a.rows()) throw ValidationError("matrix not invertible");
    return *x;
}

Mat coordinates_in(const ColBasis& cb, const Mat& v) {
    // Reduced column echelon basis: coordinates can be read off pivot rows.
    Mat coords = v.rows_selected(cb.pivot_rows);
    if (cb.basis * coords != v)
        throw ValidationError("vector outside span of basis");
    return coords;
}

} // namespace homcx
