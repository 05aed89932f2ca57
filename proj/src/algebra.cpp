#include "homcx/algebra.hpp"

#include <sstream>

namespace homcx {

std::string AlgebraDefect::describe() const {
    std::ostringstream os;
    switch (kind) {
        case NonAssociative:
            os << "NonAssociative(" << i << "," << j << "," << k << ")";
            break;
        case UnitFailure:
            os << "UnitFailure(" << i << ")";
            break;
        case ShapeMismatch:
            os << "ShapeMismatch";
            break;
    }
    return os.str();
}

namespace {

std::vector<std::uint32_t> mul_coords(const AlgebraData& d, const PrimeField& f,
                                      const std::vector<std::uint32_t>& x,
                                      const std::vector<std::uint32_t>& y) {
    std::vector<std::uint32_t> out(d.dim, 0);
    for (int i = 0; i < d.dim; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < d.dim; ++j) {
            if (y[j] == 0) continue;
            std::uint32_t c = f.mul(x[i], y[j]);
            const auto& e = d.mul[i][j];
            for (int k = 0; k < d.dim; ++k)
                out[k] = f.add(out[k], f.mul(c, e[k]));
        }
    }
    return out;
}

std::vector<std::uint32_t> basis_vec(int dim, int i) {
    std::vector<std::uint32_t> v(dim, 0);
    v[i] = 1;
    return v;
}

} // namespace

std::vector<AlgebraDefect> Algebra::validate(const AlgebraData& d) {
    std::vector<AlgebraDefect> defects;
    if (d.dim <= 0 || int(d.unit.size()) != d.dim || int(d.mul.size()) != d.dim ||
        (int(d.basis_labels.size()) != d.dim && !d.basis_labels.empty())) {
        defects.push_back({AlgebraDefect::ShapeMismatch});
        return defects;
    }
    for (const auto& row : d.mul) {
        if (int(row.size()) != d.dim) {
            defects.push_back({AlgebraDefect::ShapeMismatch});
            return defects;
        }
        for (const auto& e : row)
            if (int(e.size()) != d.dim) {
                defects.push_back({AlgebraDefect::ShapeMismatch});
                return defects;
            }
    }
    PrimeField f(d.p);
    for (const auto& row : d.mul)
        for (const auto& e : row)
            for (auto v : e)
                if (v >= d.p) {
                    defects.push_back({AlgebraDefect::ShapeMismatch});
                    return defects;
                }

    // unit acts as two-sided identity on every basis element
    for (int i = 0; i < d.dim; ++i) {
        auto ei = basis_vec(d.dim, i);
        if (mul_coords(d, f, d.unit, ei) != ei || mul_coords(d, f, ei, d.unit) != ei)
            defects.push_back({AlgebraDefect::UnitFailure, i});
    }
    // associativity on all basis triples
    for (int i = 0; i < d.dim; ++i)
        for (int j = 0; j < d.dim; ++j)
            for (int k = 0; k < d.dim; ++k) {
                auto left = mul_coords(d, f, d.mul[i][j], basis_vec(d.dim, k));
                auto right = mul_coords(d, f, basis_vec(d.dim, i), d.mul[j][k]);
                if (left != right)
                    defects.push_back({AlgebraDefect::NonAssociative, i, j, k});
            }
    return defects;
}

std::shared_ptr<const Algebra> Algebra::make(AlgebraData data) {
    if (data.basis_labels.empty()) {
        for (int i = 0; i < data.dim; ++i)
            data.basis_labels.push_back("e" + std::to_string(i));
    }
    auto defects = validate(data);
    if (!defects.empty()) {
        std::string msg = "invalid algebra:";
        for (std::size_t i = 0; i < defects.size() && i < 8; ++i)
            msg += " " + defects[i].describe();
        throw ValidationError(msg);
    }
    return std::shared_ptr<const Algebra>(new Algebra(std::move(data)));
}

Mat Algebra::left_mult(int i) const {
    Mat m(p(), dim(), dim());
    for (int j = 0; j < dim(); ++j) {
        const auto& col = data_.mul[i][j]; // e_i * e_j
        for (int k = 0; k < dim(); ++k) m(k, j) = col[k];
    }
    return m;
}

Mat Algebra::right_mult(int i) const {
    Mat m(p(), dim(), dim());
    for (int j = 0; j < dim(); ++j) {
        const auto& col = data_.mul[j][i]; // e_j * e_i
        for (int k = 0; k < dim(); ++k) m(k, j) = col[k];
    }
    return m;
}

Mat Algebra::left_mult_by(const std::vector<std::uint32_t>& coords) const {
    Mat m(p(), dim(), dim());
    for (int i = 0; i < dim(); ++i) {
        if (coords[i] == 0) continue;
        m = m + left_mult(i).scaled(coords[i]);
    }
    return m;
}

AlgebraPtr opposite(const AlgebraPtr& a) {
    AlgebraData d = a->data();
    for (int i = 0; i < d.dim; ++i)
        for (int j = 0; j < d.dim; ++j)
            d.mul[i][j] = a->data().mul[j][i];
    return Algebra::make(std::move(d));
}

AlgebraPtr truncated_poly(std::uint32_t p, int n) {
    if (n < 1) throw ValidationError("truncated_poly needs n >= 1");
    AlgebraData d;
    d.p = p;
    d.dim = n;
    d.unit.assign(n, 0);
    d.unit[0] = 1;
    for (int i = 0; i < n; ++i) {
        std::string lab = i == 0 ? "1" : (i == 1 ? "x" : "x^" + std::to_string(i));
        d.basis_labels.push_back(lab);
    }
    d.mul.assign(n, std::vector<std::vector<std::uint32_t>>(n, std::vector<std::uint32_t>(n, 0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i + j < n) d.mul[i][j][i + j] = 1;
    return Algebra::make(std::move(d));
}

AlgebraPtr triangular(std::uint32_t p, int n) {
    if (n < 1) throw ValidationError("triangular needs n >= 1");
    // basis E_{rc} with r <= c, row-major
    std::vector<std::pair<int, int>> basis;
    for (int r = 0; r < n; ++r)
        for (int c = r; c < n; ++c) basis.emplace_back(r, c);
    int d = int(basis.size());
    AlgebraData ad;
    ad.p = p;
    ad.dim = d;
    ad.unit.assign(d, 0);
    for (int t = 0; t < d; ++t) {
        auto [r, c] = basis[t];
        ad.basis_labels.push_back("E" + std::to_string(r + 1) + std::to_string(c + 1));
        if (r == c) ad.unit[t] = 1;
    }
    ad.mul.assign(d, std::vector<std::vector<std::uint32_t>>(d, std::vector<std::uint32_t>(d, 0)));
    for (int s = 0; s < d; ++s)
        for (int t = 0; t < d; ++t) {
            auto [a, b] = basis[s];
            auto [c, e] = basis[t];
            if (b != c) continue; // E_ab E_ce = delta_bc E_ae
            for (int u = 0; u < d; ++u)
                if (basis[u] == std::make_pair(a, e)) ad.mul[s][t][u] = 1;
        }
    return Algebra::make(std::move(ad));
}

AlgebraPtr tensor_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
    if (a->p() != b->p()) throw FieldMismatch("tensor_algebra over different primes");
    PrimeField f(a->p());
    int da = a->dim(), db = b->dim(), d = da * db;
    AlgebraData ad;
    ad.p = a->p();
    ad.dim = d;
    ad.unit.assign(d, 0);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < db; ++j) {
            ad.basis_labels.push_back(a->basis_labels()[i] + "*" + b->basis_labels()[j]);
            ad.unit[i * db + j] = f.mul(a->unit()[i], b->unit()[j]);
        }
    ad.mul.assign(d, std::vector<std::vector<std::uint32_t>>(d, std::vector<std::uint32_t>(d, 0)));
    for (int i1 = 0; i1 < da; ++i1)
        for (int j1 = 0; j1 < db; ++j1)
            for (int i2 = 0; i2 < da; ++i2)
                for (int j2 = 0; j2 < db; ++j2) {
                    const auto& ma = a->mul(i1, i2);
                    const auto& mb = b->mul(j1, j2);
                    auto& out = ad.mul[i1 * db + j1][i2 * db + j2];
                    for (int k1 = 0; k1 < da; ++k1)
                        for (int k2 = 0; k2 < db; ++k2)
                            out[k1 * db + k2] = f.mul(ma[k1], mb[k2]);
                }
    return Algebra::make(std::move(ad));
}

AlgebraPtr product_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
    if (a->p() != b->p()) throw FieldMismatch("product_algebra over different primes");
    int da = a->dim(), db = b->dim(), d = da + db;
    AlgebraData ad;
    ad.p = a->p();
    ad.dim = d;
    ad.unit.assign(d, 0);
    for (int i = 0; i < da; ++i) {
        ad.basis_labels.push_back(a->basis_labels()[i] + "#1");
        ad.unit[i] = a->unit()[i];
    }
    for (int j = 0; j < db; ++j) {
        ad.basis_labels.push_back(b->basis_labels()[j] + "#2");
        ad.unit[da + j] = b->unit()[j];
    }
    ad.mul.assign(d, std::vector<std::vector<std::uint32_t>>(d, std::vector<std::uint32_t>(d, 0)));
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j)
            for (int k = 0; k < da; ++k) ad.mul[i][j][k] = a->mul(i, j)[k];
    for (int i = 0; i < db; ++i)
        for (int j = 0; j < db; ++j)
            for (int k = 0; k < db; ++k) ad.mul[da + i][da + j][da + k] = b->mul(i, j)[k];
    return Algebra::make(std::move(ad));
}

} // namespace homcx
