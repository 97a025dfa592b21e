#include "ffk/linear.hpp"

#include <cassert>

namespace ffk {

Matrix identity_matrix(const Field& f, size_t n) {
    Matrix m(n, Vec(n, FieldElement::zero(f)));
    for (size_t i = 0; i < n; ++i) m[i][i] = FieldElement::one(f);
    return m;
}

Vec mat_vec(const Matrix& m, const Vec& x) {
    assert(m.empty() || m[0].size() == x.size());
    Vec r;
    r.reserve(m.size());
    for (auto& row : m) {
        FieldElement acc = FieldElement::zero(x.empty() ? row[0].field() : x[0].field());
        for (size_t j = 0; j < row.size(); ++j) acc += row[j] * x[j];
        r.push_back(acc);
    }
    return r;
}

FieldElement determinant(Matrix m) {
    assert(!m.empty() && m.size() == m[0].size());
    const Field& f = m[0][0].field();
    const size_t n = m.size();
    FieldElement det = FieldElement::one(f);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col].is_zero()) ++piv;
        if (piv == n) return FieldElement::zero(f);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        FieldElement ip = invert(m[col][col]);
        for (size_t i = col + 1; i < n; ++i) {
            if (m[i][col].is_zero()) continue;
            FieldElement fac = m[i][col] * ip;
            for (size_t j = col; j < n; ++j) m[i][j] -= fac * m[col][j];
        }
    }
    return det;
}

std::optional<Matrix> inverse(const Matrix& m) {
    assert(!m.empty() && m.size() == m[0].size());
    const Field& f = m[0][0].field();
    const size_t n = m.size();
    Matrix a = m;
    Matrix inv = identity_matrix(f, n);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col].is_zero()) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        FieldElement ip = invert(a[col][col]);
        for (size_t j = 0; j < n; ++j) {
            a[col][j] *= ip;
            inv[col][j] *= ip;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == col || a[i][col].is_zero()) continue;
            FieldElement fac = a[i][col];
            for (size_t j = 0; j < n; ++j) {
                a[i][j] -= fac * a[col][j];
                inv[i][j] -= fac * inv[col][j];
            }
        }
    }
    return inv;
}

LinearForms::LinearForms(Matrix m, Vec shift) : mat_(std::move(m)), shift_(std::move(shift)) {
    assert(mat_.size() == shift_.size());
    if (square() && !mat_.empty()) {
        auto inv = ffk::inverse(mat_);
        if (!inv) raise(Err::SingularMatrix, "linear change of variables is singular");
        inv_ = std::move(*inv);
        // verified: M * M^{-1} = I
        const Field& f = mat_[0][0].field();
        Matrix prod(rows(), Vec(rows(), FieldElement::zero(f)));
        for (size_t i = 0; i < rows(); ++i)
            for (size_t k = 0; k < rows(); ++k) {
                if (mat_[i][k].is_zero()) continue;
                for (size_t j = 0; j < rows(); ++j) prod[i][j] += mat_[i][k] * inv_[k][j];
            }
        assert(prod == identity_matrix(f, rows()));
    }
}

LinearForms LinearForms::identity(const Field& f, size_t n) {
    return LinearForms(identity_matrix(f, n), Vec(n, FieldElement::zero(f)));
}

LinearForms LinearForms::sample_invertible(const Field& f, size_t n, Rng& rng) {
    for (int trial = 0; trial < 64; ++trial) {
        Matrix m(n, Vec(n, FieldElement::zero(f)));
        for (auto& row : m)
            for (auto& e : row) e = sample_uniform(f, rng);
        if (determinant(m).is_zero()) continue;
        Vec shift;
        for (size_t i = 0; i < n; ++i) shift.push_back(sample_uniform(f, rng));
        return LinearForms(std::move(m), std::move(shift));
    }
    raise(Err::RetriesExhausted, "could not sample an invertible matrix");
}

Vec LinearForms::apply(const Vec& x) const {
    Vec r = mat_vec(mat_, x);
    for (size_t i = 0; i < r.size(); ++i) r[i] += shift_[i];
    return r;
}

Vec LinearForms::apply_inverse(const Vec& y) const {
    assert(square());
    Vec t = y;
    for (size_t i = 0; i < t.size(); ++i) t[i] -= shift_[i];
    return mat_vec(inv_, t);
}

FieldElement LinearForms::apply_row(size_t i, const Vec& x) const {
    FieldElement acc = shift_[i];
    for (size_t j = 0; j < mat_[i].size(); ++j) acc += mat_[i][j] * x[j];
    return acc;
}

} // namespace ffk
