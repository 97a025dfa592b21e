#ifndef FFK_LINEAR_HPP
#define FFK_LINEAR_HPP

#include <optional>
#include <vector>

#include "ffk/field.hpp"

namespace ffk {

using Matrix = std::vector<std::vector<FieldElement>>;
using Vec = std::vector<FieldElement>;

Matrix identity_matrix(const Field& f, size_t n);
Vec mat_vec(const Matrix& m, const Vec& x);
FieldElement determinant(Matrix m);
// nullopt when singular
std::optional<Matrix> inverse(const Matrix& m);

// Affine change of coordinates y = M x + shift. When the matrix is square the
// inverse is computed and verified at construction.
class LinearForms {
public:
    LinearForms() = default;
    // SingularMatrix if square and not invertible
    LinearForms(Matrix m, Vec shift);

    static LinearForms identity(const Field& f, size_t n);
    static LinearForms sample_invertible(const Field& f, size_t n, Rng& rng);

    size_t rows() const { return mat_.size(); }
    size_t cols() const { return mat_.empty() ? 0 : mat_[0].size(); }
    bool square() const { return rows() == cols(); }
    const Matrix& matrix() const { return mat_; }
    const Vec& shift() const { return shift_; }
    const Matrix& inverse_matrix() const { return inv_; }

    Vec apply(const Vec& x) const;           // M x + shift
    Vec apply_inverse(const Vec& y) const;   // M^{-1} (y - shift)
    // single form: row i applied to x, plus shift_i
    FieldElement apply_row(size_t i, const Vec& x) const;

private:
    Matrix mat_;
    Vec shift_;
    Matrix inv_;
};

} // namespace ffk

#endif
