#include "ffk/embed.hpp"

#include <cassert>

namespace ffk {

FieldEmbedding FieldEmbedding::identity(const Field& f) {
    FieldEmbedding e;
    e.from_ = f;
    e.to_ = f;
    e.identity_ = true;
    return e;
}

FieldEmbedding FieldEmbedding::make(const Field& from, const Field& to, Rng& rng) {
    if (from->same_as(*to)) return identity(from);
    assert(from->p == to->p && to->k % from->k == 0);
    FieldEmbedding e;
    e.from_ = from;
    e.to_ = to;

    if (from->k == 1) {
        e.gen_image_ = FieldElement::one(to);
    } else {
        // modulus of the small field has all its roots in the big one; sending
        // the generator to the smallest root makes the choice deterministic
        std::vector<FieldElement> mc;
        for (u64 c : from->modulus) mc.push_back(FieldElement::from_int(to, c));
        DensePoly m(to, std::move(mc));
        auto roots = upoly::roots_in_field(m, rng);
        assert(!roots.empty());
        e.gen_image_ = roots.front();
    }

    e.basis_.assign(to->k, std::vector<u64>(from->k, 0));
    FieldElement powg = FieldElement::one(to);
    for (unsigned j = 0; j < from->k; ++j) {
        for (unsigned i = 0; i < to->k; ++i) e.basis_[i][j] = powg.coeffs()[i];
        powg *= e.gen_image_;
    }
    return e;
}

FieldElement FieldEmbedding::embed(const FieldElement& a) const {
    if (identity_) return a;
    assert(a.field()->same_as(*from_));
    // Horner in the generator image, coefficients are prime-field scalars
    FieldElement r = FieldElement::zero(to_);
    for (size_t i = a.coeffs().size(); i-- > 0;)
        r = r * gen_image_ + FieldElement::from_int(to_, a.coeffs()[i]);
    return r;
}

bool FieldEmbedding::in_image(const FieldElement& c) const {
    if (identity_) return true;
    return frobenius(c, (long)from_->k) == c;
}

FieldElement FieldEmbedding::project(const FieldElement& c) const {
    if (identity_) return c;
    assert(c.field()->same_as(*to_));
    const u64 p = to_->p;
    const unsigned rows = to_->k, cols = from_->k;
    // Gaussian elimination on [basis | c] over F_p
    std::vector<std::vector<u64>> a(rows, std::vector<u64>(cols + 1, 0));
    for (unsigned i = 0; i < rows; ++i) {
        for (unsigned j = 0; j < cols; ++j) a[i][j] = basis_[i][j];
        a[i][cols] = c.coeffs()[i];
    }
    auto mulm = [&](u64 x, u64 y) { return (u64)((u128)x * y % p); };
    auto invm = [&](u64 x) {
        u64 r = 1, b = x % p, e = p - 2;
        while (e) {
            if (e & 1) r = mulm(r, b);
            b = mulm(b, b);
            e >>= 1;
        }
        return r;
    };
    std::vector<int> pivot_of_col(cols, -1);
    unsigned row = 0;
    for (unsigned col = 0; col < cols && row < rows; ++col) {
        unsigned piv = row;
        while (piv < rows && a[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[row]);
        u64 ip = invm(a[row][col]);
        for (unsigned j = col; j <= cols; ++j) a[row][j] = mulm(a[row][j], ip);
        for (unsigned i = 0; i < rows; ++i) {
            if (i == row || a[i][col] == 0) continue;
            u64 f = a[i][col];
            for (unsigned j = col; j <= cols; ++j) {
                u64 sub = mulm(f, a[row][j]);
                a[i][j] = (a[i][j] + p - sub) % p;
            }
        }
        pivot_of_col[col] = (int)row;
        ++row;
    }
    std::vector<u64> y(cols, 0);
    for (unsigned col = 0; col < cols; ++col) {
        if (pivot_of_col[col] < 0) raise(Err::NotBaseField, "degenerate embedding basis");
        y[col] = a[(size_t)pivot_of_col[col]][cols];
    }
    FieldElement result(from_, std::move(y));
    // re-embedding catches inconsistent tails without tracking row echelon
    if (embed(result) != c)
        raise(Err::NotBaseField, "element " + c.str() + " is not in the base field");
    return result;
}

DensePoly FieldEmbedding::embed_poly(const DensePoly& f) const {
    if (identity_) return f;
    std::vector<FieldElement> c;
    c.reserve(f.coeffs().size());
    for (auto& x : f.coeffs()) c.push_back(embed(x));
    return DensePoly(to_, std::move(c));
}

DensePoly FieldEmbedding::project_poly(const DensePoly& f) const {
    if (identity_) return f;
    std::vector<FieldElement> c;
    c.reserve(f.coeffs().size());
    for (auto& x : f.coeffs()) c.push_back(project(x));
    return DensePoly(from_, std::move(c));
}

} // namespace ffk
