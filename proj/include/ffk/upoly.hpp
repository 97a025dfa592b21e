#ifndef FFK_UPOLY_HPP
#define FFK_UPOLY_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ffk/field.hpp"

namespace ffk {

// Dense univariate polynomial over a FieldDescriptor. Coefficient index =
// exponent, never any trailing zeros; the zero polynomial has an empty
// coefficient vector and degree() == -1.
class DensePoly {
public:
    DensePoly() = default;
    explicit DensePoly(Field f) : f_(std::move(f)) {}
    DensePoly(Field f, std::vector<FieldElement> coeffs);

    static DensePoly zero(const Field& f) { return DensePoly(f); }
    static DensePoly constant(const FieldElement& c);
    static DensePoly from_ints(const Field& f, const std::vector<long long>& v);
    // the monomial c * X^e
    static DensePoly monomial(const FieldElement& c, size_t e);
    static DensePoly x(const Field& f);   // X

    const Field& field() const { return f_; }
    int degree() const { return (int)c_.size() - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<FieldElement>& coeffs() const { return c_; }
    // coefficient of X^i (zero beyond degree)
    FieldElement coeff(size_t i) const;
    FieldElement lc() const;   // leading coefficient; zero element if poly is zero

    bool operator==(const DensePoly& o) const { return c_ == o.c_; }
    bool operator!=(const DensePoly& o) const { return !(*this == o); }

    DensePoly operator+(const DensePoly& o) const;
    DensePoly operator-(const DensePoly& o) const;
    DensePoly operator*(const DensePoly& o) const;
    DensePoly operator-() const;
    DensePoly operator*(const FieldElement& s) const;

    FieldElement eval(const FieldElement& x) const;
    std::string str() const;   // "poly[c0,c1,...]" low-to-high, docs/tests only

    void normalize();   // strips trailing zeros

private:
    Field f_;
    std::vector<FieldElement> c_;
};

namespace upoly {

DensePoly derivative(const DensePoly& f);
DensePoly monic(const DensePoly& f);
// f(a*X + b)
DensePoly compose_affine(const DensePoly& f, const FieldElement& a, const FieldElement& b);
// f(g(X)) mod m (m monic); plain composition when m is null
DensePoly compose_mod(const DensePoly& f, const DensePoly& g, const DensePoly& m);

// f = q*g + r with deg r < deg g; DivisionByZero on g = 0
std::pair<DensePoly, DensePoly> div_rem(const DensePoly& f, const DensePoly& g);
DensePoly rem(const DensePoly& f, const DensePoly& g);

struct ExtGcd {
    DensePoly g, s, t;   // s*f + t*g0 = g, g monic
};
ExtGcd extended_gcd(const DensePoly& f, const DensePoly& g);
DensePoly gcd(const DensePoly& f, const DensePoly& g);
// inverse of f modulo m; nullopt if gcd(f, m) != 1
std::optional<DensePoly> invert_mod(const DensePoly& f, const DensePoly& m);

// Sylvester resultant, computed through the Euclidean remainder sequence
FieldElement resultant(const DensePoly& f, const DensePoly& g);

bool is_squarefree(const DensePoly& f);
// monic squarefree polynomial with the same roots over the closure;
// handles the f' = 0 branches by p-th root extraction
DensePoly squarefree_part(const DensePoly& f);

// f^e mod m (m monic)
DensePoly pow_mod(const DensePoly& f, u128 e, const DensePoly& m);
// X^{q^steps} mod m where q = p^k of the coefficient field
DensePoly frobenius_power_x(const DensePoly& m, unsigned steps);

// roots of f lying in the subfield of cardinality p^sub_k (sub_k divides k;
// sub_k = 0 means the whole coefficient field)
std::vector<FieldElement> roots_in_field(const DensePoly& f, Rng& rng, unsigned sub_k = 0);

std::vector<std::pair<DensePoly, unsigned>> factor(const DensePoly& f, Rng& rng);

DensePoly interpolate(const std::vector<std::pair<FieldElement, FieldElement>>& points);

} // namespace upoly

} // namespace ffk

#endif
