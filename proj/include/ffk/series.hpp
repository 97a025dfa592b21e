#ifndef FFK_SERIES_HPP
#define FFK_SERIES_HPP

#include <vector>

#include "ffk/upoly.hpp"

namespace ffk {

// Power series in (L - center) truncated at a fixed precision. Arithmetic
// never reads or writes past the precision; all binary operations require
// matching center and precision.
class TruncatedSeries {
public:
    TruncatedSeries() = default;
    TruncatedSeries(FieldElement center, std::vector<FieldElement> coeffs);

    static TruncatedSeries zero(const Field& f, const FieldElement& center, unsigned prec);
    static TruncatedSeries constant(const FieldElement& c, const FieldElement& center,
                                    unsigned prec);
    // expansion of a polynomial around the center, truncated
    static TruncatedSeries of_polynomial(const DensePoly& p, const FieldElement& center,
                                         unsigned prec);

    const Field& field() const { return center_.field(); }
    const FieldElement& center() const { return center_; }
    unsigned precision() const { return (unsigned)c_.size(); }
    const std::vector<FieldElement>& coeffs() const { return c_; }
    const FieldElement& at(size_t i) const { return c_[i]; }

    bool is_zero() const;
    bool is_unit() const { return !c_.empty() && !c_[0].is_zero(); }

    bool operator==(const TruncatedSeries& o) const {
        return center_ == o.center_ && c_ == o.c_;
    }
    TruncatedSeries operator+(const TruncatedSeries& o) const;
    TruncatedSeries operator-(const TruncatedSeries& o) const;
    TruncatedSeries operator*(const TruncatedSeries& o) const;
    TruncatedSeries operator-() const;
    TruncatedSeries operator*(const FieldElement& s) const;

    TruncatedSeries truncated(unsigned prec) const;
    TruncatedSeries extended(unsigned prec) const;   // zero-pads (valid for exact data)

    // the polynomial whose expansion this is, assuming degrees < precision
    DensePoly to_polynomial() const;

private:
    FieldElement center_;
    std::vector<FieldElement> c_;
};

// a^{-1} by Newton iteration with precision doubling; NotAUnit if the
// constant term vanishes
TruncatedSeries series_invert(const TruncatedSeries& a);

// Polynomial in an outer variable with TruncatedSeries coefficients, all
// sharing center and precision. Trailing exact-zero coefficients trimmed.
class SeriesPoly {
public:
    SeriesPoly() = default;
    SeriesPoly(FieldElement center, unsigned prec, std::vector<TruncatedSeries> coeffs);

    static SeriesPoly zero(const Field& f, const FieldElement& center, unsigned prec);
    static SeriesPoly y(const Field& f, const FieldElement& center, unsigned prec);

    const Field& field() const { return center_.field(); }
    const FieldElement& center() const { return center_; }
    unsigned precision() const { return prec_; }
    int degree() const { return (int)c_.size() - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<TruncatedSeries>& coeffs() const { return c_; }
    TruncatedSeries coeff(size_t i) const;
    const TruncatedSeries& lc() const;

    bool operator==(const SeriesPoly& o) const { return c_ == o.c_; }
    SeriesPoly operator+(const SeriesPoly& o) const;
    SeriesPoly operator-(const SeriesPoly& o) const;
    SeriesPoly operator*(const SeriesPoly& o) const;
    SeriesPoly operator-() const;
    SeriesPoly scale(const TruncatedSeries& s) const;

    SeriesPoly derivative() const;
    void normalize();

private:
    FieldElement center_;
    unsigned prec_ = 0;
    std::vector<TruncatedSeries> c_;
};

// f = q g + r over the series-coefficient ring; requires unit lc(g)
std::pair<SeriesPoly, SeriesPoly> series_div_rem(const SeriesPoly& f, const SeriesPoly& g);
SeriesPoly series_rem(const SeriesPoly& f, const SeriesPoly& g);

struct SeriesEea {
    SeriesPoly last_nonzero_remainder;
    TruncatedSeries resultant;
};

// Euclidean remainder sequence treating series coefficients as scalars;
// every leading coefficient that must be inverted is checked for unit
// status. UnluckyCenter when a nonzero non-unit blocks the division.
SeriesEea series_poly_eea(const SeriesPoly& f, const SeriesPoly& g);

// inverse of f mod m lifted t-adically from the inverse at the center;
// nullopt when gcd(f(center), m(center)) != 1
std::optional<SeriesPoly> series_quot_invert(const SeriesPoly& f, const SeriesPoly& m);

} // namespace ffk

#endif
