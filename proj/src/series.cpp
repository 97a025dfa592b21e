#include "ffk/series.hpp"

#include <cassert>

namespace ffk {

TruncatedSeries::TruncatedSeries(FieldElement center, std::vector<FieldElement> coeffs)
    : center_(std::move(center)), c_(std::move(coeffs)) {}

TruncatedSeries TruncatedSeries::zero(const Field& f, const FieldElement& center, unsigned prec) {
    return TruncatedSeries(center, std::vector<FieldElement>(prec, FieldElement::zero(f)));
}

TruncatedSeries TruncatedSeries::constant(const FieldElement& c, const FieldElement& center,
                                          unsigned prec) {
    auto r = zero(c.field(), center, prec);
    r.c_[0] = c;
    return r;
}

TruncatedSeries TruncatedSeries::of_polynomial(const DensePoly& p, const FieldElement& center,
                                               unsigned prec) {
    // Taylor shift: p(center + t) via Horner in (t + center)
    const Field& f = center.field();
    auto r = zero(f, center, prec);
    for (int i = p.degree(); i >= 0; --i) {
        // r := r * (t + center) + coeff
        std::vector<FieldElement> nc(prec, FieldElement::zero(f));
        for (unsigned j = 0; j < prec; ++j) {
            nc[j] = r.c_[j] * center;
            if (j > 0) nc[j] += r.c_[j - 1];
        }
        nc[0] += p.coeff((size_t)i);
        r.c_ = std::move(nc);
    }
    return r;
}

bool TruncatedSeries::is_zero() const {
    for (auto& x : c_)
        if (!x.is_zero()) return false;
    return true;
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
    assert(center_ == o.center_ && c_.size() == o.c_.size());
    TruncatedSeries r = *this;
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const {
    assert(center_ == o.center_ && c_.size() == o.c_.size());
    TruncatedSeries r = *this;
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
    return r;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
    assert(center_ == o.center_ && c_.size() == o.c_.size());
    const Field& f = field();
    TruncatedSeries r = zero(f, center_, (unsigned)c_.size());
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; i + j < c_.size(); ++j) {
            if (o.c_[j].is_zero()) continue;
            r.c_[i + j] += c_[i] * o.c_[j];
        }
    }
    return r;
}

TruncatedSeries TruncatedSeries::operator-() const {
    TruncatedSeries r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

TruncatedSeries TruncatedSeries::operator*(const FieldElement& s) const {
    TruncatedSeries r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
}

TruncatedSeries TruncatedSeries::truncated(unsigned prec) const {
    assert(prec <= c_.size());
    return TruncatedSeries(center_, std::vector<FieldElement>(c_.begin(), c_.begin() + prec));
}

TruncatedSeries TruncatedSeries::extended(unsigned prec) const {
    assert(prec >= c_.size());
    TruncatedSeries r = *this;
    r.c_.resize(prec, FieldElement::zero(field()));
    return r;
}

DensePoly TruncatedSeries::to_polynomial() const {
    // sum c_i (X - center)^i by Horner
    const Field& f = field();
    DensePoly lin = DensePoly::x(f) - DensePoly::constant(center_);
    DensePoly r = DensePoly::zero(f);
    for (size_t i = c_.size(); i-- > 0;) r = r * lin + DensePoly::constant(c_[i]);
    return r;
}

TruncatedSeries series_invert(const TruncatedSeries& a) {
    if (!a.is_unit()) raise(Err::NotAUnit, "series has zero constant term");
    const Field& f = a.field();
    const unsigned prec = a.precision();
    // Newton: z -> z(2 - a z), doubling the correct prefix each step
    TruncatedSeries z = TruncatedSeries::constant(invert(a.at(0)), a.center(), prec);
    TruncatedSeries two = TruncatedSeries::constant(FieldElement::from_int(f, 2), a.center(), prec);
    unsigned correct = 1;
    while (correct < prec) {
        z = z * (two - a * z);
        correct *= 2;
    }
    return z;
}

SeriesPoly::SeriesPoly(FieldElement center, unsigned prec, std::vector<TruncatedSeries> coeffs)
    : center_(std::move(center)), prec_(prec), c_(std::move(coeffs)) {
#ifndef NDEBUG
    for (auto& s : c_) assert(s.precision() == prec_ && s.center() == center_);
#endif
    normalize();
}

void SeriesPoly::normalize() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

SeriesPoly SeriesPoly::zero(const Field& f, const FieldElement& center, unsigned prec) {
    (void)f;
    return SeriesPoly(center, prec, {});
}

SeriesPoly SeriesPoly::y(const Field& f, const FieldElement& center, unsigned prec) {
    std::vector<TruncatedSeries> c{TruncatedSeries::zero(f, center, prec),
                                   TruncatedSeries::constant(FieldElement::one(f), center, prec)};
    return SeriesPoly(center, prec, std::move(c));
}

TruncatedSeries SeriesPoly::coeff(size_t i) const {
    if (i < c_.size()) return c_[i];
    return TruncatedSeries::zero(field(), center_, prec_);
}

const TruncatedSeries& SeriesPoly::lc() const {
    assert(!c_.empty());
    return c_.back();
}

SeriesPoly SeriesPoly::operator+(const SeriesPoly& o) const {
    std::vector<TruncatedSeries> r;
    size_t n = std::max(c_.size(), o.c_.size());
    r.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        if (i < c_.size() && i < o.c_.size()) r.push_back(c_[i] + o.c_[i]);
        else if (i < c_.size()) r.push_back(c_[i]);
        else r.push_back(o.c_[i]);
    }
    return SeriesPoly(center_, prec_, std::move(r));
}

SeriesPoly SeriesPoly::operator-(const SeriesPoly& o) const {
    return *this + (-o);
}

SeriesPoly SeriesPoly::operator-() const {
    std::vector<TruncatedSeries> r;
    r.reserve(c_.size());
    for (auto& s : c_) r.push_back(-s);
    return SeriesPoly(center_, prec_, std::move(r));
}

SeriesPoly SeriesPoly::operator*(const SeriesPoly& o) const {
    if (is_zero() || o.is_zero()) return SeriesPoly(center_, prec_, {});
    std::vector<TruncatedSeries> r(c_.size() + o.c_.size() - 1,
                                   TruncatedSeries::zero(field(), center_, prec_));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] = r[i + j] + c_[i] * o.c_[j];
    }
    return SeriesPoly(center_, prec_, std::move(r));
}

SeriesPoly SeriesPoly::scale(const TruncatedSeries& s) const {
    std::vector<TruncatedSeries> r;
    r.reserve(c_.size());
    for (auto& x : c_) r.push_back(x * s);
    return SeriesPoly(center_, prec_, std::move(r));
}

SeriesPoly SeriesPoly::derivative() const {
    if (c_.size() <= 1) return SeriesPoly(center_, prec_, {});
    std::vector<TruncatedSeries> r;
    r.reserve(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i)
        r.push_back(c_[i] * FieldElement::from_int(field(), (u64)i));
    return SeriesPoly(center_, prec_, std::move(r));
}

std::pair<SeriesPoly, SeriesPoly> series_div_rem(const SeriesPoly& f, const SeriesPoly& g) {
    assert(!g.is_zero());
    if (!g.lc().is_unit()) raise(Err::UnluckyCenter, "non-unit leading coefficient in division");
    const Field& fld = g.field();
    const auto& center = g.center();
    const unsigned prec = g.precision();
    if (f.degree() < g.degree()) return {SeriesPoly::zero(fld, center, prec), f};

    TruncatedSeries lci = series_invert(g.lc());
    std::vector<TruncatedSeries> r;
    for (int i = 0; i <= f.degree(); ++i) r.push_back(f.coeff((size_t)i));
    std::vector<TruncatedSeries> q((size_t)(f.degree() - g.degree() + 1),
                                   TruncatedSeries::zero(fld, center, prec));
    for (int i = f.degree(); i >= g.degree(); --i) {
        TruncatedSeries c = r[(size_t)i] * lci;
        if (c.is_zero()) continue;
        q[(size_t)(i - g.degree())] = c;
        for (int j = 0; j <= g.degree(); ++j)
            r[(size_t)(i - g.degree() + j)] = r[(size_t)(i - g.degree() + j)] - c * g.coeff((size_t)j);
    }
    return {SeriesPoly(center, prec, std::move(q)), SeriesPoly(center, prec, std::move(r))};
}

SeriesPoly series_rem(const SeriesPoly& f, const SeriesPoly& g) {
    return series_div_rem(f, g).second;
}

SeriesEea series_poly_eea(const SeriesPoly& f, const SeriesPoly& g) {
    assert(!f.is_zero() && !g.is_zero());
    const Field& fld = f.field();
    const auto& center = f.center();
    const unsigned prec = f.precision();

    SeriesPoly a = f, b = g;
    TruncatedSeries res = TruncatedSeries::constant(FieldElement::one(fld), center, prec);
    if (a.degree() < b.degree()) {
        if ((a.degree() & 1) && (b.degree() & 1)) res = -res;
        std::swap(a, b);
    }
    SeriesPoly last = a;
    while (true) {
        if (b.is_zero()) {
            // nonconstant a with no remainder left: resultant vanishes
            return {last, a.degree() == 0 ? res : TruncatedSeries::zero(fld, center, prec)};
        }
        last = b;
        if (b.degree() == 0) {
            // res *= lc(b)^{deg a}
            TruncatedSeries l = b.lc();
            for (int i = 0; i < a.degree(); ++i) res = res * l;
            return {last, res};
        }
        if (!b.lc().is_unit())
            raise(Err::UnluckyCenter, "leading coefficient vanishes at the expansion center");
        SeriesPoly r = series_rem(a, b);
        if ((a.degree() & 1) && (b.degree() & 1)) res = -res;
        int drop = a.degree() - (r.is_zero() ? 0 : r.degree());
        TruncatedSeries l = b.lc();
        for (int i = 0; i < drop; ++i) res = res * l;
        if (r.is_zero()) {
            return {b, b.degree() == 0 ? res : TruncatedSeries::zero(fld, center, prec)};
        }
        a = std::move(b);
        b = std::move(r);
    }
}

std::optional<SeriesPoly> series_quot_invert(const SeriesPoly& f, const SeriesPoly& m) {
    assert(!m.is_zero() && m.lc().is_unit());
    const Field& fld = m.field();
    const auto& center = m.center();
    const unsigned prec = m.precision();

    // inverse at the center: plain polynomial EEA over the field
    auto at_center = [&](const SeriesPoly& s) {
        std::vector<FieldElement> c;
        for (int i = 0; i <= s.degree(); ++i) c.push_back(s.coeff((size_t)i).at(0));
        return DensePoly(fld, std::move(c));
    };
    DensePoly f0 = at_center(f), m0 = at_center(m);
    if (f0.is_zero()) return std::nullopt;
    auto inv0 = upoly::invert_mod(f0, m0);
    if (!inv0) return std::nullopt;

    // t-adic Newton lifting: z -> z(2 - f z) mod m
    std::vector<TruncatedSeries> zc;
    for (int i = 0; i <= inv0->degree(); ++i)
        zc.push_back(TruncatedSeries::constant(inv0->coeff((size_t)i), center, prec));
    SeriesPoly z(center, prec, std::move(zc));
    SeriesPoly two(center, prec,
                   {TruncatedSeries::constant(FieldElement::from_int(fld, 2), center, prec)});
    unsigned correct = 1;
    while (correct < prec) {
        z = series_rem(z * (two - series_rem(f * z, m)), m);
        correct *= 2;
    }
    return z;
}

} // namespace ffk
