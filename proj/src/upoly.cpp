#include "ffk/upoly.hpp"

#include <algorithm>
#include <cassert>

namespace ffk {

namespace {
constexpr size_t kKaratsubaCrossover = 32;
}

DensePoly::DensePoly(Field f, std::vector<FieldElement> coeffs)
    : f_(std::move(f)), c_(std::move(coeffs)) {
    normalize();
}

void DensePoly::normalize() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

DensePoly DensePoly::constant(const FieldElement& c) {
    DensePoly r(c.field());
    if (!c.is_zero()) r.c_.push_back(c);
    return r;
}

DensePoly DensePoly::from_ints(const Field& f, const std::vector<long long>& v) {
    std::vector<FieldElement> c;
    c.reserve(v.size());
    for (long long x : v) c.push_back(FieldElement::from_signed(f, x));
    return DensePoly(f, std::move(c));
}

DensePoly DensePoly::monomial(const FieldElement& c, size_t e) {
    DensePoly r(c.field());
    if (c.is_zero()) return r;
    r.c_.assign(e + 1, FieldElement::zero(c.field()));
    r.c_[e] = c;
    return r;
}

DensePoly DensePoly::x(const Field& f) {
    return monomial(FieldElement::one(f), 1);
}

FieldElement DensePoly::coeff(size_t i) const {
    if (i < c_.size()) return c_[i];
    return FieldElement::zero(f_);
}

FieldElement DensePoly::lc() const {
    if (c_.empty()) return FieldElement::zero(f_);
    return c_.back();
}

DensePoly DensePoly::operator+(const DensePoly& o) const {
    const Field& f = f_ ? f_ : o.f_;
    std::vector<FieldElement> r(std::max(c_.size(), o.c_.size()), FieldElement::zero(f));
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return DensePoly(f, std::move(r));
}

DensePoly DensePoly::operator-(const DensePoly& o) const {
    const Field& f = f_ ? f_ : o.f_;
    std::vector<FieldElement> r(std::max(c_.size(), o.c_.size()), FieldElement::zero(f));
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return DensePoly(f, std::move(r));
}

DensePoly DensePoly::operator-() const {
    std::vector<FieldElement> r(c_.size(), FieldElement::zero(f_));
    for (size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
    return DensePoly(f_, std::move(r));
}

DensePoly DensePoly::operator*(const FieldElement& s) const {
    if (s.is_zero()) return DensePoly(f_);
    std::vector<FieldElement> r(c_.size(), FieldElement::zero(f_));
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] * s;
    return DensePoly(f_, std::move(r));
}

namespace {

using Coeffs = std::vector<FieldElement>;

Coeffs mul_school(const Coeffs& a, const Coeffs& b, const Field& f) {
    Coeffs r(a.size() + b.size() - 1, FieldElement::zero(f));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (b[j].is_zero()) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

Coeffs mul_rec(const Coeffs& a, const Coeffs& b, const Field& f) {
    if (a.empty() || b.empty()) return {};
    if (std::min(a.size(), b.size()) < kKaratsubaCrossover) return mul_school(a, b, f);
    const size_t h = (std::max(a.size(), b.size()) + 1) / 2;
    auto split = [&](const Coeffs& v) {
        Coeffs lo(v.begin(), v.begin() + std::min(h, v.size()));
        Coeffs hi(v.size() > h ? Coeffs(v.begin() + h, v.end()) : Coeffs{});
        return std::make_pair(lo, hi);
    };
    auto [a0, a1] = split(a);
    auto [b0, b1] = split(b);
    auto addv = [&](const Coeffs& x, const Coeffs& y) {
        Coeffs r(std::max(x.size(), y.size()), FieldElement::zero(f));
        for (size_t i = 0; i < x.size(); ++i) r[i] = x[i];
        for (size_t i = 0; i < y.size(); ++i) r[i] += y[i];
        return r;
    };
    Coeffs z0 = mul_rec(a0, b0, f);
    Coeffs z2 = (a1.empty() || b1.empty()) ? Coeffs{} : mul_rec(a1, b1, f);
    Coeffs z1 = mul_rec(addv(a0, a1), addv(b0, b1), f);
    Coeffs r(a.size() + b.size() - 1, FieldElement::zero(f));
    for (size_t i = 0; i < z0.size(); ++i) r[i] += z0[i];
    for (size_t i = 0; i < z1.size(); ++i) {
        FieldElement m = z1[i];
        if (i < z0.size()) m -= z0[i];
        if (i < z2.size()) m -= z2[i];
        if (i + h < r.size()) r[i + h] += m;
    }
    for (size_t i = 0; i < z2.size(); ++i) r[i + 2 * h] += z2[i];
    return r;
}

} // namespace

DensePoly DensePoly::operator*(const DensePoly& o) const {
    const Field& f = f_ ? f_ : o.f_;
    if (is_zero() || o.is_zero()) return DensePoly(f);
    return DensePoly(f, mul_rec(c_, o.c_, f));
}

FieldElement DensePoly::eval(const FieldElement& x) const {
    FieldElement r = FieldElement::zero(x.field());
    for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
}

std::string DensePoly::str() const {
    std::string s = "poly[";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) s += ",";
        s += c_[i].str();
    }
    return s + "]";
}

namespace upoly {

DensePoly derivative(const DensePoly& f) {
    if (f.degree() < 1) return DensePoly::zero(f.field());
    std::vector<FieldElement> r;
    r.reserve(f.degree());
    for (int i = 1; i <= f.degree(); ++i)
        r.push_back(f.coeff(i) * FieldElement::from_int(f.field(), (u64)i));
    return DensePoly(f.field(), std::move(r));
}

DensePoly monic(const DensePoly& f) {
    if (f.is_zero() || f.lc().is_one()) return f;
    return f * invert(f.lc());
}

DensePoly compose_affine(const DensePoly& f, const FieldElement& a, const FieldElement& b) {
    // Horner over the argument a*X + b
    DensePoly arg = DensePoly::monomial(a, 1) + DensePoly::constant(b);
    DensePoly r = DensePoly::zero(f.field());
    for (int i = f.degree(); i >= 0; --i)
        r = r * arg + DensePoly::constant(f.coeff((size_t)i));
    return r;
}

DensePoly compose_mod(const DensePoly& f, const DensePoly& g, const DensePoly& m) {
    DensePoly r = DensePoly::zero(f.field());
    for (int i = f.degree(); i >= 0; --i) {
        r = r * g + DensePoly::constant(f.coeff((size_t)i));
        if (!m.is_zero()) r = rem(r, m);
    }
    return r;
}

std::pair<DensePoly, DensePoly> div_rem(const DensePoly& f, const DensePoly& g) {
    if (g.is_zero()) raise(Err::DivisionByZero, "polynomial division by zero");
    const Field& fld = g.field();
    if (f.degree() < g.degree()) return {DensePoly::zero(fld), f};
    FieldElement lci = invert(g.lc());
    std::vector<FieldElement> r(f.coeffs());
    std::vector<FieldElement> q((size_t)(f.degree() - g.degree() + 1), FieldElement::zero(fld));
    for (int i = f.degree(); i >= g.degree(); --i) {
        FieldElement c = r[(size_t)i];
        if (c.is_zero()) continue;
        c = c * lci;
        q[(size_t)(i - g.degree())] = c;
        for (int j = 0; j <= g.degree(); ++j)
            r[(size_t)(i - g.degree() + j)] -= c * g.coeff((size_t)j);
    }
    return {DensePoly(fld, std::move(q)), DensePoly(fld, std::move(r))};
}

DensePoly rem(const DensePoly& f, const DensePoly& g) {
    return div_rem(f, g).second;
}

ExtGcd extended_gcd(const DensePoly& f, const DensePoly& g) {
    const Field& fld = f.field() ? f.field() : g.field();
    DensePoly r0 = f, r1 = g;
    DensePoly s0 = DensePoly::constant(FieldElement::one(fld)), s1 = DensePoly::zero(fld);
    DensePoly t0 = DensePoly::zero(fld), t1 = DensePoly::constant(FieldElement::one(fld));
    while (!r1.is_zero()) {
        auto [q, r2] = div_rem(r0, r1);
        DensePoly s2 = s0 - q * s1;
        DensePoly t2 = t0 - q * t1;
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};   // both inputs zero
    FieldElement lci = invert(r0.lc());
    return {r0 * lci, s0 * lci, t0 * lci};
}

DensePoly gcd(const DensePoly& f, const DensePoly& g) {
    DensePoly a = f, b = g;
    while (!b.is_zero()) {
        DensePoly r = rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

std::optional<DensePoly> invert_mod(const DensePoly& f, const DensePoly& m) {
    auto e = extended_gcd(rem(f, m), m);
    if (e.g.degree() != 0) return std::nullopt;
    return rem(e.s, m);
}

FieldElement resultant(const DensePoly& f, const DensePoly& g) {
    const Field& fld = f.field();
    if (f.is_zero() || g.is_zero())
        raise(Err::DivisionByZero, "resultant of zero polynomial");
    DensePoly a = f, b = g;
    FieldElement res = FieldElement::one(fld);
    bool swapped = false;
    if (a.degree() < b.degree()) {
        std::swap(a, b);
        if ((f.degree() & 1) && (g.degree() & 1)) res = -res;
        swapped = true;
    }
    (void)swapped;
    while (true) {
        if (b.degree() == 0) {
            res *= pow(b.lc(), (u128)a.degree());
            return res;
        }
        DensePoly r = rem(a, b);
        if (r.is_zero()) return FieldElement::zero(fld);
        // res(a,b) = (-1)^{da*db} * lc(b)^{da - dr} * res(b, r)
        if ((a.degree() & 1) && (b.degree() & 1)) res = -res;
        res *= pow(b.lc(), (u128)(a.degree() - r.degree()));
        a = std::move(b);
        b = std::move(r);
    }
}

bool is_squarefree(const DensePoly& f) {
    if (f.degree() <= 0) return true;
    DensePoly d = derivative(f);
    if (d.is_zero()) return false;
    return gcd(f, d).degree() == 0;
}

namespace {

// for f with f' = 0 in characteristic p: f = g(X^p); returns g with p-th
// roots of the coefficients (inverse Frobenius)
DensePoly pth_root_decimate(const DensePoly& f) {
    const Field& fld = f.field();
    const u64 p = fld->p;
    std::vector<FieldElement> g;
    for (size_t i = 0; i <= (size_t)f.degree(); i += (size_t)p)
        g.push_back(frobenius(f.coeff(i), (long)fld->k - 1));
    return DensePoly(fld, std::move(g));
}

} // namespace

DensePoly squarefree_part(const DensePoly& f) {
    assert(!f.is_zero());
    if (f.degree() == 0) return DensePoly::constant(FieldElement::one(f.field()));
    DensePoly d = derivative(f);
    if (d.is_zero()) return squarefree_part(pth_root_decimate(monic(f)));
    DensePoly g = gcd(f, d);
    DensePoly core = monic(div_rem(f, g).first);
    if (g.degree() == 0) return core;
    // g may still hide p-th power factors whose derivative vanished
    DensePoly rest = squarefree_part(g);
    DensePoly merged = core * div_rem(rest, gcd(core, rest)).first;
    return monic(merged);
}

DensePoly pow_mod(const DensePoly& f, u128 e, const DensePoly& m) {
    DensePoly r = DensePoly::constant(FieldElement::one(f.field()));
    DensePoly b = rem(f, m);
    while (e) {
        if (e & 1) r = rem(r * b, m);
        b = rem(b * b, m);
        e >>= 1;
    }
    return r;
}

DensePoly frobenius_power_x(const DensePoly& m, unsigned steps) {
    // X^{q^steps} mod m via repeated exponentiation by p (q = p^k)
    const Field& fld = m.field();
    DensePoly cur = rem(DensePoly::x(fld), m);
    const unsigned rounds = steps * fld->k;
    for (unsigned i = 0; i < rounds; ++i) cur = pow_mod(cur, fld->p, m);
    return cur;
}

namespace {

// equal-degree splitting of f (squarefree product of irreducibles of degree d)
void equal_degree_split(const DensePoly& f, unsigned d, Rng& rng,
                        std::vector<DensePoly>& out) {
    const Field& fld = f.field();
    if ((unsigned)f.degree() == d) {
        out.push_back(monic(f));
        return;
    }
    const u64 p = fld->p;
    const unsigned budget = 32;
    for (unsigned trial = 0; trial < budget; ++trial) {
        // random element of the quotient ring
        std::vector<FieldElement> rc;
        for (int i = 0; i < f.degree(); ++i) rc.push_back(sample_uniform(fld, rng));
        DensePoly a(fld, std::move(rc));
        if (a.degree() < 1) continue;
        DensePoly g = gcd(a, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree_split(g, d, rng, out);
            equal_degree_split(div_rem(f, g).first, d, rng, out);
            return;
        }
        DensePoly h;
        if (p == 2) {
            // trace map over F_{2^k}: sum of a^{2^i}, i < k*d
            DensePoly t = DensePoly::zero(fld);
            DensePoly cur = rem(a, f);
            const unsigned rounds = fld->k * d;
            for (unsigned i = 0; i < rounds; ++i) {
                t = t + cur;
                cur = rem(cur * cur, f);
            }
            h = t;
        } else {
            // a^{(q^d-1)/2} via the norm to the degree-d subfield:
            // m = prod_{i<d} a^{q^i}, then m^{(q-1)/2}
            DensePoly m = rem(a, f);
            DensePoly cur = m;
            for (unsigned i = 1; i < d; ++i) {
                // cur := cur^q mod f
                for (unsigned j = 0; j < fld->k; ++j) cur = pow_mod(cur, p, f);
                m = rem(m * cur, f);
            }
            h = pow_mod(m, (fld->cardinality - 1) / 2, f);
            h = h - DensePoly::constant(FieldElement::one(fld));
        }
        DensePoly g2 = gcd(h, f);
        if (g2.degree() > 0 && g2.degree() < f.degree()) {
            equal_degree_split(g2, d, rng, out);
            equal_degree_split(div_rem(f, g2).first, d, rng, out);
            return;
        }
    }
    raise(Err::RetriesExhausted, "equal-degree splitting budget exhausted");
}

// distinct-degree decomposition of squarefree monic f
std::vector<std::pair<DensePoly, unsigned>> distinct_degree(const DensePoly& f) {
    std::vector<std::pair<DensePoly, unsigned>> parts;
    const Field& fld = f.field();
    DensePoly rest = f;
    DensePoly xq = rem(DensePoly::x(fld), rest);
    unsigned d = 0;
    while (rest.degree() > 0) {
        ++d;
        if ((int)(2 * d) > rest.degree()) {
            parts.emplace_back(rest, (unsigned)rest.degree());
            break;
        }
        // xq := xq^q mod rest
        for (unsigned j = 0; j < fld->k; ++j) xq = pow_mod(xq, fld->p, rest);
        DensePoly g = gcd(xq - DensePoly::x(fld), rest);
        if (g.degree() > 0) {
            parts.emplace_back(g, d);
            rest = div_rem(rest, g).first;
            xq = rem(xq, rest);
        }
    }
    return parts;
}

} // namespace

std::vector<std::pair<DensePoly, unsigned>> factor(const DensePoly& f, Rng& rng) {
    assert(!f.is_zero());
    std::vector<std::pair<DensePoly, unsigned>> result;
    DensePoly m = monic(f);
    if (m.degree() == 0) return result;

    // the squarefree part carries every distinct irreducible once;
    // multiplicities recovered by repeated exact division
    DensePoly sf = squarefree_part(m);
    for (auto& [g, d] : distinct_degree(sf)) {
        std::vector<DensePoly> irr;
        equal_degree_split(g, d, rng, irr);
        for (auto& h : irr) {
            unsigned mult = 0;
            DensePoly cur = m;
            while (true) {
                auto [q, r] = div_rem(cur, h);
                if (!r.is_zero()) break;
                cur = std::move(q);
                ++mult;
            }
            result.emplace_back(monic(h), mult);
        }
    }
    std::sort(result.begin(), result.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        for (int i = a.first.degree(); i >= 0; --i) {
            const auto& ca = a.first.coeff((size_t)i).coeffs();
            const auto& cb = b.first.coeff((size_t)i).coeffs();
            if (ca != cb) return ca < cb;
        }
        return a.second < b.second;
    });
    return result;
}

std::vector<FieldElement> roots_in_field(const DensePoly& f, Rng& rng, unsigned sub_k) {
    assert(!f.is_zero());
    const Field& fld = f.field();
    const unsigned target_k = sub_k == 0 ? fld->k : sub_k;
    assert(fld->k % target_k == 0);

    DensePoly g = monic(f);
    if (g.degree() == 0) return {};
    // gcd with X^{p^target_k} - X keeps exactly the roots in the subfield
    DensePoly xq = rem(DensePoly::x(fld), g);
    for (unsigned j = 0; j < target_k; ++j) xq = pow_mod(xq, fld->p, g);
    DensePoly lin = gcd(xq - DensePoly::x(fld), g);
    std::vector<FieldElement> roots;
    if (lin.degree() < 1) return roots;

    std::vector<DensePoly> linear_factors;
    equal_degree_split(lin, 1, rng, linear_factors);
    for (auto& h : linear_factors) roots.push_back(-h.coeff(0));
    std::sort(roots.begin(), roots.end(), [](const FieldElement& a, const FieldElement& b) {
        return a.coeffs() < b.coeffs();
    });
    return roots;
}

DensePoly interpolate(const std::vector<std::pair<FieldElement, FieldElement>>& points) {
    assert(!points.empty());
    const Field& fld = points[0].first.field();
    for (size_t i = 0; i < points.size(); ++i)
        for (size_t j = i + 1; j < points.size(); ++j)
            if (points[i].first == points[j].first)
                raise(Err::DuplicateAbscissa, "abscissa " + points[i].first.str());

    // Newton divided differences
    std::vector<FieldElement> xs, cs;
    for (auto& [x, y] : points) {
        xs.push_back(x);
        cs.push_back(y);
    }
    for (size_t level = 1; level < cs.size(); ++level)
        for (size_t i = cs.size() - 1; i >= level; --i)
            cs[i] = (cs[i] - cs[i - 1]) / (xs[i] - xs[i - level]);
    DensePoly r = DensePoly::zero(fld);
    for (size_t i = cs.size(); i-- > 0;) {
        DensePoly lin = DensePoly::x(fld) - DensePoly::constant(xs[i]);
        r = r * lin + DensePoly::constant(cs[i]);
    }
    return r;
}

} // namespace upoly
} // namespace ffk
