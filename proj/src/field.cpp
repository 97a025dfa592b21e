#include "ffk/field.hpp"

#include <algorithm>
#include <cassert>

namespace ffk {

const char* err_name(Err e) {
    switch (e) {
        case Err::NotPrime: return "NotPrime";
        case Err::IrreducibleSearchExhausted: return "IrreducibleSearchExhausted";
        case Err::DivisionByZero: return "DivisionByZero";
        case Err::DuplicateAbscissa: return "DuplicateAbscissa";
        case Err::NotAUnit: return "NotAUnit";
        case Err::UnluckyCenter: return "UnluckyCenter";
        case Err::SyntaxError: return "SyntaxError";
        case Err::UnknownVariable: return "UnknownVariable";
        case Err::NonPolynomial: return "NonPolynomial";
        case Err::SingularMatrix: return "SingularMatrix";
        case Err::NotLiftingPoint: return "NotLiftingPoint";
        case Err::RamifiedRoot: return "RamifiedRoot";
        case Err::ValidationFailed: return "ValidationFailed";
        case Err::BadRandomChoice: return "BadRandomChoice";
        case Err::LiftDiverged: return "LiftDiverged";
        case Err::PrecisionExceeded: return "PrecisionExceeded";
        case Err::UnluckyLambda: return "UnluckyLambda";
        case Err::NonLinearGcd: return "NonLinearGcd";
        case Err::ZeroDivisorHit: return "ZeroDivisorHit";
        case Err::RetriesExhausted: return "RetriesExhausted";
        case Err::InconsistentSystem: return "InconsistentSystem";
        case Err::PathHitsDiscriminant: return "PathHitsDiscriminant";
        case Err::NotBaseField: return "NotBaseField";
        case Err::NotSeparating: return "NotSeparating";
        case Err::InsufficientField: return "InsufficientField";
        case Err::BudgetExhausted: return "BudgetExhausted";
        case Err::FieldTooSmall: return "FieldTooSmall";
        case Err::TooLarge: return "TooLarge";
        case Err::CountUnstable: return "CountUnstable";
    }
    return "UnknownError";
}

namespace {

thread_local OpCounters g_counters;

inline u64 addm(u64 a, u64 b, u64 p) {
    u64 s = a + b;
    if (s >= p || s < a) s -= p;
    return s;
}
inline u64 subm(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
inline u64 mulm(u64 a, u64 b, u64 p) { return (u64)((u128)a * b % p); }

// inverse mod prime p via extended Euclid
u64 invm(u64 a, u64 p) {
    if (a == 0) raise(Err::DivisionByZero, "inverse of zero residue");
    long long t = 0, newt = 1;
    long long r = (long long)p, newr = (long long)(a % p);
    while (newr != 0) {
        long long q = r / newr;
        long long tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (t < 0) t += (long long)p;
    return (u64)t;
}

// ---- dense polynomial helpers over F_p (local; upoly builds the general ones)

using PolP = std::vector<u64>;   // index = exponent, may carry trailing zeros

void trim(PolP& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

PolP mul_polp(const PolP& a, const PolP& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    PolP r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = addm(r[i + j], mulm(a[i], b[j], p), p);
    }
    return r;
}

// f mod g, g monic
PolP rem_polp(PolP f, const PolP& g, u64 p) {
    trim(f);
    const size_t dg = g.size() - 1;
    while (f.size() > dg) {
        u64 c = f.back();
        size_t shift = f.size() - 1 - dg;
        if (c) {
            for (size_t i = 0; i <= dg; ++i)
                f[shift + i] = subm(f[shift + i], mulm(c, g[i], p), p);
        }
        f.pop_back();
        trim(f);
        if (f.empty()) break;
    }
    return f;
}

PolP gcd_polp(PolP a, PolP b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // make b monic for rem
        u64 lc = b.back();
        if (lc != 1) {
            u64 li = invm(lc, p);
            for (auto& c : b) c = mulm(c, li, p);
        }
        PolP r = rem_polp(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// X^{p^i} mod modulus, iterating i times
PolP frob_x_polp(unsigned i, const PolP& modulus, u64 p) {
    PolP cur{0, 1};
    cur = rem_polp(cur, modulus, p);
    for (unsigned t = 0; t < i; ++t) {
        // cur := cur^p mod modulus
        PolP acc{1};
        PolP base = cur;
        u64 e = p;
        while (e) {
            if (e & 1) acc = rem_polp(mul_polp(acc, base, p), modulus, p);
            base = rem_polp(mul_polp(base, base, p), modulus, p);
            e >>= 1;
        }
        cur = std::move(acc);
    }
    return cur;
}

bool is_irreducible(const PolP& f, unsigned k, u64 p) {
    // gcd(f, X^{p^i} - X) = 1 for i < k, and f | X^{p^k} - X
    for (unsigned i = 1; i < k; ++i) {
        PolP xpi = frob_x_polp(i, f, p);
        // xpi - X
        PolP d = xpi;
        if (d.size() < 2) d.resize(2, 0);
        d[1] = subm(d[1], 1, p);
        trim(d);
        PolP g = gcd_polp(f, d, p);
        if (!(g.size() == 1)) return false;   // nonconstant gcd
    }
    PolP xpk = frob_x_polp(k, f, p);
    PolP d = xpk;
    if (d.size() < 2) d.resize(2, 0);
    d[1] = subm(d[1], 1, p);
    trim(d);
    return d.empty();   // X^{p^k} == X mod f
}

} // namespace

OpCounters& op_counters() { return g_counters; }
void reset_op_counters() { g_counters = OpCounters{}; }

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    // deterministic Miller-Rabin for 64-bit with the standard base set
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    auto powm128 = [&](u64 a, u64 e) {
        u128 r = 1, b = a % n;
        while (e) {
            if (e & 1) r = r * b % n;
            b = b * b % n;
            e >>= 1;
        }
        return (u64)r;
    };
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powm128(a, d);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = (u64)((u128)x * x % n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

Field make_prime_field(u64 p) {
    if (!is_prime_u64(p)) raise(Err::NotPrime, "p = " + std::to_string(p));
    auto d = std::make_shared<FieldDescriptor>();
    d->p = p;
    d->k = 1;
    d->cardinality = p;
    return d;
}

namespace {

Field build_descriptor(u64 p, unsigned k, const std::vector<u64>& f, u128 card) {
    auto d = std::make_shared<FieldDescriptor>();
    d->p = p;
    d->k = k;
    d->modulus = f;
    d->cardinality = card;
    d->red_rows.resize(k - 1);
    std::vector<u64> cur(f.begin(), f.begin() + k);
    for (auto& c : cur) c = c ? p - c : 0;
    cur.resize(k, 0);
    for (unsigned i = 0; i + 1 < k; ++i) {
        d->red_rows[i] = cur;
        std::vector<u64> nxt(k, 0);
        u64 top = cur[k - 1];
        for (unsigned j = k - 1; j >= 1; --j) nxt[j] = cur[j - 1];
        nxt[0] = 0;
        if (top) {
            for (unsigned j = 0; j < k; ++j) {
                u64 sub = mulm(top, f[j], p);
                nxt[j] = subm(nxt[j], sub, p);
            }
        }
        cur = std::move(nxt);
    }
    return d;
}

} // namespace

Field make_field_with_modulus(u64 p, unsigned k, const std::vector<u64>& modulus) {
    if (!is_prime_u64(p)) raise(Err::NotPrime, "p = " + std::to_string(p));
    if (k == 1) return make_prime_field(p);
    if (modulus.size() != k + 1 || modulus[k] != 1)
        raise(Err::SyntaxError, "modulus must be monic of degree k");
    for (u64 c : modulus)
        if (c >= p) raise(Err::SyntaxError, "modulus coefficient out of range");
    u128 card = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (card > (u128(1) << 126) / p) raise(Err::TooLarge, "p^k exceeds 2^126");
        card *= p;
    }
    if (!is_irreducible(modulus, k, p))
        raise(Err::SyntaxError, "modulus is not irreducible");
    return build_descriptor(p, k, modulus, card);
}

Field make_field(u64 p, unsigned k, Rng& rng) {
    if (!is_prime_u64(p)) raise(Err::NotPrime, "p = " + std::to_string(p));
    if (k == 0) raise(Err::NotPrime, "extension degree must be >= 1");
    if (k == 1) return make_prime_field(p);

    // cardinality must fit 126 bits (word-sized p, moderate k)
    u128 card = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (card > (u128(1) << 126) / p) raise(Err::TooLarge, "p^k exceeds 2^126");
        card *= p;
    }

    const unsigned budget = 64 * k;
    for (unsigned trial = 0; trial < budget; ++trial) {
        PolP f(k + 1, 0);
        f[k] = 1;
        for (unsigned i = 0; i < k; ++i) f[i] = rng.below(p);
        if (f[0] == 0) f[0] = 1 + rng.below(p - 1);   // X | f never irreducible for k > 1
        if (!is_irreducible(f, k, p)) continue;
        return build_descriptor(p, k, f, card);
    }
    raise(Err::IrreducibleSearchExhausted, "no irreducible modulus found for p=" +
                                                std::to_string(p) + " k=" + std::to_string(k));
}

FieldElement::FieldElement(Field f, std::vector<u64> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) {
    assert(f_ && c_.size() == f_->k);
}

FieldElement FieldElement::zero(const Field& f) {
    return FieldElement(f, std::vector<u64>(f->k, 0));
}

FieldElement FieldElement::one(const Field& f) {
    std::vector<u64> c(f->k, 0);
    c[0] = 1 % f->p;
    return FieldElement(f, std::move(c));
}

FieldElement FieldElement::from_int(const Field& f, u64 v) {
    std::vector<u64> c(f->k, 0);
    c[0] = v % f->p;
    return FieldElement(f, std::move(c));
}

FieldElement FieldElement::from_signed(const Field& f, long long v) {
    long long m = (long long)(v % (long long)f->p);
    if (m < 0) m += (long long)f->p;
    return from_int(f, (u64)m);
}

bool FieldElement::is_zero() const {
    for (u64 c : c_)
        if (c) return false;
    return true;
}

bool FieldElement::is_one() const {
    if (c_.empty() || c_[0] != 1 % f_->p) return false;
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i]) return false;
    return true;
}

bool FieldElement::operator==(const FieldElement& o) const {
    return f_->same_as(*o.f_) && c_ == o.c_;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    assert(f_->same_as(*o.f_));
    ++g_counters.add;
    std::vector<u64> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = addm(c_[i], o.c_[i], f_->p);
    return FieldElement(f_, std::move(r));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    assert(f_->same_as(*o.f_));
    ++g_counters.add;
    std::vector<u64> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = subm(c_[i], o.c_[i], f_->p);
    return FieldElement(f_, std::move(r));
}

FieldElement FieldElement::operator-() const {
    std::vector<u64> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] ? f_->p - c_[i] : 0;
    return FieldElement(f_, std::move(r));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    assert(f_->same_as(*o.f_));
    ++g_counters.mul;
    const u64 p = f_->p;
    const unsigned k = f_->k;
    if (k == 1) return FieldElement(f_, {mulm(c_[0], o.c_[0], p)});

    std::vector<u64> prod(2 * k - 1, 0);
    for (unsigned i = 0; i < k; ++i) {
        if (!c_[i]) continue;
        for (unsigned j = 0; j < k; ++j)
            prod[i + j] = addm(prod[i + j], mulm(c_[i], o.c_[j], p), p);
    }
    std::vector<u64> r(prod.begin(), prod.begin() + k);
    for (unsigned i = k; i < 2 * k - 1; ++i) {
        u64 c = prod[i];
        if (!c) continue;
        const auto& row = f_->red_rows[i - k];
        for (unsigned j = 0; j < k; ++j)
            r[j] = addm(r[j], mulm(c, row[j], p), p);
    }
    return FieldElement(f_, std::move(r));
}

FieldElement invert(const FieldElement& a) {
    if (a.is_zero()) raise(Err::DivisionByZero, "field inverse of zero");
    ++g_counters.inv;
    const u64 p = a.f_->p;
    if (a.f_->k == 1) return FieldElement(a.f_, {invm(a.c_[0], p)});

    // extended Euclid in F_p[x] against the modulus
    PolP r0 = a.f_->modulus;
    PolP r1 = a.c_;
    trim(r1);
    PolP s0{}, s1{1};
    while (!(r1.size() == 1 && r1[0] != 0) ) {
        if (r1.empty()) raise(Err::DivisionByZero, "element not invertible (bad modulus?)");
        // divide r0 by r1
        PolP q;
        PolP rem = r0;
        trim(rem);
        u64 lcinv = invm(r1.back(), p);
        if (rem.size() >= r1.size()) {
            q.assign(rem.size() - r1.size() + 1, 0);
            while (rem.size() >= r1.size() && !rem.empty()) {
                u64 c = mulm(rem.back(), lcinv, p);
                size_t shift = rem.size() - r1.size();
                q[shift] = c;
                for (size_t i = 0; i < r1.size(); ++i)
                    rem[shift + i] = subm(rem[shift + i], mulm(c, r1[i], p), p);
                trim(rem);
                if (rem.empty()) break;
            }
        }
        // s_{n+1} = s0 - q*s1
        PolP qs = mul_polp(q, s1, p);
        PolP s2 = s0;
        if (s2.size() < qs.size()) s2.resize(qs.size(), 0);
        for (size_t i = 0; i < qs.size(); ++i) s2[i] = subm(s2[i], qs[i], p);
        trim(s2);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r1 = constant c; inverse = s1 / c
    u64 ci = invm(r1[0], p);
    PolP res = s1;
    res = rem_polp(res, a.f_->modulus, p);
    res.resize(a.f_->k, 0);
    for (auto& c : res) c = mulm(c, ci, p);
    return FieldElement(a.f_, std::move(res));
}

FieldElement pow(const FieldElement& a, u128 e) {
    FieldElement r = FieldElement::one(a.field());
    FieldElement b = a;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

FieldElement frobenius(const FieldElement& a, long times) {
    const unsigned k = a.f_->k;
    long t = times % (long)k;
    if (t < 0) t += (long)k;
    FieldElement r = a;
    for (long i = 0; i < t; ++i) r = pow(r, a.f_->p);
    return r;
}

FieldElement element_from_index(const Field& f, u64 index) {
    std::vector<u64> c(f->k, 0);
    for (unsigned i = 0; i < f->k && index; ++i) {
        c[i] = index % f->p;
        index /= f->p;
    }
    return FieldElement(f, std::move(c));
}

FieldElement sample_uniform(const Field& f, Rng& rng) {
    std::vector<u64> c(f->k);
    for (auto& x : c) x = rng.below(f->p);
    return FieldElement(f, std::move(c));
}

std::string FieldElement::str() const {
    if (f_->k == 1) return std::to_string(c_[0]);
    std::string s = "[";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(c_[i]);
    }
    return s + "]";
}

std::string u128_to_string(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v) {
        s += char('0' + (int)(v % 10));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

} // namespace ffk
