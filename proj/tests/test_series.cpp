#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ffk/series.hpp"

using namespace ffk;
using namespace ffk::upoly;

namespace {
TruncatedSeries ts(const Field& f, const FieldElement& center, std::vector<long long> v) {
    std::vector<FieldElement> c;
    for (auto x : v) c.push_back(FieldElement::from_signed(f, x));
    return TruncatedSeries(center, std::move(c));
}
} // namespace

TEST_CASE("series_invert geometric series") {
    auto f7 = make_prime_field(7);
    auto zero = FieldElement::zero(f7);
    // 1 - eps at precision 3 -> 1 + eps + eps^2
    auto a = ts(f7, zero, {1, -1, 0});
    auto inv = series_invert(a);
    CHECK(inv == ts(f7, zero, {1, 1, 1}));

    auto two = ts(f7, zero, {2, 0, 0});
    CHECK(series_invert(two) == ts(f7, zero, {4, 0, 0}));

    CHECK_THROWS_AS(series_invert(ts(f7, zero, {0, 1, 0})), Error);

    auto f101 = make_prime_field(101);
    Rng rng(5);
    auto z101 = FieldElement::zero(f101);
    for (int t = 0; t < 200; ++t) {
        std::vector<FieldElement> c;
        for (int i = 0; i < 6; ++i) c.push_back(sample_uniform(f101, rng));
        if (c[0].is_zero()) c[0] = FieldElement::one(f101);
        TruncatedSeries u(z101, c);
        auto prod = u * series_invert(u);
        CHECK(prod == TruncatedSeries::constant(FieldElement::one(f101), z101, 6));
    }
}

TEST_CASE("truncation is a ring homomorphism") {
    auto f = make_prime_field(101);
    Rng rng(8);
    auto zero = FieldElement::zero(f);
    for (int t = 0; t < 200; ++t) {
        std::vector<FieldElement> a, b;
        for (int i = 0; i < 8; ++i) {
            a.push_back(sample_uniform(f, rng));
            b.push_back(sample_uniform(f, rng));
        }
        TruncatedSeries sa(zero, a), sb(zero, b);
        for (unsigned m : {1u, 3u, 5u, 8u}) {
            auto lhs = (sa * sb).truncated(m);
            auto rhs = sa.truncated(m) * sb.truncated(m);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("series of polynomial round trips") {
    auto f = make_prime_field(31);
    Rng rng(3);
    for (int t = 0; t < 100; ++t) {
        std::vector<FieldElement> c;
        int d = 1 + (int)rng.below(5);
        for (int i = 0; i <= d; ++i) c.push_back(sample_uniform(f, rng));
        DensePoly p(f, c);
        auto center = sample_uniform(f, rng);
        auto s = TruncatedSeries::of_polynomial(p, center, (unsigned)d + 2);
        CHECK(s.to_polynomial() == p);
        // expansion evaluates consistently
        auto x = sample_uniform(f, rng);
        CHECK(s.to_polynomial().eval(x) == p.eval(x));
    }
}

TEST_CASE("series EEA: separable quadratic has unit resultant") {
    auto f7 = make_prime_field(7);
    auto zero = FieldElement::zero(f7);
    const unsigned prec = 4;
    // f = Y^2 - (1+eps), g = 2Y; disc of Y^2-c is -4c, a unit here
    SeriesPoly fpoly(zero, prec,
                     {-ts(f7, zero, {1, 1, 0, 0}), TruncatedSeries::zero(f7, zero, prec),
                      TruncatedSeries::constant(FieldElement::one(f7), zero, prec)});
    SeriesPoly g(zero, prec,
                 {TruncatedSeries::zero(f7, zero, prec),
                  TruncatedSeries::constant(FieldElement::from_int(f7, 2), zero, prec)});
    auto r = series_poly_eea(fpoly, g);
    CHECK(r.resultant.is_unit());
    // resultant of Y^2-c and 2Y is -4c
    auto expect = ts(f7, zero, {-4, -4, 0, 0});
    CHECK(r.resultant == expect);
}

TEST_CASE("series EEA: constant-term-zero resultant is still returned") {
    auto f7 = make_prime_field(7);
    auto zero = FieldElement::zero(f7);
    const unsigned prec = 4;
    // f = Y^2 - eps, g = 2Y: resultant -4*eps
    SeriesPoly fpoly(zero, prec,
                     {-ts(f7, zero, {0, 1, 0, 0}), TruncatedSeries::zero(f7, zero, prec),
                      TruncatedSeries::constant(FieldElement::one(f7), zero, prec)});
    SeriesPoly g(zero, prec,
                 {TruncatedSeries::zero(f7, zero, prec),
                  TruncatedSeries::constant(FieldElement::from_int(f7, 2), zero, prec)});
    auto r = series_poly_eea(fpoly, g);
    CHECK_FALSE(r.resultant.is_unit());
    CHECK(r.resultant == ts(f7, zero, {0, -4, 0, 0}));
}

TEST_CASE("series EEA: non-unit leading coefficient raises UnluckyCenter") {
    auto f7 = make_prime_field(7);
    auto zero = FieldElement::zero(f7);
    const unsigned prec = 3;
    // divisor with leading coefficient eps: nonzero but not a unit
    SeriesPoly fpoly(zero, prec,
                     {TruncatedSeries::constant(FieldElement::one(f7), zero, prec),
                      TruncatedSeries::zero(f7, zero, prec),
                      TruncatedSeries::constant(FieldElement::one(f7), zero, prec)});
    SeriesPoly g(zero, prec,
                 {ts(f7, zero, {1, 0, 0}), ts(f7, zero, {0, 1, 0})});
    bool saw = false;
    try {
        series_poly_eea(fpoly, g);
    } catch (const Error& e) {
        saw = e.code() == Err::UnluckyCenter;
    }
    CHECK(saw);
}

TEST_CASE("series EEA resultant matches specialized upoly resultant") {
    // polynomials in Y whose coefficients are polynomials in L of bounded
    // degree; the EEA over K[[L-alpha]] must agree with the scalar
    // resultant after specializing L
    auto f = make_prime_field(101);
    Rng rng(17);
    for (int t = 0; t < 20; ++t) {
        int da = 2 + (int)rng.below(2), db = 1 + (int)rng.below(2);
        int dl = 2;
        std::vector<DensePoly> acoef, bcoef;
        for (int i = 0; i <= da; ++i) {
            std::vector<FieldElement> c;
            for (int j = 0; j <= dl; ++j) c.push_back(sample_uniform(f, rng));
            acoef.emplace_back(f, c);
        }
        for (int i = 0; i <= db; ++i) {
            std::vector<FieldElement> c;
            for (int j = 0; j <= dl; ++j) c.push_back(sample_uniform(f, rng));
            bcoef.emplace_back(f, c);
        }
        if (acoef.back().is_zero()) acoef.back() = DensePoly::constant(FieldElement::one(f));
        if (bcoef.back().is_zero()) bcoef.back() = DensePoly::constant(FieldElement::one(f));

        // high enough precision to capture the polynomial resultant exactly
        unsigned prec = (unsigned)(dl * (da + db)) + 1;
        auto center = sample_uniform(f, rng);
        std::vector<TruncatedSeries> as, bs;
        for (auto& c : acoef) as.push_back(TruncatedSeries::of_polynomial(c, center, prec));
        for (auto& c : bcoef) bs.push_back(TruncatedSeries::of_polynomial(c, center, prec));
        SeriesPoly A(center, prec, as), B(center, prec, bs);

        DensePoly res_poly(f);
        bool ok = true;
        try {
            res_poly = series_poly_eea(A, B).resultant.to_polynomial();
        } catch (const Error& e) {
            // unlucky center for this sample; skip (exercised rarely)
            CHECK(e.code() == Err::UnluckyCenter);
            ok = false;
        }
        if (!ok) continue;
        for (int sp = 0; sp < 20; ++sp) {
            auto l = sample_uniform(f, rng);
            std::vector<FieldElement> av, bv;
            for (auto& c : acoef) av.push_back(c.eval(l));
            for (auto& c : bcoef) bv.push_back(c.eval(l));
            DensePoly As(f, av), Bs(f, bv);
            if (As.degree() != da || Bs.degree() != db) continue;   // degree drop: formulas differ
            CHECK(upoly::resultant(As, Bs) == res_poly.eval(l));
        }
    }
}

TEST_CASE("series_quot_invert lifts the inverse t-adically") {
    auto f = make_prime_field(101);
    Rng rng(23);
    auto center = FieldElement::zero(f);
    const unsigned prec = 8;
    // modulus: monic quadratic with series coefficients
    for (int t = 0; t < 50; ++t) {
        std::vector<FieldElement> c0, c1;
        for (unsigned i = 0; i < prec; ++i) {
            c0.push_back(sample_uniform(f, rng));
            c1.push_back(sample_uniform(f, rng));
        }
        SeriesPoly m(center, prec,
                     {TruncatedSeries(center, c0), TruncatedSeries(center, c1),
                      TruncatedSeries::constant(FieldElement::one(f), center, prec)});
        std::vector<FieldElement> e0, e1;
        for (unsigned i = 0; i < prec; ++i) {
            e0.push_back(sample_uniform(f, rng));
            e1.push_back(sample_uniform(f, rng));
        }
        SeriesPoly el(center, prec, {TruncatedSeries(center, e0), TruncatedSeries(center, e1)});
        auto inv = series_quot_invert(el, m);
        if (!inv) continue;   // gcd at center nontrivial; fine
        auto prod = series_rem(el * *inv, m);
        REQUIRE(prod.degree() == 0);
        CHECK(prod.coeff(0) == TruncatedSeries::constant(FieldElement::one(f), center, prec));
    }
}
