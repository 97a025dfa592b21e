#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "ffk/upoly.hpp"

using namespace ffk;
using namespace ffk::upoly;

namespace {

DensePoly random_poly(const Field& f, int max_deg, Rng& rng, bool nonzero = false) {
    int d = (int)rng.below((u64)max_deg + 1);
    std::vector<FieldElement> c;
    for (int i = 0; i <= d; ++i) c.push_back(sample_uniform(f, rng));
    DensePoly r(f, std::move(c));
    if (nonzero && r.is_zero()) return DensePoly::constant(FieldElement::one(f));
    return r;
}

// independent oracle: Sylvester matrix determinant by Gaussian elimination
FieldElement sylvester_resultant(const DensePoly& f, const DensePoly& g) {
    const Field& fld = f.field();
    int m = f.degree(), n = g.degree();
    if (m < 0 || n < 0) return FieldElement::zero(fld);
    int size = m + n;
    if (size == 0) return FieldElement::one(fld);
    std::vector<std::vector<FieldElement>> a(
        (size_t)size, std::vector<FieldElement>((size_t)size, FieldElement::zero(fld)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) a[(size_t)i][(size_t)(i + j)] = f.coeff((size_t)(m - j));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) a[(size_t)(n + i)][(size_t)(i + j)] = g.coeff((size_t)(n - j));
    FieldElement det = FieldElement::one(fld);
    for (int col = 0; col < size; ++col) {
        int piv = -1;
        for (int row = col; row < size; ++row)
            if (!a[(size_t)row][(size_t)col].is_zero()) {
                piv = row;
                break;
            }
        if (piv < 0) return FieldElement::zero(fld);
        if (piv != col) {
            std::swap(a[(size_t)piv], a[(size_t)col]);
            det = -det;
        }
        det *= a[(size_t)col][(size_t)col];
        FieldElement inv_p = invert(a[(size_t)col][(size_t)col]);
        for (int row = col + 1; row < size; ++row) {
            if (a[(size_t)row][(size_t)col].is_zero()) continue;
            FieldElement fac = a[(size_t)row][(size_t)col] * inv_p;
            for (int j = col; j < size; ++j)
                a[(size_t)row][(size_t)j] -= fac * a[(size_t)col][(size_t)j];
        }
    }
    return det;
}

} // namespace

TEST_CASE("div_rem basic identities") {
    auto f5 = make_prime_field(5);
    auto f = DensePoly::from_ints(f5, {1, 0, 0, 1});   // X^3+1
    auto g = DensePoly::from_ints(f5, {1, 1});         // X+1
    auto [q, r] = div_rem(f, g);
    CHECK(r.is_zero());
    CHECK(q == DensePoly::from_ints(f5, {1, 4, 1}));   // X^2+4X+1 = X^2-X+1

    auto one = DensePoly::constant(FieldElement::one(f5));
    auto [q2, r2] = div_rem(f, one);
    CHECK(q2 == f);
    CHECK(r2.is_zero());

    auto f7 = make_prime_field(7);
    auto [q3, r3] = div_rem(DensePoly::from_ints(f7, {-2, 0, 1}), DensePoly::from_ints(f7, {-3, 1}));
    CHECK(q3 == DensePoly::from_ints(f7, {3, 1}));
    CHECK(r3.is_zero());   // 3^2 = 2 in F_7

    CHECK_THROWS_AS(div_rem(f, DensePoly::zero(f5)), Error);
}

TEST_CASE("div_rem round trip on random pairs") {
    auto f = make_prime_field(101);
    Rng rng(3);
    for (int i = 0; i < 300; ++i) {
        auto a = random_poly(f, 9, rng);
        auto b = random_poly(f, 6, rng, true);
        auto [q, r] = div_rem(a, b);
        CHECK(q * b + r == a);
        CHECK(r.degree() < b.degree());
    }
}

TEST_CASE("extended_gcd examples and Bezout identity") {
    auto f7 = make_prime_field(7);
    auto a = DensePoly::from_ints(f7, {-1, 0, 1});
    auto b = DensePoly::from_ints(f7, {-1, 1});
    auto e = extended_gcd(a, b);
    CHECK(e.g == DensePoly::from_ints(f7, {-1, 1}));
    CHECK(e.s * a + e.t * b == e.g);

    auto e2 = extended_gcd(a, DensePoly::zero(f7));
    CHECK(e2.g == monic(a));
    CHECK(e2.t.is_zero());
    CHECK(e2.s * a == e2.g);

    Rng rng(11);
    auto f101 = make_prime_field(101);
    Rng r9(12);
    auto f9 = make_field(3, 2, r9);
    for (auto& fl : {f7, f101, f9}) {
        for (int i = 0; i < 1000; ++i) {
            auto x = random_poly(fl, 8, rng);
            auto y = random_poly(fl, 8, rng);
            if (x.is_zero() && y.is_zero()) continue;
            auto eg = extended_gcd(x, y);
            CHECK(eg.s * x + eg.t * y == eg.g);
            if (!eg.g.is_zero()) {
                CHECK(eg.g.lc().is_one());
                CHECK(rem(x, eg.g).is_zero());
                CHECK(rem(y, eg.g).is_zero());
            }
        }
    }
}

TEST_CASE("resultant examples") {
    auto f7 = make_prime_field(7);
    auto f = DensePoly::from_ints(f7, {-1, 0, 1});   // X^2-1
    auto g = DensePoly::from_ints(f7, {-2, 1});      // X-2
    CHECK(resultant(f, g) == FieldElement::from_int(f7, 3));   // f(2) = 3
    CHECK(resultant(f, f).is_zero());
}

TEST_CASE("resultant equals Sylvester determinant on 500 random pairs") {
    Rng seeds(21);
    auto f7 = make_prime_field(7);
    auto f101 = make_prime_field(101);
    Rng r9(13);
    auto f9 = make_field(3, 2, r9);
    int count = 0;
    Rng rng(77);
    std::vector<Field> fields{f7, f101, f9};
    while (count < 500) {
        const Field& fl = fields[count % 3];
        auto a = random_poly(fl, 6, rng, true);
        auto b = random_poly(fl, 6, rng, true);
        CHECK(resultant(a, b) == sylvester_resultant(a, b));
        ++count;
    }
}

TEST_CASE("resultant zero iff common factor") {
    auto f = make_prime_field(31);
    Rng rng(5);
    for (int i = 0; i < 300; ++i) {
        auto a = random_poly(f, 5, rng, true);
        auto b = random_poly(f, 5, rng, true);
        bool res_zero = resultant(a, b).is_zero();
        bool gcd_nonconst = extended_gcd(a, b).g.degree() > 0;
        CHECK(res_zero == gcd_nonconst);
    }
}

TEST_CASE("squarefree_part") {
    auto f7 = make_prime_field(7);
    auto x_m1 = DensePoly::from_ints(f7, {-1, 1});
    auto x_m2 = DensePoly::from_ints(f7, {-2, 1});
    auto f = x_m1 * x_m1 * x_m2;
    CHECK(squarefree_part(f) == x_m1 * x_m2);
    CHECK(squarefree_part(x_m1 * x_m2) == x_m1 * x_m2);

    // X^p - c over F_p collapses to X - c
    auto f5 = make_prime_field(5);
    auto xp = DensePoly::from_ints(f5, {-3, 0, 0, 0, 0, 1});   // X^5 - 3
    CHECK(squarefree_part(xp) == DensePoly::from_ints(f5, {-3, 1}));

    // gcd(sf, sf') = 1 on random inputs, including char-p pileups
    Rng rng(31);
    for (int i = 0; i < 200; ++i) {
        auto a = random_poly(f5, 4, rng, true);
        auto b = random_poly(f5, 3, rng, true);
        auto g = a * a * b;
        if (g.degree() < 1) continue;
        auto sf = squarefree_part(g);
        CHECK(is_squarefree(sf));
        // same root set: sf divides g and every root of g is a root of sf
        CHECK(rem(g, gcd(g, sf)).is_zero());
    }
}

TEST_CASE("roots_in_field examples") {
    auto f7 = make_prime_field(7);
    Rng rng(1);
    auto r1 = roots_in_field(DensePoly::from_ints(f7, {-2, 0, 1}), rng);   // X^2-2
    REQUIRE(r1.size() == 2);
    CHECK(r1[0] == FieldElement::from_int(f7, 3));
    CHECK(r1[1] == FieldElement::from_int(f7, 4));

    auto r2 = roots_in_field(DensePoly::from_ints(f7, {-3, 0, 1}), rng);   // X^2-3
    CHECK(r2.empty());

    auto f3 = make_prime_field(3);
    auto r3 = roots_in_field(DensePoly::from_ints(f3, {0, -1, 0, 1}), rng);   // X^3-X
    CHECK(r3.size() == 3);
}

TEST_CASE("roots_in_field equals brute force scan") {
    Rng rng(55);
    std::vector<Field> fields;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 31ull, 61ull}) fields.push_back(make_prime_field(p));
    {
        Rng r(2);
        fields.push_back(make_field(3, 2, r));   // F_9
        fields.push_back(make_field(5, 2, r));   // F_25
    }
    for (auto& f : fields) {
        for (int rep = 0; rep < 120; ++rep) {
            auto g = random_poly(f, 5, rng, true);
            if (g.degree() < 1) continue;
            auto fast = roots_in_field(g, rng);
            // brute force over the whole field (odometer over coefficients)
            std::vector<FieldElement> slow;
            std::vector<u64> idx(f->k, 0);
            while (true) {
                FieldElement x(f, idx);
                if (g.eval(x).is_zero()) slow.push_back(x);
                unsigned pos = 0;
                while (pos < f->k && ++idx[pos] == f->p) idx[pos++] = 0;
                if (pos == f->k) break;
            }
            std::sort(slow.begin(), slow.end(), [](const FieldElement& a, const FieldElement& b) {
                return a.coeffs() < b.coeffs();
            });
            CHECK(fast == slow);
        }
    }
}

TEST_CASE("factor examples") {
    auto f5 = make_prime_field(5);
    Rng rng(4);
    auto fac = factor(DensePoly::from_ints(f5, {-1, 0, 0, 0, 1}), rng);   // X^4-1
    REQUIRE(fac.size() == 4);
    for (auto& [p, m] : fac) {
        CHECK(p.degree() == 1);
        CHECK(m == 1);
    }

    auto f7 = make_prime_field(7);
    auto fac2 = factor(DensePoly::from_ints(f7, {1, 0, 1}), rng);   // X^2+1 irreducible
    REQUIRE(fac2.size() == 1);
    CHECK(fac2[0].first.degree() == 2);
}

TEST_CASE("factor re-multiplication identity on 200 random inputs") {
    Rng rng(91);
    auto f7 = make_prime_field(7);
    auto f2 = make_prime_field(2);
    Rng r4(3);
    auto f4 = make_field(2, 2, r4);
    std::vector<Field> fields{f7, f2, f4};
    for (int i = 0; i < 200; ++i) {
        const Field& f = fields[(size_t)(i % 3)];
        auto g = random_poly(f, 10, rng, true);
        if (g.degree() < 1) continue;
        auto fac = factor(g, rng);
        DensePoly prod = DensePoly::constant(FieldElement::one(f));
        for (auto& [p, m] : fac)
            for (unsigned j = 0; j < m; ++j) prod = prod * p;
        CHECK(prod == monic(g));
    }
}

TEST_CASE("interpolate") {
    auto f7 = make_prime_field(7);
    auto e = [&](u64 v) { return FieldElement::from_int(f7, v); };
    auto p = interpolate({{e(0), e(1)}, {e(1), e(2)}, {e(2), e(5)}});
    CHECK(p == DensePoly::from_ints(f7, {1, 0, 1}));   // X^2+1

    auto c = interpolate({{e(3), e(4)}});
    CHECK(c == DensePoly::constant(e(4)));

    CHECK_THROWS_AS(interpolate({{e(1), e(1)}, {e(1), e(2)}}), Error);

    // evaluate-then-interpolate round trip
    auto f101 = make_prime_field(101);
    Rng rng(8);
    for (int t = 0; t < 100; ++t) {
        auto g = random_poly(f101, 8, rng);
        std::vector<std::pair<FieldElement, FieldElement>> pts;
        for (u64 x = 0; x < 9; ++x) {
            auto xe = FieldElement::from_int(f101, x);
            pts.push_back({xe, g.eval(xe)});
        }
        CHECK(interpolate(pts) == g);
    }
}

TEST_CASE("deg(f*g) = deg f + deg g") {
    auto f = make_prime_field(10007);
    Rng rng(6);
    for (int i = 0; i < 500; ++i) {
        auto a = random_poly(f, 6, rng, true);
        auto b = random_poly(f, 6, rng, true);
        CHECK((a * b).degree() == a.degree() + b.degree());
    }
}

TEST_CASE("karatsuba agrees with schoolbook across the crossover") {
    auto f = make_prime_field(101);
    Rng rng(10);
    for (int i = 0; i < 10; ++i) {
        auto a = random_poly(f, 90, rng, true);
        auto b = random_poly(f, 70, rng, true);
        auto prod = a * b;
        // n^2 reference
        std::vector<FieldElement> ref((size_t)(a.degree() + b.degree() + 1), FieldElement::zero(f));
        for (int x = 0; x <= a.degree(); ++x)
            for (int y = 0; y <= b.degree(); ++y)
                ref[(size_t)(x + y)] += a.coeff((size_t)x) * b.coeff((size_t)y);
        CHECK(prod == DensePoly(f, ref));
    }
}
