#include "ffk/homotopy.hpp"

#include <cassert>

#include "ffk/rings.hpp"

namespace ffk {

namespace {

// Gauss-Jordan over the truncated series ring; pivots are chosen among unit
// entries, which always exist while the constant-term matrix is invertible
std::vector<std::vector<TruncatedSeries>> invert_series_matrix(
    std::vector<std::vector<TruncatedSeries>> a, const Field& K, const FieldElement& center,
    unsigned prec) {
    const size_t n = a.size();
    std::vector<std::vector<TruncatedSeries>> inv(
        n, std::vector<TruncatedSeries>(n, TruncatedSeries::zero(K, center, prec)));
    for (size_t i = 0; i < n; ++i)
        inv[i][i] = TruncatedSeries::constant(FieldElement::one(K), center, prec);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && !a[piv][col].is_unit()) ++piv;
        if (piv == n)
            raise(Err::SingularMatrix, "series matrix has no unit pivot (path frame singular)");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        TruncatedSeries ip = series_invert(a[col][col]);
        for (size_t j = 0; j < n; ++j) {
            a[col][j] = a[col][j] * ip;
            inv[col][j] = inv[col][j] * ip;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == col || a[i][col].is_zero()) continue;
            TruncatedSeries f = a[i][col];
            for (size_t j = 0; j < n; ++j) {
                a[i][j] = a[i][j] - f * a[col][j];
                inv[i][j] = inv[i][j] - f * inv[col][j];
            }
        }
    }
    return inv;
}

} // namespace

LinearForms mixed_frame(const SolverState& st, const HomotopyPath& path, size_t nu_rows) {
    const Field& K = st.K;
    const size_t n = st.n;
    Matrix m(n, Vec(n, FieldElement::zero(K)));
    Vec shift(n, FieldElement::zero(K));
    for (size_t i = 0; i < n; ++i) {
        if (i < nu_rows) {
            for (size_t j = 0; j < n; ++j) m[i][j] = st.emb.embed(path.nu[i][j]);
            shift[i] = st.emb.embed(path.eta[i]);
        } else {
            m[i] = st.forms.matrix()[i];
            shift[i] = st.forms.shift()[i];
        }
    }
    return LinearForms(std::move(m), std::move(shift));
}

HomotopyPath sample_homotopy_end(const SolverState& st, Rng& rng) {
    const size_t n = st.n, r = st.r;
    const size_t m = n - r;
    for (unsigned trial = 0; trial < 64; ++trial) {
        HomotopyPath path;
        path.nu.assign(m + 1, Vec(n, FieldElement::zero(st.base)));
        for (auto& row : path.nu)
            for (auto& e : row) e = sample_uniform(st.base, rng);
        path.eta.clear();
        for (size_t i = 0; i <= m; ++i) path.eta.push_back(sample_uniform(st.base, rng));
        path.Q.clear();
        for (size_t i = 0; i < m; ++i) path.Q.push_back(sample_uniform(st.base, rng));
        try {
            (void)mixed_frame(st, path, m);       // Delta_1 invertible
            (void)mixed_frame(st, path, m + 1);   // Delta_2 invertible
            return path;
        } catch (const Error& e) {
            if (e.code() != Err::SingularMatrix) throw;
        }
    }
    raise(Err::RetriesExhausted, "could not sample invertible homotopy end frames");
}

LiftingFiber deform_fiber_to_base_field(const SolverState& st, const LiftingFiber& fiber,
                                        const HomotopyPath& path) {
    const Field& K = st.K;
    const size_t n = st.n, r = st.r;
    const size_t m = n - r;
    assert(fiber.primitive == m && (size_t)fiber.stage == r);
    const unsigned delta = (unsigned)fiber.q.degree();
    const FieldElement center = FieldElement::zero(K);

    auto w0 = fiber_solved_form(fiber);

    AssignmentBuilder builder = [&, n, m](unsigned prec) {
        auto lin = [&](const FieldElement& start, const FieldElement& end) {
            // (1-T) start + T end
            std::vector<FieldElement> c(prec, FieldElement::zero(K));
            c[0] = start;
            if (prec >= 2) c[1] = end - start;
            return TruncatedSeries(center, std::move(c));
        };
        // path matrix and its inverse over the series ring
        std::vector<std::vector<TruncatedSeries>> lam(
            n, std::vector<TruncatedSeries>(n, TruncatedSeries::zero(K, center, prec)));
        std::vector<TruncatedSeries> gam(n, TruncatedSeries::zero(K, center, prec));
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < n; ++j) {
                const FieldElement& s = st.forms.matrix()[i][j];
                lam[i][j] = (i < m) ? lin(s, st.emb.embed(path.nu[i][j]))
                                    : TruncatedSeries::constant(s, center, prec);
            }
            const FieldElement& g = st.forms.shift()[i];
            gam[i] = (i < m) ? lin(g, st.emb.embed(path.eta[i]))
                             : TruncatedSeries::constant(g, center, prec);
        }
        auto inv = invert_series_matrix(lam, K, center, prec);

        Assignment a;
        a.cst.reserve(n);
        a.coef.assign(n, {});
        for (size_t i = 0; i < n; ++i) {
            TruncatedSeries acc = TruncatedSeries::zero(K, center, prec);
            for (size_t j = 0; j < m; ++j) {
                TruncatedSeries pj = lin(fiber.lifting_point[j], st.emb.embed(path.Q[j]));
                acc = acc + inv[i][j] * (pj - gam[j]);
            }
            for (size_t j = m; j < n; ++j) acc = acc - inv[i][j] * gam[j];
            a.cst.push_back(std::move(acc));
            for (size_t j = m; j < n; ++j) a.coef[i].push_back(inv[i][j]);
        }
        return a;
    };

    // The moving projection matrix makes the branch symmetric functions
    // rational in T (the module structure lives over a localization of
    // K[T]); the series are therefore reconstructed per coefficient as
    // rational functions and specialized at T=1. Polynomial data falls out
    // as the denominator-one case. The degree allowance covers both the
    // Bezout growth of the deformation curve (the bilinear slice conditions
    // square the degree per moved row) and the pole orders at det = 0.
    const unsigned pade_bound =
        delta * std::max<unsigned>((unsigned)m + 1, 1u << std::min<size_t>(m, 3));
    const unsigned prec = 2 * pade_bound + 1;
    auto res = newton_lift(st.system, st.emb, builder, fiber.q, w0, prec);
    if (!res.residuals_zero)
        raise(Err::PathHitsDiscriminant, "homotopy lift residuals nonzero");

    const FieldElement one = FieldElement::one(K);
    // rational reconstruction of a T-series coefficient and value at T=1
    auto rational_at_one = [&](const DensePoly& series) -> FieldElement {
        if (series.degree() <= (int)delta) return series.eval(one);   // already polynomial
        // extended Euclid on (T^prec, series) stopped at remainder degree
        // <= pade_bound gives numerator and denominator
        DensePoly r0 = DensePoly::monomial(FieldElement::one(K), prec);
        DensePoly r1 = series;
        DensePoly v0 = DensePoly::zero(K), v1 = DensePoly::constant(FieldElement::one(K));
        while (!r1.is_zero() && r1.degree() > (int)pade_bound) {
            auto [qq, rr] = upoly::div_rem(r0, r1);
            DensePoly v2 = v0 - qq * v1;
            r0 = std::move(r1);
            r1 = std::move(rr);
            v0 = std::move(v1);
            v1 = std::move(v2);
        }
        if (r1.is_zero() || v1.degree() > (int)pade_bound)
            raise(Err::PathHitsDiscriminant, "rational reconstruction failed along the path");
        if (v1.eval(FieldElement::zero(K)).is_zero())
            raise(Err::PathHitsDiscriminant, "reconstructed denominator vanishes at T=0");
        // exactness: series * den = num mod T^prec
        DensePoly prod = series * v1;
        for (unsigned i = 0; i < prec; ++i)
            if (prod.coeff(i) != r1.coeff(i))
                raise(Err::PathHitsDiscriminant, "rational reconstruction mismatch");
        FieldElement den1 = v1.eval(one);
        if (den1.is_zero())
            raise(Err::PathHitsDiscriminant, "path denominator vanishes at T=1");
        return r1.eval(one) * invert(den1);
    };
    auto specialize_at_one = [&](const Bivar& b) {
        std::vector<FieldElement> c;
        c.reserve(b.coeffs().size());
        for (auto& coeff : b.coeffs()) c.push_back(rational_at_one(coeff));
        return DensePoly(K, std::move(c));
    };

    DensePoly q1 = specialize_at_one(res.q);
    if (q1.degree() != (int)delta || !upoly::is_squarefree(q1))
        raise(Err::PathHitsDiscriminant, "specialization at T=1 is not squarefree of full degree");

    LiftingFiber out;
    out.K = K;
    out.forms = mixed_frame(st, path, m);
    for (auto& qv : path.Q) out.lifting_point.push_back(st.emb.embed(qv));
    out.primitive = m;
    out.stage = (int)r;
    out.q = q1;
    // reconstruct the v-form, not the solved form: the solved form divides by
    // the derivative, whose discriminant-sized denominators blow past any
    // reasonable reconstruction bound, while v stays within the curve degree
    const FieldElement center0 = FieldElement::zero(K);
    SeriesPoly q_series = res.q.to_series_poly(center0, prec);
    Bivar dq_biv = res.q.derivative_y();
    for (auto& w : res.w) {
        SeriesPoly v_series =
            series_rem(w.to_series_poly(center0, prec) * dq_biv.to_series_poly(center0, prec),
                       q_series);
        Bivar v_biv = [&] {
            std::vector<DensePoly> cy;
            for (int i = 0; i <= v_series.degree(); ++i)
                cy.push_back(v_series.coeff((size_t)i).to_polynomial());
            return Bivar(K, std::move(cy));
        }();
        out.v.push_back(upoly::rem(specialize_at_one(v_biv), q1));
    }

    auto rep = validate_fiber(out, st.system, st.emb);
    if (!rep.pass())
        raise(Err::PathHitsDiscriminant, "deformed fiber failed validation: " + rep.detail);
    return out;
}

LiftingFiber change_primitive_element(const SolverState& st, const LiftingFiber& fiber,
                                      const HomotopyPath& path) {
    const Field& K = st.K;
    const size_t n = st.n, r = st.r;
    const size_t m = n - r;
    const int delta = fiber.q.degree();

    // value of the new primitive form along the current parametrization
    auto x = fiber_x_assignment(fiber);
    DensePoly z = DensePoly::constant(st.emb.embed(path.eta[m]));
    for (size_t j = 0; j < n; ++j) {
        FieldElement c = st.emb.embed(path.nu[m][j]);
        if (!c.is_zero()) z = z + x[j] * c;
    }
    z = upoly::rem(z, fiber.q);

    // sample abscissae from the base field: the resultant values interpolate
    // q(Q, S) (degree delta) and the T-coefficient interpolates v_{n-r+1}
    const unsigned needed = 2 * (unsigned)delta + 1;
    std::vector<std::pair<FieldElement, FieldElement>> q_pts, v_pts;
    u64 tried = 0;
    while (q_pts.size() < needed) {
        if ((u128)tried >= st.base->cardinality)
            raise(Err::InsufficientField, "not enough abscissae in the base field");
        FieldElement s = st.emb.embed(element_from_index(st.base, tried++));
        DensePoly lin = DensePoly::constant(s) - z;
        if (lin.is_zero()) continue;
        FieldElement a_val = upoly::resultant(fiber.q, lin);
        if (a_val.is_zero()) continue;   // s hits a root of the new q
        auto winv = upoly::invert_mod(lin, fiber.q);
        if (!winv) continue;
        DensePoly w_elem = upoly::rem(DensePoly::x(K) * *winv, fiber.q);
        // trace of multiplication by w_elem on K[U]/(q)
        FieldElement tr = FieldElement::zero(K);
        for (int j = 0; j < delta; ++j) {
            // coefficient of U^j in w_elem * U^j mod q
            DensePoly col = (j == 0) ? w_elem
                                     : upoly::rem(DensePoly::monomial(FieldElement::one(K),
                                                                      (size_t)j) * w_elem,
                                                  fiber.q);
            tr += col.coeff((size_t)j);
        }
        q_pts.push_back({s, a_val});
        v_pts.push_back({s, a_val * tr});
    }

    DensePoly q_new = upoly::interpolate(q_pts);
    DensePoly v_new = upoly::interpolate(v_pts);
    if (q_new.degree() != delta || !q_new.lc().is_one())
        raise(Err::NotSeparating, "interpolated minimal polynomial is not monic of full degree");
    if (v_new.degree() >= delta)
        raise(Err::NotSeparating, "interpolated parametrization exceeds the degree bound");
    if (!upoly::is_squarefree(q_new))
        raise(Err::NotSeparating, "new primitive form does not separate the fiber");

    // projectability to the base field is the whole point of the homotopy
    for (auto& c : q_new.coeffs())
        if (!st.emb.in_image(c))
            raise(Err::NotBaseField, "minimal polynomial has a coefficient outside the base field");

    auto dq_inv = upoly::invert_mod(upoly::derivative(q_new), q_new);
    if (!dq_inv) raise(Err::NotSeparating, "new q derivative not invertible");
    DensePoly w_old_prim = upoly::rem(v_new * *dq_inv, q_new);

    LiftingFiber out;
    out.K = K;
    out.forms = mixed_frame(st, path, m + 1);
    out.lifting_point = fiber.lifting_point;
    out.primitive = m;
    out.stage = (int)r;
    out.q = q_new;
    DensePoly dq_new = upoly::derivative(q_new);
    auto w_hat = fiber_solved_form(fiber);
    for (auto& wj : w_hat) {
        DensePoly w_comp = upoly::compose_mod(wj, w_old_prim, q_new);
        out.v.push_back(upoly::rem(w_comp * dq_new, q_new));
    }

    auto rep = validate_fiber(out, st.system, st.emb);
    if (!rep.pass())
        raise(Err::NotSeparating, "fiber with the new primitive failed validation: " + rep.detail);
    return out;
}

} // namespace ffk
