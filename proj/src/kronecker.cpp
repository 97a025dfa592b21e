#include "ffk/kronecker.hpp"

#include <cassert>

#include "ffk/rings.hpp"

namespace ffk {

namespace {

using SQ = SeriesPoly;

// cofactor-expansion determinant over the series quotient ring; dependent
// counts stay small (r <= n-1 on desk-sized systems)
SQ sq_det(const std::vector<std::vector<SQ>>& m, const SeriesQuotOps& ops) {
    const size_t k = m.size();
    if (k == 1) return m[0][0];
    SQ acc = SQ::zero(ops.modulus.field(), ops.modulus.center(), ops.modulus.precision());
    for (size_t j = 0; j < k; ++j) {
        if (m[0][j].is_zero()) continue;
        std::vector<std::vector<SQ>> minor(k - 1);
        for (size_t i = 1; i < k; ++i)
            for (size_t l = 0; l < k; ++l)
                if (l != j) minor[i - 1].push_back(m[i][l]);
        SQ term = ops.mul(m[0][j], sq_det(minor, ops));
        acc = (j % 2 == 0) ? ops.add(acc, term) : ops.sub(acc, term);
    }
    return acc;
}

// minor with row `ri` and column `ci` removed
std::vector<std::vector<SQ>> sq_minor(const std::vector<std::vector<SQ>>& m, size_t ri,
                                      size_t ci) {
    std::vector<std::vector<SQ>> out;
    for (size_t i = 0; i < m.size(); ++i) {
        if (i == ri) continue;
        std::vector<SQ> row;
        for (size_t j = 0; j < m.size(); ++j)
            if (j != ci) row.push_back(m[i][j]);
        out.push_back(std::move(row));
    }
    return out;
}

SQ extend_sq(const SQ& s, unsigned prec) {
    std::vector<TruncatedSeries> c;
    c.reserve((size_t)(s.degree() + 1));
    for (int i = 0; i <= s.degree(); ++i) c.push_back(s.coeff((size_t)i).extended(prec));
    return SQ(s.center(), prec, std::move(c));
}

Bivar sq_to_bivar(const SQ& s) {
    std::vector<DensePoly> cy;
    cy.reserve((size_t)(s.degree() + 1));
    for (int i = 0; i <= s.degree(); ++i) cy.push_back(s.coeff((size_t)i).to_polynomial());
    return Bivar(s.field(), std::move(cy));
}

} // namespace

NewtonLiftResult newton_lift(const std::vector<Slp>& eqs, const FieldEmbedding& emb,
                             const AssignmentBuilder& assignment, const DensePoly& q0,
                             const std::vector<DensePoly>& w0, unsigned target_prec) {
    const Field& K = q0.field();
    const size_t ndep = w0.size() + 1;
    assert(eqs.size() == ndep);
    if (target_prec > 4096) raise(Err::PrecisionExceeded, "lift precision beyond the guard");
    const FieldElement center = FieldElement::zero(K);

    unsigned prec = 1;
    SQ qs = Bivar::of_univariate(q0).to_series_poly(center, prec);
    std::vector<SQ> ws;
    for (auto& w : w0) ws.push_back(Bivar::of_univariate(w).to_series_poly(center, prec));

    auto build_inputs = [&](const Assignment& asn, const SeriesQuotOps& ops,
                            const std::vector<SQ>& deps) {
        const size_t n = asn.cst.size();
        std::vector<SQ> x;
        x.reserve(n);
        for (size_t i = 0; i < n; ++i) {
            SQ acc(ops.modulus.center(), ops.modulus.precision(), {asn.cst[i]});
            for (size_t j = 0; j < ndep; ++j) {
                if (asn.coef[i][j].is_zero()) continue;
                acc = ops.add(acc, deps[j].scale(asn.coef[i][j]));
            }
            x.push_back(std::move(acc));
        }
        return x;
    };

    while (prec < target_prec) {
        const unsigned next = std::min(2 * prec, target_prec);
        qs = extend_sq(qs, next);
        for (auto& w : ws) w = extend_sq(w, next);
        Assignment asn = assignment(next);

        SeriesQuotOps ops{&emb, qs};
        std::vector<SQ> deps;
        deps.push_back(SQ::y(K, center, next));
        for (auto& w : ws) deps.push_back(w);
        std::vector<SQ> x = build_inputs(asn, ops, deps);

        std::vector<SQ> eps;
        eps.reserve(ndep);
        for (auto& eq : eqs) eps.push_back(eq.eval(x, ops)[0]);

        DualOps<SeriesQuotOps> dops{&ops};
        std::vector<std::vector<SQ>> jac(ndep, std::vector<SQ>(ndep));
        for (size_t j = 0; j < ndep; ++j) {
            std::vector<DualOps<SeriesQuotOps>::V> din;
            din.reserve(x.size());
            for (size_t i = 0; i < x.size(); ++i)
                din.push_back(dops.seed(
                    x[i], SQ(center, next, {asn.coef[i][j]})));
            for (size_t i = 0; i < ndep; ++i) jac[i][j] = eqs[i].eval(din, dops)[0].der;
        }

        SQ det = sq_det(jac, ops);
        auto det_inv = series_quot_invert(det, qs);
        if (!det_inv)
            raise(Err::BadRandomChoice, "Jacobian not invertible on the start fiber");

        // delta = det^{-1} adj(J) eps
        std::vector<SQ> delta(ndep, SQ::zero(K, center, next));
        for (size_t i = 0; i < ndep; ++i) {
            SQ acc = SQ::zero(K, center, next);
            for (size_t j = 0; j < ndep; ++j) {
                if (ndep == 1) {
                    acc = ops.add(acc, eps[j]);
                    continue;
                }
                SQ cof = sq_det(sq_minor(jac, j, i), ops);
                SQ term = ops.mul(cof, eps[j]);
                acc = ((i + j) % 2 == 0) ? ops.add(acc, term) : ops.sub(acc, term);
            }
            delta[i] = ops.mul(*det_inv, acc);
        }

        // primitive-coordinate correction updates q; remaining coordinates are
        // re-expressed against the corrected primitive value
        const SQ& c = delta[0];
        SQ q_next = qs + series_rem(qs.derivative() * c, qs);
        std::vector<SQ> w_next;
        w_next.reserve(ws.size());
        for (size_t j = 0; j < ws.size(); ++j) {
            SQ upd = ws[j] - delta[j + 1] + series_rem(ws[j].derivative() * c, qs);
            w_next.push_back(series_rem(upd, q_next));
        }
        qs = std::move(q_next);
        ws = std::move(w_next);
        prec = next;
    }

    NewtonLiftResult out;
    out.q = sq_to_bivar(qs);
    for (auto& w : ws) out.w.push_back(sq_to_bivar(w));

    // final residual pass at full precision
    Assignment asn = assignment(prec);
    SeriesQuotOps ops{&emb, qs};
    std::vector<SQ> deps;
    deps.push_back(SQ::y(K, center, prec));
    for (auto& w : ws) deps.push_back(w);
    std::vector<SQ> x = build_inputs(asn, ops, deps);
    out.residuals_zero = true;
    for (auto& eq : eqs)
        if (!eq.eval(x, ops)[0].is_zero()) {
            out.residuals_zero = false;
            break;
        }
    return out;
}

SolverState make_solver_state(const ParsedSystem& input, const SolveConfig& cfg, Rng& rng) {
    SolverState st;
    st.system = input.polys;
    st.degrees = input.degrees;
    st.base = input.base;
    st.n = input.var_names.size();
    st.r = input.polys.size();
    st.cfg = cfg;
    if (st.r < 1 || st.r > st.n)
        raise(Err::SyntaxError, "the solver needs 1 <= r <= n polynomials");
    for (size_t i = 0; i < st.r; ++i) {
        if (st.degrees[i] == 0) {
            // constant polynomial: nonzero means the variety is empty
            FieldOps ops{nullptr, st.base};
            Vec zero_pt(st.n, FieldElement::zero(st.base));
            if (!st.system[i].eval(zero_pt, ops)[0].is_zero())
                raise(Err::InconsistentSystem,
                      "F_" + std::to_string(i + 1) + " is a nonzero constant");
            raise(Err::SyntaxError, "F_" + std::to_string(i + 1) + " is the zero polynomial");
        }
    }
    st.d = 0;
    st.bezout = 1;
    for (auto dg : st.degrees) {
        st.d = std::max(st.d, dg);
        if (st.bezout > 100000) raise(Err::TooLarge, "Bezout bound beyond the solver guard");
        st.bezout *= dg;
    }

    // working field K: smallest extension of the base field whose cardinality
    // clears 60 n^4 d D^4 (D the Bezout bound standing in for the unknown
    // system degree)
    unsigned k = input.base->k;
    if (cfg.k_override) {
        k = *cfg.k_override;
        if (k % input.base->k != 0)
            raise(Err::SyntaxError, "field degree override must be a multiple of the base degree");
    } else {
        u128 bound = (u128)60 * st.n * st.n * st.n * st.n * (u128)st.d;
        for (int i = 0; i < 4; ++i) {
            if (bound > (u128(1) << 120) / (u128)st.bezout) {
                bound = u128(1) << 120;
                break;
            }
            bound *= (u128)st.bezout;
        }
        while (true) {
            u128 card = 1;
            bool over = false;
            for (unsigned i = 0; i < k; ++i) {
                if (card > (u128(1) << 125) / input.base->p) {
                    over = true;
                    break;
                }
                card *= input.base->p;
            }
            if (over || card > bound) break;
            k += input.base->k;
        }
    }
    if (k == input.base->k) {
        st.K = input.base;
        st.emb = FieldEmbedding::identity(st.base);
    } else {
        Rng modulus_rng(input.base->p * 16777259ULL + k);
        st.K = make_field(input.base->p, k, modulus_rng);
        st.emb = FieldEmbedding::make(st.base, st.K, rng);
    }
    st.trace.field_degree = k;
    return st;
}

void resample_genericity(SolverState& st, Rng& rng) {
    st.forms = LinearForms::sample_invertible(st.K, st.n, rng);
    st.point.clear();
    for (size_t i = 0; i + 1 < st.n; ++i) st.point.push_back(sample_uniform(st.K, rng));
}

LiftingFiber init_base_fiber(const SolverState& st) {
    const Field& K = st.K;
    const size_t n = st.n;
    const Matrix& minv = st.forms.inverse_matrix();
    const Vec& shift = st.forms.shift();

    // X_i as affine polynomials in the primitive value Y_n
    std::vector<DensePoly> x;
    x.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        DensePoly acc = DensePoly::zero(K);
        for (size_t j = 0; j < n; ++j) {
            if (minv[i][j].is_zero()) continue;
            DensePoly yj = (j + 1 < n) ? DensePoly::constant(st.point[j]) : DensePoly::x(K);
            acc = acc + (yj - DensePoly::constant(shift[j])) * minv[i][j];
        }
        x.push_back(acc);
    }
    PolyOps pops{&st.emb, K};
    DensePoly q = st.system[0].eval(x, pops)[0];
    if (q.degree() != (int)st.degrees[0])
        raise(Err::BadRandomChoice, "specialized F_1 drops degree");
    q = upoly::monic(q);
    if (!upoly::is_squarefree(q))
        raise(Err::BadRandomChoice, "specialized F_1 is not squarefree");

    LiftingFiber fb;
    fb.K = K;
    fb.forms = st.forms;
    fb.lifting_point.assign(st.point.begin(), st.point.begin() + (long)(n - 1));
    fb.primitive = n - 1;
    fb.stage = 1;
    fb.q = std::move(q);
    return fb;
}

GeometricSolutionCurve lift_fiber_to_curve(const SolverState& st, const LiftingFiber& fiber) {
    const Field& K = st.K;
    const size_t n = st.n;
    const size_t m = fiber.primitive;
    const size_t s = (size_t)fiber.stage;
    const unsigned delta = (unsigned)fiber.q.degree();
    const Matrix& minv = fiber.forms.inverse_matrix();
    const Vec& shift = fiber.forms.shift();
    const FieldElement center = FieldElement::zero(K);
    const FieldElement free_val = fiber.lifting_point[m - 1];

    std::vector<Slp> eqs(st.system.begin(), st.system.begin() + (long)s);
    auto w0 = fiber_solved_form(fiber);

    AssignmentBuilder builder = [&, m, n](unsigned prec) {
        Assignment a;
        a.cst.reserve(n);
        a.coef.assign(n, {});
        for (size_t i = 0; i < n; ++i) {
            FieldElement c0 = FieldElement::zero(K);
            for (size_t j = 0; j < m; ++j) {
                FieldElement yj = (j + 1 < m) ? fiber.lifting_point[j] : free_val;
                c0 += minv[i][j] * (yj - shift[j]);
            }
            for (size_t j = m; j < n; ++j) c0 -= minv[i][j] * shift[j];
            auto cst = TruncatedSeries::constant(c0, center, prec);
            if (prec >= 2 && !minv[i][m - 1].is_zero()) {
                std::vector<FieldElement> cc(prec, FieldElement::zero(K));
                cc[0] = c0;
                cc[1] = minv[i][m - 1];
                cst = TruncatedSeries(center, std::move(cc));
            }
            a.cst.push_back(std::move(cst));
            for (size_t j = m; j < n; ++j)
                a.coef[i].push_back(TruncatedSeries::constant(minv[i][j], center, prec));
        }
        return a;
    };

    auto assemble = [&](const NewtonLiftResult& res) {
        GeometricSolutionCurve c;
        c.K = K;
        c.forms = fiber.forms;
        c.base_point.assign(fiber.lifting_point.begin(), fiber.lifting_point.end() - 1);
        c.free_index = m - 1;
        c.primitive = m;
        c.stage = (int)s;
        c.q = res.q.shift_free(-free_val);
        // the solved forms carry series truncations; the v-form is polynomial
        // with free-degree at most delta, so truncation recovers it exactly
        auto dq = res.q.derivative_y();
        for (auto& w : res.w)
            c.v.push_back(
                bivar_rem_y(w * dq, res.q).truncate_free((int)delta).shift_free(-free_val));
        return c;
    };

    auto ok = [&](const NewtonLiftResult& res) {
        return res.residuals_zero && res.q.total_degree() <= (long)delta;
    };

    auto res = newton_lift(eqs, st.emb, builder, fiber.q, w0, delta + 1);
    if (ok(res)) return assemble(res);
    // one doubling before giving up: masks nothing, higher coefficients must
    // come out zero for a valid random choice
    res = newton_lift(eqs, st.emb, builder, fiber.q, w0, 2 * delta + 1);
    if (ok(res)) return assemble(res);
    raise(Err::LiftDiverged, "curve lift residuals nonzero at stage " + std::to_string(s));
}

DensePoly intersect_minimal_polynomial(const SolverState& st,
                                       const GeometricSolutionCurve& curve, const Slp& next_eq,
                                       const FieldElement& lambda, Rng& rng,
                                       unsigned* alpha_retries) {
    const Field& K = st.K;
    const size_t n = st.n;
    const size_t m = curve.primitive;
    const int delta = curve.q.degree_y();
    const Matrix& minv = curve.forms.inverse_matrix();
    const Vec& shift = curve.forms.shift();

    Bivar q_sh = curve.q.shear_free(lambda);
    if (q_sh.degree_y() != delta)
        raise(Err::UnluckyLambda, "sheared q drops degree in the primitive variable");
    DensePoly lead = q_sh.coeff((size_t)delta);
    if (lead.degree() != 0)
        raise(Err::UnluckyLambda, "sheared q has a nonconstant leading coefficient");
    q_sh = q_sh.scale(invert(lead.coeff(0)));

    Bivar e_sh = curve.q.derivative_y().shear_free(lambda);
    std::vector<Bivar> v_sh;
    for (auto& v : curve.v) v_sh.push_back(v.shear_free(lambda));

    const unsigned prec = (unsigned)(st.d * delta) + 1;
    for (unsigned attempt = 0; attempt < st.cfg.alpha_budget; ++attempt) {
        if (alpha_retries && attempt) ++*alpha_retries;
        FieldElement alpha = sample_uniform(K, rng);
        SQ qs = q_sh.to_series_poly(alpha, prec);
        SQ es = series_rem(e_sh.to_series_poly(alpha, prec), qs);
        auto inv_e = series_quot_invert(es, qs);
        if (!inv_e) continue;   // ramified or non-separable center

        std::vector<SQ> w;
        w.reserve(v_sh.size());
        for (auto& v : v_sh) {
            SQ vs = series_rem(v.to_series_poly(alpha, prec), qs);
            w.push_back(series_rem(vs * *inv_e, qs));
        }

        SeriesQuotOps ops{&st.emb, qs};
        const FieldElement center = alpha;
        // ring elements of the frame coordinates
        std::vector<FieldElement> lc(prec, FieldElement::zero(K));
        lc[0] = alpha;
        if (prec >= 2) lc[1] = FieldElement::one(K);
        SQ l_elem(center, prec, {TruncatedSeries(center, lc)});
        SQ y_elem = SQ::y(K, center, prec);

        std::vector<SQ> yvals(n, SQ::zero(K, center, prec));
        for (size_t j = 0; j + 1 < m; ++j)
            yvals[j] = SQ(center, prec, {TruncatedSeries::constant(curve.base_point[j], center, prec)});
        yvals[m - 1] = l_elem - y_elem.scale(TruncatedSeries::constant(lambda, center, prec));
        yvals[m] = y_elem;
        for (size_t j = m + 1; j < n; ++j) yvals[j] = w[j - m - 1];

        std::vector<SQ> x(n, SQ::zero(K, center, prec));
        for (size_t i = 0; i < n; ++i) {
            SQ acc = SQ::zero(K, center, prec);
            for (size_t j = 0; j < n; ++j) {
                if (minv[i][j].is_zero()) continue;
                SQ t = yvals[j] - SQ(center, prec,
                                     {TruncatedSeries::constant(shift[j], center, prec)});
                acc = acc + t.scale(TruncatedSeries::constant(minv[i][j], center, prec));
            }
            x[i] = series_rem(acc, qs);
        }

        SQ f = next_eq.eval(x, ops)[0];
        if (f.is_zero())
            raise(Err::BadRandomChoice,
                  "next equation vanishes on the curve (input may not be a reduced regular "
                  "sequence)");
        TruncatedSeries res_series(center, {});
        try {
            res_series = series_poly_eea(qs, f).resultant;
        } catch (const Error& e) {
            if (e.code() == Err::UnluckyCenter) continue;
            throw;
        }
        DensePoly g = res_series.to_polynomial();
        if (g.is_zero()) continue;   // resultant vanished to precision: unlucky center
        return upoly::squarefree_part(g);
    }
    raise(Err::UnluckyCenter, "no lucky expansion center within budget");
}

namespace {

// arithmetic for gcds over K[x]/(q_j)[Y] with q_j irreducible
struct QuotPoly {
    std::vector<DensePoly> c;   // coefficient i of Y^i, reduced mod q_j
};

QuotPoly qp_trim(QuotPoly a) {
    while (!a.c.empty() && a.c.back().is_zero()) a.c.pop_back();
    return a;
}

QuotPoly qp_monicize(const QuotPoly& a, const DensePoly& qj) {
    auto inv = upoly::invert_mod(a.c.back(), qj);
    if (!inv) raise(Err::ZeroDivisorHit, "leading coefficient not invertible mod a factor");
    QuotPoly r;
    for (auto& ci : a.c) r.c.push_back(upoly::rem(ci * *inv, qj));
    return r;
}

QuotPoly qp_rem(const QuotPoly& a, const QuotPoly& b_monic, const DensePoly& qj) {
    QuotPoly r = a;
    const int db = (int)b_monic.c.size() - 1;
    while ((int)r.c.size() - 1 >= db) {
        DensePoly lead = r.c.back();
        size_t sh = r.c.size() - 1 - (size_t)db;
        if (!lead.is_zero()) {
            for (int i = 0; i <= db; ++i) {
                r.c[sh + (size_t)i] =
                    r.c[sh + (size_t)i] - upoly::rem(lead * b_monic.c[(size_t)i], qj);
            }
        }
        r.c.pop_back();
        r = qp_trim(r);
        if (r.c.empty()) break;
    }
    return r;
}

} // namespace

LiftingFiber recombine_parametrizations(const SolverState& st,
                                        const GeometricSolutionCurve& curve,
                                        const DensePoly& q_zero, const FieldElement& lambda1,
                                        const DensePoly& q_l1, const FieldElement& lambda2,
                                        const DensePoly& q_l2, Rng& rng) {
    const Field& K = st.K;
    const size_t m = curve.primitive;
    const size_t s = (size_t)curve.stage;
    const int dnew = q_zero.degree();
    if (q_l1.degree() != dnew || q_l2.degree() != dnew)
        raise(Err::UnluckyLambda, "minimal polynomial degrees disagree");

    auto factors = upoly::factor(q_zero, rng);
    // gcd of the two shifted minimal polynomials in each residue field must
    // be monic linear; its root parametrizes the old primitive coordinate
    std::vector<DensePoly> vj_parts;
    for (auto& [qj, mult] : factors) {
        (void)mult;
        auto compose = [&](const DensePoly& qmin, const FieldElement& lam) {
            // qmin(theta + lam*Y) over K[x]/(qj)
            QuotPoly arg;
            arg.c = {upoly::rem(DensePoly::x(K), qj), DensePoly::constant(lam)};
            arg = qp_trim(arg);
            QuotPoly acc;
            for (int i = qmin.degree(); i >= 0; --i) {
                // acc = acc*arg + coeff
                QuotPoly next;
                if (!acc.c.empty()) {
                    next.c.assign(acc.c.size() + arg.c.size() - 1, DensePoly::zero(K));
                    for (size_t a = 0; a < acc.c.size(); ++a)
                        for (size_t b = 0; b < arg.c.size(); ++b)
                            next.c[a + b] =
                                next.c[a + b] + upoly::rem(acc.c[a] * arg.c[b], qj);
                }
                if (next.c.empty()) next.c.push_back(DensePoly::zero(K));
                next.c[0] = next.c[0] + DensePoly::constant(qmin.coeff((size_t)i));
                acc = qp_trim(next);
            }
            return acc;
        };
        QuotPoly g1 = compose(q_l1, lambda1);
        QuotPoly g2 = compose(q_l2, lambda2);
        // Euclid
        QuotPoly a = g1, b = g2;
        while (!b.c.empty()) {
            QuotPoly bm = qp_monicize(b, qj);
            QuotPoly r = qp_rem(a, bm, qj);
            a = std::move(bm);
            b = std::move(r);
        }
        if ((int)a.c.size() - 1 != 1)
            raise(Err::NonLinearGcd, "gcd in a residue field is not linear");
        // a = Y - v_j after monicization
        QuotPoly lin = qp_monicize(a, qj);
        vj_parts.push_back(-lin.c[0]);
    }

    // v for the old primitive row: sum q_j' v_j prod_{i != j} q_i mod q_zero
    DensePoly v_combined = DensePoly::zero(K);
    for (size_t j = 0; j < factors.size(); ++j) {
        DensePoly rest = upoly::div_rem(q_zero, factors[j].first).first;
        v_combined =
            v_combined + upoly::derivative(factors[j].first) * vj_parts[j] * rest;
    }
    v_combined = upoly::rem(v_combined, q_zero);

    DensePoly dq_new = upoly::derivative(q_zero);
    auto dq_inv = upoly::invert_mod(dq_new, q_zero);
    if (!dq_inv) raise(Err::ZeroDivisorHit, "new q is not squarefree");
    DensePoly w_prim = upoly::rem(v_combined * *dq_inv, q_zero);

    // clean the old primitive variable out of the curve parametrizations
    DensePoly d_old = upoly::rem(curve.q.derivative_y().substitute_y(w_prim), q_zero);
    auto h_inv = upoly::invert_mod(d_old, q_zero);
    if (!h_inv) raise(Err::ZeroDivisorHit, "old derivative not invertible mod the new q");

    LiftingFiber fb;
    fb.K = K;
    fb.forms = curve.forms;
    fb.lifting_point = curve.base_point;
    fb.primitive = m - 1;
    fb.stage = (int)s + 1;
    fb.q = q_zero;
    fb.v.push_back(v_combined);
    for (size_t j = 0; j < curve.v.size(); ++j) {
        DensePoly comp = upoly::rem(curve.v[j].substitute_y(w_prim), q_zero);
        DensePoly w_row = upoly::rem(*h_inv * comp, q_zero);
        fb.v.push_back(upoly::rem(w_row * dq_new, q_zero));
    }

    auto rep = validate_fiber(fb, st.system, st.emb);
    if (!rep.pass())
        raise(Err::ValidationFailed, "recombined fiber failed validation: " + rep.detail);
    return fb;
}

LiftingFiber advance_stage(const SolverState& st, const LiftingFiber& fiber, Rng& rng,
                           SolveTrace* trace) {
    const size_t s = (size_t)fiber.stage;
    auto curve = lift_fiber_to_curve(st, fiber);
    const Slp& next_eq = st.system[s];

    unsigned alpha_retries = 0;
    DensePoly q_zero =
        intersect_minimal_polynomial(st, curve, next_eq, FieldElement::zero(st.K), rng,
                                     &alpha_retries);
    if (q_zero.degree() == 0)
        raise(Err::InconsistentSystem,
              "stage " + std::to_string(s + 1) + " minimal polynomial is a nonzero constant");

    unsigned lambda_retries = 0;
    for (unsigned attempt = 0; attempt < st.cfg.lambda_budget; ++attempt) {
        FieldElement l1 = sample_uniform(st.K, rng);
        FieldElement l2 = sample_uniform(st.K, rng);
        if (l1.is_zero() || l2.is_zero() || l1 == l2) continue;
        try {
            DensePoly q1 = intersect_minimal_polynomial(st, curve, next_eq, l1, rng,
                                                        &alpha_retries);
            DensePoly q2 = intersect_minimal_polynomial(st, curve, next_eq, l2, rng,
                                                        &alpha_retries);
            int dmax = std::max({q_zero.degree(), q1.degree(), q2.degree()});
            if (q_zero.degree() < dmax)
                raise(Err::BadRandomChoice,
                      "the next free coordinate does not separate the new fiber");
            if (q1.degree() < dmax || q2.degree() < dmax) {
                ++lambda_retries;
                continue;
            }
            auto fb = recombine_parametrizations(st, curve, q_zero, l1, q1, l2, q2, rng);
            if (trace) {
                trace->record("stage" + std::to_string(s + 1) + ".recombine",
                              lambda_retries + alpha_retries, (unsigned)fb.q.degree());
            }
            return fb;
        } catch (const Error& e) {
            switch (e.code()) {
                case Err::UnluckyLambda:
                case Err::NonLinearGcd:
                case Err::ZeroDivisorHit:
                case Err::ValidationFailed:
                case Err::UnluckyCenter:
                    ++lambda_retries;
                    continue;
                default: throw;
            }
        }
    }
    raise(Err::BadRandomChoice,
          "lambda budget exhausted at stage " + std::to_string(s + 1));
}

SolveResult solve_to_lifting_fiber(const ParsedSystem& input, const SolveConfig& cfg, Rng& rng) {
    SolverState st = make_solver_state(input, cfg, rng);
    if (st.n < 3 || st.r > st.n - 1)
        raise(Err::SyntaxError, "the full solver contract needs n >= 3 and r <= n-1");

    std::string last_error = "no attempt made";
    for (unsigned g = 0; g < cfg.max_global_retries; ++g) {
        SolverState trial = st;
        trial.trace.global_retries = g;
        resample_genericity(trial, rng);
        try {
            auto fiber = init_base_fiber(trial);
            trial.trace.record("stage1.init", 0, (unsigned)fiber.q.degree());
            trial.trace.deltas.push_back((unsigned)fiber.q.degree());
            for (size_t s = 1; s < trial.r; ++s) {
                fiber = advance_stage(trial, fiber, rng, &trial.trace);
                trial.trace.deltas.push_back((unsigned)fiber.q.degree());
            }
            return {std::move(fiber), std::move(trial)};
        } catch (const Error& e) {
            switch (e.code()) {
                case Err::BadRandomChoice:
                case Err::LiftDiverged:
                case Err::UnluckyLambda:
                case Err::UnluckyCenter:
                case Err::NonLinearGcd:
                case Err::ZeroDivisorHit:
                case Err::ValidationFailed:
                case Err::NotLiftingPoint:
                    last_error = e.what();
                    continue;
                default: throw;
            }
        }
    }
    raise(Err::RetriesExhausted, "solver gave up after " +
                                     std::to_string(cfg.max_global_retries) +
                                     " global retries; last failure: " + last_error);
}

} // namespace ffk
