#include "ffk/ratpoint.hpp"

#include <cassert>

#include "ffk/rings.hpp"

namespace ffk {

namespace {

u128 bound_8n2d_delta4(size_t n, long d, long delta) {
    u128 b = (u128)8 * n * n * (u128)d;
    for (int i = 0; i < 4; ++i) {
        if (b > (u128(1) << 124) / (u128)std::max(1L, delta)) return u128(1) << 124;
        b *= (u128)std::max(1L, delta);
    }
    return b;
}

} // namespace

bool field_bound_ok(const ParsedSystem& input, long delta) {
    long d = 0;
    for (auto dg : input.degrees) d = std::max(d, dg);
    return input.base->cardinality >
           bound_8n2d_delta4(input.var_names.size(), d, delta);
}

std::string field_bound_text(const ParsedSystem& input, long delta) {
    long d = 0;
    for (auto dg : input.degrees) d = std::max(d, dg);
    u128 b = bound_8n2d_delta4(input.var_names.size(), d, delta);
    return "q = " + u128_to_string(input.base->cardinality) +
           " must exceed 8*n^2*d*delta_r^4 = " + u128_to_string(b) +
           " (n = " + std::to_string(input.var_names.size()) + ", d = " + std::to_string(d) +
           ", delta_r = " + std::to_string(delta) + ")";
}

PlaneSlice slice_to_plane_curve(const SolverState& st, const LiftingFiber& fiber_z,
                                const HomotopyPath& path, const Vec& omega) {
    const Field& K = st.K;
    const size_t n = st.n, r = st.r;
    const size_t m = n - r;
    assert(fiber_z.primitive == m && omega.size() == m);
    const unsigned delta = (unsigned)fiber_z.q.degree();
    const FieldElement center = FieldElement::zero(K);

    const Matrix& minv = fiber_z.forms.inverse_matrix();
    const Vec& shift = fiber_z.forms.shift();
    auto w0 = fiber_solved_form(fiber_z);

    AssignmentBuilder builder = [&, n, m](unsigned prec) {
        Assignment a;
        a.cst.reserve(n);
        a.coef.assign(n, {});
        for (size_t i = 0; i < n; ++i) {
            // constant part: sum over fixed rows of minv * (Q_j + omega_j T - shift_j)
            std::vector<FieldElement> cc(prec, FieldElement::zero(K));
            for (size_t j = 0; j < m; ++j) {
                FieldElement qj = st.emb.embed(path.Q[j]);
                FieldElement oj = st.emb.embed(omega[j]);
                cc[0] += minv[i][j] * (qj - shift[j]);
                if (prec >= 2) cc[1] += minv[i][j] * oj;
            }
            for (size_t j = m; j < n; ++j) cc[0] -= minv[i][j] * shift[j];
            a.cst.push_back(TruncatedSeries(center, std::move(cc)));
            for (size_t j = m; j < n; ++j)
                a.coef[i].push_back(TruncatedSeries::constant(minv[i][j], center, prec));
        }
        return a;
    };

    auto res = newton_lift(st.system, st.emb, builder, fiber_z.q, w0, delta + 1);
    if (!res.residuals_zero)
        raise(Err::LiftDiverged, "slice lift residuals nonzero");
    if (res.q.total_degree() > (long)delta)
        raise(Err::LiftDiverged, "slice curve exceeds the total degree bound");
    if (res.q.eval_free(FieldElement::zero(K)) != fiber_z.q)
        raise(Err::LiftDiverged, "slice does not restrict to the fiber at T=0");

    PlaneSlice slice;
    slice.omega = omega;
    slice.Q = path.Q;
    slice.h_K = res.q;
    // store the polynomial v-form: solved forms are series-truncated and only
    // valid near T=0, while v has total degree at most delta
    auto dq = res.q.derivative_y();
    for (auto& w : res.w)
        slice.v.push_back(bivar_rem_y(w * dq, res.q).truncate_free((int)delta));
    // h is base-field data: project coefficientwise
    std::vector<DensePoly> hb;
    for (auto& c : res.q.coeffs()) hb.push_back(st.emb.project_poly(c));
    slice.h = Bivar(st.base, std::move(hb));
    return slice;
}

CurvePoint find_curve_point(const PlaneSlice& slice, const Field& base, Rng& rng,
                            unsigned budget) {
    const int delta = slice.h.degree_y();
    Bivar dh = slice.h.derivative_y();
    std::vector<std::vector<u64>> seen;
    CurvePoint out{FieldElement::zero(base), FieldElement::zero(base), 0};
    for (unsigned trial = 0; trial < budget; ++trial) {
        // a sampled without replacement
        FieldElement a = sample_uniform(base, rng);
        int guard = 0;
        while (std::find(seen.begin(), seen.end(), a.coeffs()) != seen.end() && guard < 256) {
            a = sample_uniform(base, rng);
            ++guard;
        }
        seen.push_back(a.coeffs());
        ++out.trials;

        DensePoly h_a = slice.h.eval_free(a);
        if (h_a.degree() != delta) continue;   // degenerate column
        if (!upoly::is_squarefree(h_a)) continue;
        // h_a* = gcd(h_a, Z^q - Z)
        DensePoly xq = upoly::frobenius_power_x(h_a, 1);
        DensePoly h_star = upoly::gcd(xq - DensePoly::x(base), h_a);
        if (h_star.degree() < 1) continue;
        auto roots = upoly::roots_in_field(h_star, rng);
        for (auto& b : roots) {
            if (dh.eval(a, b).is_zero()) continue;   // ramified point, decode undefined
            out.a = a;
            out.b = b;
            return out;
        }
    }
    raise(Err::BudgetExhausted,
          "no rational curve point within " + std::to_string(budget) + " trials");
}

RatPointResult compute_rational_point(const ParsedSystem& input, const SolveConfig& cfg,
                                      Rng& rng) {
    const size_t n = input.var_names.size();
    const size_t r = input.polys.size();
    long d = 0, bezout = 1;
    for (size_t i = 0; i < input.degrees.size(); ++i) {
        if (input.degrees[i] == 0) {
            FieldOps ops{nullptr, input.base};
            Vec zero_pt(n, FieldElement::zero(input.base));
            if (!input.polys[i].eval(zero_pt, ops)[0].is_zero())
                raise(Err::InconsistentSystem,
                      "F_" + std::to_string(i + 1) + " is a nonzero constant");
        }
        d = std::max(d, input.degrees[i]);
        bezout = bezout * std::max(1L, input.degrees[i]);
        if (bezout > 100000) raise(Err::TooLarge, "Bezout bound beyond the solver guard");
    }
    if (n < 3 || d < 2 || r > n - 1 || r < 1)
        raise(Err::SyntaxError, "the pipeline needs n >= 3, max degree >= 2 and 1 <= r <= n-1");
    // pre-solve gate with the Bezout estimate standing in for delta_r
    if (cfg.enforce_field_bound && !field_bound_ok(input, bezout))
        raise(Err::FieldTooSmall, field_bound_text(input, bezout));

    auto solved = solve_to_lifting_fiber(input, cfg, rng);
    SolverState& st = solved.state;
    const long delta_r = solved.fiber.q.degree();
    // post-solve re-check against the true degree
    if (cfg.enforce_field_bound && !field_bound_ok(input, delta_r))
        raise(Err::FieldTooSmall, field_bound_text(input, delta_r));

    const unsigned point_budget =
        cfg.point_budget ? cfg.point_budget : (unsigned)std::max(1L, delta_r);

    std::string last_error = "no attempt made";
    for (unsigned end_try = 0; end_try < cfg.max_global_retries; ++end_try) {
        HomotopyPath path = sample_homotopy_end(st, rng);
        LiftingFiber fq_fiber;
        try {
            fq_fiber = deform_fiber_to_base_field(st, solved.fiber, path);
        } catch (const Error& e) {
            if (e.code() == Err::PathHitsDiscriminant) {
                last_error = e.what();
                continue;
            }
            throw;
        }
        st.trace.record("homotopy.deform", end_try, (unsigned)fq_fiber.q.degree());

        LiftingFiber z_fiber;
        bool primitive_ok = false;
        for (unsigned prim_try = 0; prim_try < cfg.lambda_budget; ++prim_try) {
            try {
                z_fiber = change_primitive_element(st, fq_fiber, path);
                st.trace.record("homotopy.primitive", prim_try, (unsigned)z_fiber.q.degree());
                primitive_ok = true;
                break;
            } catch (const Error& e) {
                if (e.code() == Err::NotSeparating) {
                    last_error = e.what();
                    // resample only the primitive row and its shift
                    for (auto& c : path.nu[st.n - st.r]) c = sample_uniform(st.base, rng);
                    path.eta[st.n - st.r] = sample_uniform(st.base, rng);
                    continue;
                }
                throw;
            }
        }
        if (!primitive_ok) continue;

        for (unsigned omega_try = 0; omega_try < cfg.omega_budget; ++omega_try) {
            Vec omega;
            for (size_t i = 0; i < st.n - st.r; ++i) omega.push_back(sample_uniform(st.base, rng));
            PlaneSlice slice;
            try {
                slice = slice_to_plane_curve(st, z_fiber, path, omega);
            } catch (const Error& e) {
                if (e.code() == Err::LiftDiverged) {
                    last_error = e.what();
                    continue;
                }
                throw;
            }
            CurvePoint cp;
            try {
                cp = find_curve_point(slice, st.base, rng, point_budget);
            } catch (const Error& e) {
                if (e.code() == Err::BudgetExhausted) {
                    last_error = e.what();
                    continue;
                }
                throw;
            }
            st.trace.record("ratpoint.search", cp.trials - 1, (unsigned)delta_r);

            // decode: evaluate the curve parametrizations at (a, b)
            const Field& K = st.K;
            FieldElement aK = st.emb.embed(cp.a), bK = st.emb.embed(cp.b);
            FieldElement dhv = slice.h_K.derivative_y().eval(aK, bK);
            if (dhv.is_zero()) continue;
            FieldElement dh_inv = invert(dhv);
            Vec y(st.n, FieldElement::zero(K));
            for (size_t j = 0; j < st.n - st.r; ++j)
                y[j] = st.emb.embed(omega[j]) * aK + st.emb.embed(path.Q[j]);
            y[st.n - st.r] = bK;
            for (size_t j = 0; j < slice.v.size(); ++j)
                y[st.n - st.r + 1 + j] = slice.v[j].eval(aK, bK) * dh_inv;
            Vec xK = z_fiber.forms.apply_inverse(y);

            bool rational = true;
            FieldOps kops{&st.emb, K};
            for (auto& c : xK)
                if (!st.emb.in_image(c)) rational = false;
            if (!rational) {
                last_error = "decoded point left the base field";
                continue;
            }
            Vec residK;
            for (auto& s : st.system) residK.push_back(s.eval(xK, kops)[0]);
            bool zero = true;
            for (auto& rv : residK)
                if (!rv.is_zero()) zero = false;
            if (!zero) {
                last_error = "decoded point has nonzero residual";
                continue;
            }

            RatPointResult out;
            for (auto& c : xK) out.point.coords.push_back(st.emb.project(c));
            FieldOps bops{nullptr, st.base};
            for (auto& s : st.system)
                out.point.residuals.push_back(s.eval(out.point.coords, bops)[0]);
            out.trace = st.trace;
            for (auto dlt : st.trace.deltas) out.deltas.push_back(dlt);
            return out;
        }
    }
    raise(Err::RetriesExhausted,
          "rational point search gave up; last failure: " + last_error);
}

} // namespace ffk
