#include "ffk/geosol.hpp"

#include <cassert>

#include "ffk/rings.hpp"

namespace ffk {

Bivar::Bivar(Field f, std::vector<DensePoly> cy) : f_(std::move(f)), cy_(std::move(cy)) {
    normalize();
}

void Bivar::normalize() {
    while (!cy_.empty() && cy_.back().is_zero()) cy_.pop_back();
}

Bivar Bivar::of_univariate(const DensePoly& q) {
    std::vector<DensePoly> cy;
    cy.reserve(q.coeffs().size());
    for (auto& c : q.coeffs()) cy.push_back(DensePoly::constant(c));
    return Bivar(q.field(), std::move(cy));
}

int Bivar::degree_free() const {
    int d = -1;
    for (auto& c : cy_) d = std::max(d, c.degree());
    return d;
}

long Bivar::total_degree() const {
    long d = -1;
    for (size_t i = 0; i < cy_.size(); ++i)
        if (!cy_[i].is_zero()) d = std::max(d, (long)i + cy_[i].degree());
    return d;
}

DensePoly Bivar::coeff(size_t i) const {
    if (i < cy_.size()) return cy_[i];
    return DensePoly::zero(f_);
}

bool Bivar::monic_in_y() const {
    return !cy_.empty() && cy_.back().degree() == 0 && cy_.back().coeff(0).is_one();
}

Bivar Bivar::operator+(const Bivar& o) const {
    std::vector<DensePoly> r;
    size_t n = std::max(cy_.size(), o.cy_.size());
    r.reserve(n);
    for (size_t i = 0; i < n; ++i) r.push_back(coeff(i) + o.coeff(i));
    return Bivar(f_ ? f_ : o.f_, std::move(r));
}

Bivar Bivar::operator-(const Bivar& o) const { return *this + (-o); }

Bivar Bivar::operator-() const {
    std::vector<DensePoly> r;
    r.reserve(cy_.size());
    for (auto& c : cy_) r.push_back(-c);
    return Bivar(f_, std::move(r));
}

Bivar Bivar::operator*(const Bivar& o) const {
    if (is_zero() || o.is_zero()) return Bivar(f_ ? f_ : o.f_);
    std::vector<DensePoly> r(cy_.size() + o.cy_.size() - 1, DensePoly::zero(f_));
    for (size_t i = 0; i < cy_.size(); ++i) {
        if (cy_[i].is_zero()) continue;
        for (size_t j = 0; j < o.cy_.size(); ++j) r[i + j] = r[i + j] + cy_[i] * o.cy_[j];
    }
    return Bivar(f_, std::move(r));
}

Bivar Bivar::scale(const FieldElement& c) const {
    std::vector<DensePoly> r;
    r.reserve(cy_.size());
    for (auto& p : cy_) r.push_back(p * c);
    return Bivar(f_, std::move(r));
}

Bivar Bivar::derivative_y() const {
    if (cy_.size() <= 1) return Bivar(f_);
    std::vector<DensePoly> r;
    r.reserve(cy_.size() - 1);
    for (size_t i = 1; i < cy_.size(); ++i)
        r.push_back(cy_[i] * FieldElement::from_int(f_, (u64)i));
    return Bivar(f_, std::move(r));
}

Bivar Bivar::derivative_free() const {
    std::vector<DensePoly> r;
    r.reserve(cy_.size());
    for (auto& c : cy_) r.push_back(upoly::derivative(c));
    return Bivar(f_, std::move(r));
}

DensePoly Bivar::eval_free(const FieldElement& value) const {
    std::vector<FieldElement> c;
    c.reserve(cy_.size());
    for (auto& p : cy_) c.push_back(p.eval(value));
    return DensePoly(f_, std::move(c));
}

FieldElement Bivar::eval(const FieldElement& free_v, const FieldElement& y_v) const {
    return eval_free(free_v).eval(y_v);
}

Bivar Bivar::shear_free(const FieldElement& lambda) const {
    // free := L - lambda*y; expand each coefficient at the sheared argument
    Bivar arg(f_, {DensePoly::x(f_), DensePoly::constant(-lambda)});   // L - lambda*y
    Bivar y_mono(f_, {DensePoly::zero(f_), DensePoly::constant(FieldElement::one(f_))});
    Bivar result(f_);
    for (size_t i = cy_.size(); i-- > 0;) {
        // result = result * y + c_i(arg)
        Bivar ci(f_);
        for (int j = cy_[i].degree(); j >= 0; --j) {
            ci = ci * arg + Bivar(f_, {DensePoly::constant(cy_[i].coeff((size_t)j))});
        }
        result = result * y_mono + ci;
    }
    return result;
}

DensePoly Bivar::substitute_y(const DensePoly& g) const {
    DensePoly r = DensePoly::zero(f_);
    for (size_t i = cy_.size(); i-- > 0;) r = r * g + cy_[i];
    return r;
}

SeriesPoly Bivar::to_series_poly(const FieldElement& center, unsigned prec) const {
    std::vector<TruncatedSeries> c;
    c.reserve(cy_.size());
    for (auto& p : cy_) c.push_back(TruncatedSeries::of_polynomial(p, center, prec));
    return SeriesPoly(center, prec, std::move(c));
}

Bivar Bivar::shift_free(const FieldElement& c) const {
    std::vector<DensePoly> r;
    r.reserve(cy_.size());
    for (auto& p : cy_) r.push_back(upoly::compose_affine(p, FieldElement::one(f_), c));
    return Bivar(f_, std::move(r));
}

Bivar Bivar::truncate_free(int max_deg) const {
    std::vector<DensePoly> r;
    r.reserve(cy_.size());
    for (auto& p : cy_) {
        std::vector<FieldElement> c(p.coeffs().begin(),
                                    p.coeffs().begin() +
                                        std::min<size_t>(p.coeffs().size(), (size_t)max_deg + 1));
        r.emplace_back(f_, std::move(c));
    }
    return Bivar(f_, std::move(r));
}

Bivar bivar_rem_y(const Bivar& f, const Bivar& g) {
    assert(g.monic_in_y());
    Bivar r = f;
    const Field& fld = g.field();
    while (r.degree_y() >= g.degree_y()) {
        // subtract lc * y^{shift} * g
        std::vector<DensePoly> sub((size_t)(r.degree_y() - g.degree_y()), DensePoly::zero(fld));
        sub.push_back(r.coeff((size_t)r.degree_y()));
        Bivar factor(fld, std::move(sub));
        Bivar next = r - factor * g;
        assert(next.degree_y() < r.degree_y());
        r = std::move(next);
    }
    return r;
}

std::vector<DensePoly> fiber_solved_form(const LiftingFiber& fiber) {
    auto dq = upoly::derivative(fiber.q);
    auto inv = upoly::invert_mod(dq, fiber.q);
    if (!inv) raise(Err::ZeroDivisorHit, "q' is not invertible mod q (fiber not squarefree?)");
    std::vector<DensePoly> w;
    w.reserve(fiber.v.size());
    for (auto& vj : fiber.v) w.push_back(upoly::rem(vj * *inv, fiber.q));
    return w;
}

std::vector<DensePoly> fiber_x_assignment(const LiftingFiber& fiber) {
    const Field& K = fiber.K;
    const size_t n = fiber.n();
    auto w = fiber_solved_form(fiber);
    // Y-coordinate ring elements
    std::vector<DensePoly> y(n, DensePoly::zero(K));
    for (size_t i = 0; i < fiber.primitive; ++i)
        y[i] = DensePoly::constant(fiber.lifting_point[i]);
    y[fiber.primitive] = DensePoly::x(K);
    for (size_t j = 0; j < w.size(); ++j) y[fiber.primitive + 1 + j] = w[j];
    // X = M^{-1} (Y - shift)
    const Matrix& inv = fiber.forms.inverse_matrix();
    const Vec& shift = fiber.forms.shift();
    std::vector<DensePoly> x(n, DensePoly::zero(K));
    for (size_t i = 0; i < n; ++i) {
        DensePoly acc = DensePoly::zero(K);
        for (size_t j = 0; j < n; ++j) {
            if (inv[i][j].is_zero()) continue;
            acc = acc + (y[j] - DensePoly::constant(shift[j])) * inv[i][j];
        }
        x[i] = upoly::rem(acc, fiber.q);
    }
    return x;
}

LiftingFiber specialize_to_fiber(const GeometricSolutionCurve& curve, const FieldElement& value) {
    LiftingFiber fb;
    fb.K = curve.K;
    fb.forms = curve.forms;
    fb.lifting_point = curve.base_point;
    fb.lifting_point.push_back(value);
    fb.primitive = curve.primitive;
    fb.stage = curve.stage;
    fb.q = curve.q.eval_free(value);
    if (fb.q.degree() != curve.q.degree_y())
        raise(Err::NotLiftingPoint, "specialized q drops degree at " + value.str());
    fb.q = upoly::monic(fb.q);
    if (!upoly::is_squarefree(fb.q))
        raise(Err::NotLiftingPoint, "discriminant vanishes at " + value.str());
    for (auto& vj : curve.v) fb.v.push_back(upoly::rem(vj.eval_free(value), fb.q));
    return fb;
}

FiberReport validate_fiber(const LiftingFiber& fiber, const std::vector<Slp>& system,
                           const FieldEmbedding& emb) {
    FiberReport rep;
    rep.q_squarefree = upoly::is_squarefree(fiber.q);
    if (!rep.q_squarefree) {
        rep.detail = "q is not squarefree";
        return rep;
    }

    const size_t s = (size_t)fiber.stage;
    std::vector<DensePoly> x;
    try {
        x = fiber_x_assignment(fiber);
    } catch (const Error& e) {
        rep.detail = e.what();
        return rep;
    }

    // (a) each F_i vanishes along the parametrization mod q
    QuotOps qops{&emb, fiber.q};
    rep.parametrization_residuals_zero = true;
    for (size_t i = 0; i < s && i < system.size(); ++i) {
        auto val = system[i].eval(x, qops)[0];
        if (!val.is_zero()) {
            rep.parametrization_residuals_zero = false;
            rep.detail = "F_" + std::to_string(i + 1) + " does not vanish on the parametrization";
            break;
        }
    }

    // (c) Jacobian of F_1..F_s w.r.t. the dependent rows is a unit mod q
    QuotOps base{&emb, fiber.q};
    DualOps<QuotOps> dops{&base};
    const size_t n = fiber.n();
    const Matrix& minv = fiber.forms.inverse_matrix();
    std::vector<std::vector<DensePoly>> jac(s, std::vector<DensePoly>(fiber.dependents()));
    for (size_t dep = 0; dep < fiber.dependents(); ++dep) {
        const size_t row = fiber.primitive + dep;
        std::vector<DualOps<QuotOps>::V> in;
        in.reserve(n);
        for (size_t i = 0; i < n; ++i) in.push_back(dops.seed(x[i], DensePoly::constant(minv[i][row])));
        for (size_t i = 0; i < s && i < system.size(); ++i)
            jac[i][dep] = system[i].eval(in, dops)[0].der;
    }
    // determinant over K[z]/(q) by fraction-free-ish elimination: use
    // cofactor expansion (s is small)
    struct Det {
        const DensePoly* q;
        DensePoly operator()(std::vector<std::vector<DensePoly>> m) const {
            size_t k = m.size();
            if (k == 0) return DensePoly::constant(FieldElement::one(m[0][0].field()));
            if (k == 1) return m[0][0];
            const Field& f = m[0][0].field();
            DensePoly acc = DensePoly::zero(f);
            for (size_t j = 0; j < k; ++j) {
                if (m[0][j].is_zero()) continue;
                std::vector<std::vector<DensePoly>> minor;
                for (size_t i = 1; i < k; ++i) {
                    std::vector<DensePoly> row;
                    for (size_t l = 0; l < k; ++l)
                        if (l != j) row.push_back(m[i][l]);
                    minor.push_back(std::move(row));
                }
                DensePoly term = upoly::rem(m[0][j] * (*this)(minor), *q);
                acc = (j % 2 == 0) ? acc + term : acc - term;
            }
            return upoly::rem(acc, *q);
        }
    };
    if (s == 0) {
        rep.jacobian_invertible = true;
    } else {
        Det det{&fiber.q};
        std::vector<std::vector<DensePoly>> m(s);
        for (size_t i = 0; i < s; ++i)
            m[i] = std::vector<DensePoly>(jac[i].begin(), jac[i].end());
        DensePoly d = det(m);
        rep.jacobian_invertible =
            !d.is_zero() && upoly::extended_gcd(d, fiber.q).g.degree() == 0;
        if (!rep.jacobian_invertible && rep.detail.empty())
            rep.detail = "Jacobian determinant is a zero divisor mod q";
    }
    return rep;
}

RationalPoint decode_point(const LiftingFiber& fiber, const FieldElement& root,
                           const std::vector<Slp>& system, const FieldEmbedding& emb) {
    if (!fiber.q.eval(root).is_zero())
        raise(Err::RamifiedRoot, "value is not a root of q");
    auto dq = upoly::derivative(fiber.q).eval(root);
    if (dq.is_zero()) raise(Err::RamifiedRoot, "q' vanishes at the root");
    auto dqi = invert(dq);
    Vec y(fiber.n(), FieldElement::zero(fiber.K));
    for (size_t i = 0; i < fiber.primitive; ++i) y[i] = fiber.lifting_point[i];
    y[fiber.primitive] = root;
    for (size_t j = 0; j < fiber.v.size(); ++j)
        y[fiber.primitive + 1 + j] = fiber.v[j].eval(root) * dqi;
    RationalPoint pt;
    pt.coords = fiber.forms.apply_inverse(y);
    FieldOps ops{&emb, fiber.K};
    for (auto& s : system) pt.residuals.push_back(s.eval(pt.coords, ops)[0]);
    return pt;
}

} // namespace ffk
