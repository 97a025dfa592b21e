#include "ffk/oracle.hpp"

#include <cassert>

#include "ffk/embed.hpp"
#include "ffk/rings.hpp"

namespace ffk {
namespace oracle {

namespace {

// iterate over all coordinate vectors of f^dims; calls fn(Vec)
template <class Fn>
void odometer(const Field& f, size_t dims, Fn&& fn) {
    std::vector<std::vector<u64>> idx(dims, std::vector<u64>(f->k, 0));
    while (true) {
        Vec v;
        v.reserve(dims);
        for (auto& c : idx) v.emplace_back(f, c);
        fn(v);
        size_t pos = 0;
        while (pos < dims) {
            unsigned cpos = 0;
            while (cpos < f->k && ++idx[pos][cpos] == f->p) idx[pos][cpos++] = 0;
            if (cpos < f->k) break;
            ++pos;
        }
        if (pos == dims) break;
    }
}

long slp_degree_bound(const Slp& s) {
    std::vector<long> deg(s.nodes.size(), 0);
    for (size_t i = 0; i < s.nodes.size(); ++i) {
        const auto& nd = s.nodes[i];
        switch (nd.op) {
            case Slp::Op::Input: deg[i] = 1; break;
            case Slp::Op::Const: deg[i] = 0; break;
            case Slp::Op::Add:
            case Slp::Op::Sub: deg[i] = std::max(deg[nd.a], deg[nd.b]); break;
            case Slp::Op::Mul: deg[i] = deg[nd.a] + deg[nd.b]; break;
            case Slp::Op::Div: deg[i] = deg[nd.a]; break;
        }
    }
    return deg[s.outputs[0]];
}

struct FiberScan {
    std::vector<Vec> points;   // dependent-row values over the scan field
    Field E;
    FieldEmbedding k_to_e;     // forms field -> E
};

// scan the affine subspace {first m rows = point} for zeros of the first
// n_eqs equations, over the degree-mult extension of the forms field
FiberScan scan_fiber(const std::vector<Slp>& system, size_t n_eqs, const LinearForms& forms,
                     const std::vector<FieldElement>& point, const Field& base,
                     unsigned degree_mult, Rng& rng) {
    const Field& K = forms.shift()[0].field();
    const size_t n = forms.rows();
    const size_t m = point.size();
    const size_t deps = n - m;

    FiberScan out;
    if (degree_mult == 1) {
        out.E = K;
        out.k_to_e = FieldEmbedding::identity(K);
    } else {
        Rng ext_rng(K->p * 131071ULL + K->k * degree_mult);
        out.E = make_field(K->p, K->k * degree_mult, ext_rng);
        out.k_to_e = FieldEmbedding::make(K, out.E, rng);
    }
    const Field& E = out.E;

    double scan_cost = 1;
    for (size_t i = 0; i < deps; ++i) {
        scan_cost *= (double)(u64)(E->cardinality > (u128)UINT64_MAX ? UINT64_MAX
                                                                     : (u64)E->cardinality);
        if (scan_cost > 4e6) raise(Err::TooLarge, "fiber scan exceeds the enumeration guard");
    }

    Rng emb_rng(7);
    FieldEmbedding base_to_e = FieldEmbedding::make(base, E, emb_rng);
    FieldOps ops{&base_to_e, E};

    // embedded frame
    Matrix em(n, Vec(n, FieldElement::zero(E)));
    Vec eshift;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) em[i][j] = out.k_to_e.embed(forms.matrix()[i][j]);
        eshift.push_back(out.k_to_e.embed(forms.shift()[i]));
    }
    LinearForms eforms(em, eshift);
    Vec fixed;
    for (auto& p : point) fixed.push_back(out.k_to_e.embed(p));

    odometer(E, deps, [&](const Vec& dv) {
        Vec y = fixed;
        y.insert(y.end(), dv.begin(), dv.end());
        Vec x = eforms.apply_inverse(y);
        for (size_t i = 0; i < n_eqs; ++i)
            if (!system[i].eval(x, ops)[0].is_zero()) return;
        out.points.push_back(dv);
    });
    return out;
}

} // namespace

SolutionSet enumerate_solutions(const std::vector<Slp>& system, const Field& f,
                                const FieldEmbedding& emb) {
    const size_t n = system.at(0).n_vars;
    double cost = 1;
    for (size_t i = 0; i < n; ++i) {
        cost *= (double)(u64)(f->cardinality > (u128)UINT64_MAX ? UINT64_MAX
                                                                : (u64)f->cardinality);
        if (cost > 1e8) raise(Err::TooLarge, "cardinality^n exceeds 1e8");
    }
    FieldOps ops{emb.is_identity() ? nullptr : &emb, f};
    SolutionSet out;
    odometer(f, n, [&](const Vec& x) {
        for (auto& s : system)
            if (!s.eval(x, ops)[0].is_zero()) return;
        out.points.push_back(x);
    });
    std::sort(out.points.begin(), out.points.end(), [](const Vec& a, const Vec& b) {
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i].coeffs() != b[i].coeffs()) return a[i].coeffs() < b[i].coeffs();
        }
        return false;
    });
    return out;
}

namespace {

struct StableScan {
    FiberScan scan;
    unsigned used_degree;
};

StableScan stable_fiber_scan(const std::vector<Slp>& system, size_t n_eqs,
                             const LinearForms& forms, const std::vector<FieldElement>& point,
                             unsigned start_ext_degree, Rng& rng) {
    const Field base = [&] {
        for (auto& nd : system[0].nodes)
            if (nd.op == Slp::Op::Const) return nd.cval.field();
        return forms.shift()[0].field();
    }();
    long bezout = 1;
    for (size_t i = 0; i < n_eqs; ++i) bezout *= std::max(1L, slp_degree_bound(system[i]));

    unsigned e = std::max(1u, start_ext_degree);
    long prev = -1;
    FiberScan last;
    unsigned last_e = 0;
    while (e <= 8) {
        FiberScan cur = scan_fiber(system, n_eqs, forms, point, base, e, rng);
        long count = (long)cur.points.size();
        last = std::move(cur);
        last_e = e;
        if (count == bezout) return {std::move(last), last_e};   // cannot grow past Bezout
        if (prev == count) return {std::move(last), last_e};
        prev = count;
        e *= 2;
    }
    raise(Err::CountUnstable, "fiber count did not stabilize within extension cap 8");
}

} // namespace

unsigned fiber_cardinality(const std::vector<Slp>& system, size_t n_eqs,
                           const LinearForms& forms, const std::vector<FieldElement>& point,
                           unsigned start_ext_degree, Rng& rng) {
    auto st = stable_fiber_scan(system, n_eqs, forms, point, start_ext_degree, rng);
    return (unsigned)st.scan.points.size();
}

DensePoly fiber_minimal_polynomial(const std::vector<Slp>& system, size_t n_eqs,
                                   const LinearForms& forms,
                                   const std::vector<FieldElement>& point,
                                   size_t primitive_row, unsigned start_ext_degree, Rng& rng) {
    auto st = stable_fiber_scan(system, n_eqs, forms, point, start_ext_degree, rng);
    const Field& E = st.scan.E;

    // The primitive row acts on the X coordinates; reconstruct each point's X
    // vector and apply the row there.
    DensePoly prod = DensePoly::constant(FieldElement::one(E));
    Matrix em(forms.rows(), Vec(forms.rows(), FieldElement::zero(E)));
    Vec eshift;
    for (size_t i = 0; i < forms.rows(); ++i) {
        for (size_t j = 0; j < forms.rows(); ++j)
            em[i][j] = st.scan.k_to_e.embed(forms.matrix()[i][j]);
        eshift.push_back(st.scan.k_to_e.embed(forms.shift()[i]));
    }
    LinearForms eforms(em, eshift);
    Vec fixed;
    for (auto& p : point) fixed.push_back(st.scan.k_to_e.embed(p));
    for (auto& dv : st.scan.points) {
        Vec y = fixed;
        y.insert(y.end(), dv.begin(), dv.end());
        Vec x = eforms.apply_inverse(y);
        FieldElement lv = eforms.apply_row(primitive_row, x);
        prod = prod * (DensePoly::x(E) - DensePoly::constant(lv));
    }
    // coefficients are Galois stable, hence live in the forms field
    return st.scan.k_to_e.project_poly(prod);
}

long count_curve_points(const Bivar& h, const Field& f) {
    if ((double)(u64)(f->cardinality > (u128)UINT64_MAX ? UINT64_MAX : (u64)f->cardinality) *
            (double)(u64)(f->cardinality > (u128)UINT64_MAX ? UINT64_MAX : (u64)f->cardinality) >
        1e8)
        raise(Err::TooLarge, "cardinality^2 exceeds 1e8");
    long count = 0;
    odometer(f, 2, [&](const Vec& tz) {
        if (h.eval(tz[0], tz[1]).is_zero()) ++count;
    });
    return count;
}

} // namespace oracle
} // namespace ffk
