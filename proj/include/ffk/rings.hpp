#ifndef FFK_RINGS_HPP
#define FFK_RINGS_HPP

#include "ffk/embed.hpp"
#include "ffk/series.hpp"
#include "ffk/upoly.hpp"

namespace ffk {

// Ring adapters for Slp::eval. from_const carries program constants through
// the embedding into the working field when one is supplied.

struct FieldOps {
    using V = FieldElement;
    const FieldEmbedding* emb = nullptr;
    Field f;

    V add(const V& a, const V& b) const { return a + b; }
    V sub(const V& a, const V& b) const { return a - b; }
    V mul(const V& a, const V& b) const { return a * b; }
    V div(const V& a, const V& b) const { return a * invert(b); }
    V from_const(const FieldElement& c) const { return emb ? emb->embed(c) : c; }
};

struct PolyOps {
    using V = DensePoly;
    const FieldEmbedding* emb = nullptr;
    Field f;

    V add(const V& a, const V& b) const { return a + b; }
    V sub(const V& a, const V& b) const { return a - b; }
    V mul(const V& a, const V& b) const { return a * b; }
    V div(const V&, const V&) const {
        raise(Err::NonPolynomial, "division in a polynomial ring evaluation");
    }
    V from_const(const FieldElement& c) const {
        return DensePoly::constant(emb ? emb->embed(c) : c);
    }
};

// K[Y]/(modulus), modulus monic
struct QuotOps {
    using V = DensePoly;
    const FieldEmbedding* emb = nullptr;
    DensePoly modulus;

    V add(const V& a, const V& b) const { return a + b; }
    V sub(const V& a, const V& b) const { return a - b; }
    V mul(const V& a, const V& b) const { return upoly::rem(a * b, modulus); }
    V div(const V&, const V&) const {
        raise(Err::NonPolynomial, "division in a quotient ring evaluation");
    }
    V from_const(const FieldElement& c) const {
        return DensePoly::constant(emb ? emb->embed(c) : c);
    }
};

// (K[[t]]/t^prec)[Y]/(modulus), modulus monic in Y
struct SeriesQuotOps {
    using V = SeriesPoly;
    const FieldEmbedding* emb = nullptr;
    SeriesPoly modulus;

    V add(const V& a, const V& b) const { return a + b; }
    V sub(const V& a, const V& b) const { return a - b; }
    V mul(const V& a, const V& b) const { return series_rem(a * b, modulus); }
    V div(const V&, const V&) const {
        raise(Err::NonPolynomial, "division in a series quotient evaluation");
    }
    V from_const(const FieldElement& c) const {
        FieldElement e = emb ? emb->embed(c) : c;
        return SeriesPoly(modulus.center(), modulus.precision(),
                          {TruncatedSeries::constant(e, modulus.center(), modulus.precision())});
    }
};

// first-order jet R[eps]/(eps^2) over any base adapter
template <class Base>
struct DualOps {
    struct V {
        typename Base::V val, der;
    };
    const Base* base;

    V add(const V& a, const V& b) const {
        return {base->add(a.val, b.val), base->add(a.der, b.der)};
    }
    V sub(const V& a, const V& b) const {
        return {base->sub(a.val, b.val), base->sub(a.der, b.der)};
    }
    V mul(const V& a, const V& b) const {
        return {base->mul(a.val, b.val),
                base->add(base->mul(a.der, b.val), base->mul(a.val, b.der))};
    }
    V div(const V&, const V&) const {
        raise(Err::NonPolynomial, "division under dual-number evaluation");
    }
    V from_const(const FieldElement& c) const {
        auto v = base->from_const(c);
        return {v, base->sub(v, v)};
    }
    V lift(const typename Base::V& v) const { return {v, base->sub(v, v)}; }
    V seed(const typename Base::V& v, const typename Base::V& d) const { return {v, d}; }
};

} // namespace ffk

#endif
