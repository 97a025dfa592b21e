#ifndef FFK_EMBED_HPP
#define FFK_EMBED_HPP

#include "ffk/upoly.hpp"

namespace ffk {

// Embedding of F_{p^a} into F_{p^{ab}}, realized by sending the generator of
// the small field to a root of its modulus in the big field. The pullback is
// the inverse linear map on the image, solved once over F_p.
class FieldEmbedding {
public:
    // identity embedding
    static FieldEmbedding identity(const Field& f);
    // from->k must divide to->k; deterministic per rng seed (root choice)
    static FieldEmbedding make(const Field& from, const Field& to, Rng& rng);

    const Field& from() const { return from_; }
    const Field& to() const { return to_; }
    bool is_identity() const { return identity_; }

    FieldElement embed(const FieldElement& a) const;
    bool in_image(const FieldElement& c) const;
    // pullback of an element of the image; NotBaseField if c is outside
    FieldElement project(const FieldElement& c) const;

    DensePoly embed_poly(const DensePoly& f) const;
    DensePoly project_poly(const DensePoly& f) const;

private:
    Field from_, to_;
    bool identity_ = false;
    FieldElement gen_image_;
    // coords of embed(g^j) over F_p: k_to rows, k_from columns; the pullback
    // solves this (full-rank, overdetermined) system per call
    std::vector<std::vector<u64>> basis_;
};

} // namespace ffk

#endif
