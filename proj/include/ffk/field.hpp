#ifndef FFK_FIELD_HPP
#define FFK_FIELD_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ffk/error.hpp"
#include "ffk/rng.hpp"

namespace ffk {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Exact arithmetic context for F_p (k = 1) and F_{p^k} (k > 1), elements
// stored as coefficient vectors in the power basis of a verified-irreducible
// modulus. Descriptors are immutable and freely shared across threads.
struct FieldDescriptor {
    u64 p = 0;
    unsigned k = 1;
    std::vector<u64> modulus;   // monic, length k+1; empty when k == 1
    u128 cardinality = 0;       // p^k exactly

    // x^{k+i} mod modulus for i = 0..k-2, rows of length k
    std::vector<std::vector<u64>> red_rows;

    bool same_as(const FieldDescriptor& o) const {
        return p == o.p && k == o.k && modulus == o.modulus;
    }
};

using Field = std::shared_ptr<const FieldDescriptor>;

bool is_prime_u64(u64 n);

// Construct F_{p^k}. For k > 1 an irreducible monic modulus is found by
// random search (budget 64*k candidates) and verified. Deterministic per
// rng seed. Requires p^k < 2^126.
Field make_field(u64 p, unsigned k, Rng& rng);
Field make_prime_field(u64 p);
// rebuild a descriptor from an explicit modulus (verified irreducible)
Field make_field_with_modulus(u64 p, unsigned k, const std::vector<u64>& modulus);

// per-thread arithmetic counters, reported by the bench subcommand
struct OpCounters {
    u64 add = 0, mul = 0, inv = 0;
};
OpCounters& op_counters();
void reset_op_counters();

class FieldElement {
public:
    FieldElement() = default;
    FieldElement(Field f, std::vector<u64> coeffs);

    static FieldElement zero(const Field& f);
    static FieldElement one(const Field& f);
    // embeds the residue of v mod p as a base-field scalar
    static FieldElement from_int(const Field& f, u64 v);
    static FieldElement from_signed(const Field& f, long long v);

    const Field& field() const { return f_; }
    const std::vector<u64>& coeffs() const { return c_; }
    bool is_zero() const;
    bool is_one() const;

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

    std::string str() const;   // "3" for prime fields, "[1,2]" for extensions

private:
    Field f_;
    std::vector<u64> c_;   // length k, residues in [0, p)

    friend FieldElement invert(const FieldElement&);
    friend FieldElement frobenius(const FieldElement&, long);
};

// a^{-1}; DivisionByZero on a = 0
FieldElement invert(const FieldElement& a);
// a^{p^times}; times may be any integer (reduced mod k)
FieldElement frobenius(const FieldElement& a, long times);
FieldElement pow(const FieldElement& a, u128 e);
FieldElement sample_uniform(const Field& f, Rng& rng);
// deterministic enumeration of field elements: base-p digits of the index
FieldElement element_from_index(const Field& f, u64 index);
inline FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    return a * invert(b);
}

// exact cardinality comparison helpers (p^k may exceed 64 bits)
inline bool card_greater(const FieldDescriptor& f, u128 bound) {
    return f.cardinality > bound;
}

std::string u128_to_string(u128 v);

} // namespace ffk

#endif
