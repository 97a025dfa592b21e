#ifndef FFK_RATPOINT_HPP
#define FFK_RATPOINT_HPP

#include "ffk/homotopy.hpp"

namespace ffk {

// Plane slice of V through Q in direction omega: the absolutely irreducible
// curve h(T, Z) = q(omega T + Q, Z) together with the lifted parametrizations
// needed to pull a curve point back to V.
struct PlaneSlice {
    Vec omega;             // over the base field
    Bivar h;               // over the base field, (T, Z), monic in Z
    Bivar h_K;             // same data over K (decode arithmetic)
    std::vector<Bivar> v;  // v-form parametrizations of rows m+1..n-1, over K
    Vec Q;                 // over the base field
};

PlaneSlice slice_to_plane_curve(const SolverState& st, const LiftingFiber& fiber_z,
                                const HomotopyPath& path, const Vec& omega);

struct CurvePoint {
    FieldElement a, b;    // base-field coordinates with dh/dZ(a,b) != 0
    unsigned trials = 0;
};

// Weil-estimate driven search: sample a without replacement, keep squarefree
// h_a, intersect with the Frobenius polynomial, extract a rational root off
// the ramification locus. BudgetExhausted tells the caller to resample omega.
CurvePoint find_curve_point(const PlaneSlice& slice, const Field& base, Rng& rng,
                            unsigned budget);

struct RatPointResult {
    RationalPoint point;     // over the base field
    SolveTrace trace;
    std::vector<unsigned> deltas;
};

// full pipeline of the closing corollary: solve, deform, change primitive,
// slice, search, decode, verify
RatPointResult compute_rational_point(const ParsedSystem& input, const SolveConfig& cfg,
                                      Rng& rng);

// the 8 n^2 d delta^4 cardinality requirement, evaluated exactly
bool field_bound_ok(const ParsedSystem& input, long delta);
std::string field_bound_text(const ParsedSystem& input, long delta);

} // namespace ffk

#endif
