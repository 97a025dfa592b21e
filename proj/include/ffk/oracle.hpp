#ifndef FFK_ORACLE_HPP
#define FFK_ORACLE_HPP

#include "ffk/geosol.hpp"
#include "ffk/linear.hpp"
#include "ffk/slp.hpp"
#include "ffk/upoly.hpp"

namespace ffk {
namespace oracle {

// Brute-force ground truth for tests. Deliberately reuses only field and
// upoly arithmetic plus SLP evaluation, never the solver modules.

struct SolutionSet {
    std::vector<Vec> points;   // lexicographically sorted by coefficient vectors
};

// full scan of field^n; TooLarge when cardinality^n exceeds the guard
SolutionSet enumerate_solutions(const std::vector<Slp>& system, const Field& f,
                                const FieldEmbedding& emb);

// minimal polynomial of the linear form `primitive` on the fiber cut out by
// the first rows of `forms` fixed at P; scans the affine subspace over an
// extension whose degree doubles until the point count stabilizes (a count
// reaching the Bezout bound of the scanned equations also stops the search)
DensePoly fiber_minimal_polynomial(const std::vector<Slp>& system, size_t n_eqs,
                                   const LinearForms& forms,
                                   const std::vector<FieldElement>& point,
                                   size_t primitive_row, unsigned start_ext_degree,
                                   Rng& rng);

// number of points of the scanned fiber at the same extension schedule
unsigned fiber_cardinality(const std::vector<Slp>& system, size_t n_eqs,
                           const LinearForms& forms, const std::vector<FieldElement>& point,
                           unsigned start_ext_degree, Rng& rng);

// #{(t, z) in F^2 : h(t, z) = 0} for a bivariate h
long count_curve_points(const Bivar& h, const Field& f);

} // namespace oracle
} // namespace ffk

#endif
