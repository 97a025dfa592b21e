#ifndef FFK_HOMOTOPY_HPP
#define FFK_HOMOTOPY_HPP

#include "ffk/kronecker.hpp"

namespace ffk {

// Linear deformation data from the K-definable frame (lambda, gamma, P) to a
// base-field frame (nu, eta, Q) on the first n-r+1 rows. At T=0 the path
// reproduces the start data, at T=1 the end data.
struct HomotopyPath {
    Matrix nu;   // (n-r+1) x n over the base field
    Vec eta;     // length n-r+1 over the base field
    Vec Q;       // length n-r over the base field
};

// end data with invertible mixed frames Delta_1 and Delta_2
HomotopyPath sample_homotopy_end(const SolverState& st, Rng& rng);

// mixed frame: nu rows 0..rows-1, then the solver's lambda rows
LinearForms mixed_frame(const SolverState& st, const HomotopyPath& path, size_t nu_rows);

// Newton-Hensel continuation of the stage-r fiber along T, specialized at
// T=1; the result keeps the old primitive form (a K-form) with the end
// projection frame. PathHitsDiscriminant on degree overflow, non-squarefree
// specialization or failed validation.
LiftingFiber deform_fiber_to_base_field(const SolverState& st, const LiftingFiber& fiber,
                                        const HomotopyPath& path);

// switch the primitive element to the base-field form Z_{n-r+1} (row n-r of
// nu) through the first-order minimal polynomial of Z_{n-r+1} + T Y_{n-r+1};
// the resulting q must project to the base field (NotBaseField otherwise)
LiftingFiber change_primitive_element(const SolverState& st, const LiftingFiber& fiber,
                                      const HomotopyPath& path);

} // namespace ffk

#endif
