#ifndef FFK_KRONECKER_HPP
#define FFK_KRONECKER_HPP

#include <functional>
#include <optional>
#include <string>

#include "ffk/geosol.hpp"
#include "ffk/oracle.hpp"

namespace ffk {

struct SolveConfig {
    u64 seed = 0;
    unsigned max_global_retries = 16;
    unsigned lambda_budget = 8;
    unsigned alpha_budget = 8;
    unsigned omega_budget = 8;
    unsigned point_budget = 0;   // 0: defaults to the curve degree
    std::optional<unsigned> k_override;   // working-field degree override
    bool enforce_field_bound = true;
    unsigned parallel_trials = 1;
};

struct StageTrace {
    std::string name;
    unsigned retries = 0;
    unsigned degree = 0;
};

struct SolveTrace {
    std::vector<StageTrace> stages;
    std::vector<unsigned> deltas;
    unsigned global_retries = 0;
    unsigned field_degree = 1;

    void record(const std::string& name, unsigned retries, unsigned degree) {
        stages.push_back({name, retries, degree});
    }
};

struct SolverState {
    std::vector<Slp> system;    // division-free, over the base field
    std::vector<long> degrees;
    Field base;
    size_t n = 0, r = 0;
    long d = 0;                 // max degree
    long bezout = 1;

    Field K;
    FieldEmbedding emb;
    LinearForms forms;                 // n x n over K
    std::vector<FieldElement> point;   // p_1..p_{n-1}; P^{(s)} is its prefix

    SolveConfig cfg;
    SolveTrace trace;
};

// ---- global Newton-Hensel lifting engine ----
//
// Lifts a zero-dimensional fiber along one parameter t. The caller describes
// the original X coordinates as affine combinations of the dependent values
// with series-in-t coefficients; the engine doubles the t-precision until
// target_prec and reconstructs (t, y)-polynomials.
struct Assignment {
    std::vector<TruncatedSeries> cst;                 // size n
    std::vector<std::vector<TruncatedSeries>> coef;   // n x ndep
};
using AssignmentBuilder = std::function<Assignment(unsigned prec)>;

struct NewtonLiftResult {
    Bivar q;                  // monic in y
    std::vector<Bivar> w;     // solved-form parametrizations, deg_y < deg q
    bool residuals_zero = false;
};

// eqs.size() must equal the dependent count (q0's variable plus w0.size());
// BadRandomChoice when the Jacobian is not invertible on the start fiber
NewtonLiftResult newton_lift(const std::vector<Slp>& eqs, const FieldEmbedding& emb,
                             const AssignmentBuilder& assignment, const DensePoly& q0,
                             const std::vector<DensePoly>& w0, unsigned target_prec);

// ---- per-stage operations ----

SolverState make_solver_state(const ParsedSystem& input, const SolveConfig& cfg, Rng& rng);
void resample_genericity(SolverState& st, Rng& rng);

LiftingFiber init_base_fiber(const SolverState& st);
GeometricSolutionCurve lift_fiber_to_curve(const SolverState& st, const LiftingFiber& fiber);
// minimal polynomial of Y_{m-1} + lambda Y_m on the next fiber
DensePoly intersect_minimal_polynomial(const SolverState& st,
                                       const GeometricSolutionCurve& curve,
                                       const Slp& next_eq, const FieldElement& lambda,
                                       Rng& rng, unsigned* alpha_retries = nullptr);
LiftingFiber recombine_parametrizations(const SolverState& st,
                                        const GeometricSolutionCurve& curve,
                                        const DensePoly& q_zero, const FieldElement& lambda1,
                                        const DensePoly& q_l1, const FieldElement& lambda2,
                                        const DensePoly& q_l2, Rng& rng);

struct SolveResult {
    LiftingFiber fiber;
    SolverState state;
};
SolveResult solve_to_lifting_fiber(const ParsedSystem& input, const SolveConfig& cfg, Rng& rng);

// one full stage pass (curve, three minimal polynomials, recombination) with
// the per-stage lambda retry loop; shared by the solver and the test drivers
LiftingFiber advance_stage(const SolverState& st, const LiftingFiber& fiber, Rng& rng,
                           SolveTrace* trace);

} // namespace ffk

#endif
