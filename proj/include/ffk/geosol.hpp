#ifndef FFK_GEOSOL_HPP
#define FFK_GEOSOL_HPP

#include <string>
#include <vector>

#include "ffk/linear.hpp"
#include "ffk/series.hpp"
#include "ffk/slp.hpp"
#include "ffk/upoly.hpp"

namespace ffk {

// Bivariate polynomial in (free, primary), stored primary-major: cy[i] is the
// coefficient of primary^i as a dense polynomial in the free variable.
class Bivar {
public:
    Bivar() = default;
    explicit Bivar(Field f) : f_(std::move(f)) {}
    Bivar(Field f, std::vector<DensePoly> cy);

    static Bivar of_univariate(const DensePoly& q);   // constant in the free variable
    const Field& field() const { return f_; }
    int degree_y() const { return (int)cy_.size() - 1; }
    int degree_free() const;
    long total_degree() const;
    bool is_zero() const { return cy_.empty(); }
    const std::vector<DensePoly>& coeffs() const { return cy_; }
    DensePoly coeff(size_t i) const;
    // monic in the primary variable with a constant leading coefficient 1
    bool monic_in_y() const;

    bool operator==(const Bivar& o) const { return cy_ == o.cy_; }
    Bivar operator+(const Bivar& o) const;
    Bivar operator-(const Bivar& o) const;
    Bivar operator*(const Bivar& o) const;
    Bivar operator-() const;
    Bivar scale(const FieldElement& c) const;

    Bivar derivative_y() const;
    Bivar derivative_free() const;

    DensePoly eval_free(const FieldElement& value) const;   // univariate in primary
    FieldElement eval(const FieldElement& free_v, const FieldElement& y_v) const;

    // substitute free := L - lambda * primary; result lives in (L, primary)
    Bivar shear_free(const FieldElement& lambda) const;
    // substitute primary := g(free) where g is univariate in the free variable
    DensePoly substitute_y(const DensePoly& g) const;
    // coefficients expanded as series around center at the given precision
    SeriesPoly to_series_poly(const FieldElement& center, unsigned prec) const;
    // Taylor shift of the free variable: free := free + c
    Bivar shift_free(const FieldElement& c) const;
    // drop free-variable degrees above the bound (series-truncation cleanup)
    Bivar truncate_free(int max_deg) const;

    void normalize();

private:
    Field f_;
    std::vector<DensePoly> cy_;
};

// f mod g in the primary variable; g monic_in_y
Bivar bivar_rem_y(const Bivar& f, const Bivar& g);

// Zero-dimensional fiber data: the frame rows split into free rows
// (fixed at the lifting point), the primitive row, and parametrized rows.
struct LiftingFiber {
    Field K;
    LinearForms forms;                       // n x n over K
    std::vector<FieldElement> lifting_point; // values of rows 0..m-1 (m = n - stage)
    size_t primitive = 0;                    // row index m
    int stage = 0;                           // fiber of V_stage
    DensePoly q;                             // monic squarefree in the primitive value
    std::vector<DensePoly> v;                // rows m+1..n-1, v-form, deg < deg q

    size_t n() const { return forms.rows(); }
    size_t dependents() const { return n() - primitive; }   // primitive included
};

// One-dimensional lifting curve with free row m-1 and primitive row m.
struct GeometricSolutionCurve {
    Field K;
    LinearForms forms;
    std::vector<FieldElement> base_point;    // values of rows 0..m-2
    size_t free_index = 0;                   // row m-1
    size_t primitive = 0;                    // row m
    int stage = 0;                           // curve inside V_stage
    Bivar q;                                 // (free, primitive), monic in primitive
    std::vector<Bivar> v;                    // rows m+1..n-1

    size_t n() const { return forms.rows(); }
};

struct RationalPoint {
    Vec coords;      // original X coordinates
    Vec residuals;   // F_i at coords
};

struct FiberReport {
    bool parametrization_residuals_zero = false;
    bool q_squarefree = false;
    bool jacobian_invertible = false;
    std::string detail;
    bool pass() const {
        return parametrization_residuals_zero && q_squarefree && jacobian_invertible;
    }
};

// solved-form parametrizations w_j = v_j * (q')^{-1} mod q for every
// dependent row past the primitive; ZeroDivisorHit when q' is not invertible
std::vector<DensePoly> fiber_solved_form(const LiftingFiber& fiber);

// quotient-ring values of the original X variables along the parametrization
std::vector<DensePoly> fiber_x_assignment(const LiftingFiber& fiber);

LiftingFiber specialize_to_fiber(const GeometricSolutionCurve& curve,
                                 const FieldElement& value);

FiberReport validate_fiber(const LiftingFiber& fiber, const std::vector<Slp>& system,
                           const FieldEmbedding& emb);

RationalPoint decode_point(const LiftingFiber& fiber, const FieldElement& root,
                           const std::vector<Slp>& system, const FieldEmbedding& emb);

} // namespace ffk

#endif
