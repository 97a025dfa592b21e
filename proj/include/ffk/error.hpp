#ifndef FFK_ERROR_HPP
#define FFK_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ffk {

enum class Err {
    // field
    NotPrime,
    IrreducibleSearchExhausted,
    DivisionByZero,
    // upoly
    DuplicateAbscissa,
    // series
    NotAUnit,
    UnluckyCenter,
    // slp / parsing
    SyntaxError,
    UnknownVariable,
    NonPolynomial,
    SingularMatrix,
    // geosol
    NotLiftingPoint,
    RamifiedRoot,
    ValidationFailed,
    // kronecker
    BadRandomChoice,
    LiftDiverged,
    PrecisionExceeded,
    UnluckyLambda,
    NonLinearGcd,
    ZeroDivisorHit,
    RetriesExhausted,
    InconsistentSystem,
    // homotopy
    PathHitsDiscriminant,
    NotBaseField,
    NotSeparating,
    InsufficientField,
    // ratpoint
    BudgetExhausted,
    FieldTooSmall,
    // oracle
    TooLarge,
    CountUnstable,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
public:
    Error(Err code, const std::string& what)
        : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}
    Err code() const { return code_; }

private:
    Err code_;
};

[[noreturn]] inline void raise(Err code, const std::string& what) {
    throw Error(code, what);
}

} // namespace ffk

#endif
