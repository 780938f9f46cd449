// errors.hpp — exception types shared across the library
#pragma once

#include <stdexcept>
#include <string>

namespace thermal_bound {

// An argument lies outside an operation's mathematical domain.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An iterative scheme failed to converge; carries what was known at abort
// (partial value and, for root finders, the last bracket).
struct NumericError : std::runtime_error {
    NumericError(const std::string& what_arg, double partial_value = 0.0,
                 double bracket_lo = 0.0, double bracket_hi = 0.0)
        : std::runtime_error(what_arg),
          partial(partial_value),
          lo(bracket_lo),
          hi(bracket_hi) {}

    double partial;
    double lo;
    double hi;
};

// A user-supplied evaluator produced a non-finite value at `omega`.
struct EvaluatorError : std::runtime_error {
    EvaluatorError(const std::string& what_arg, double where)
        : std::runtime_error(what_arg), omega(where) {}

    double omega;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace thermal_bound
