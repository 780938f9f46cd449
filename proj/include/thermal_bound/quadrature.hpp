// quadrature.hpp — adaptive Gauss–Kronrod integration on [0, inf) for
// spectral integrands with a removable singularity at omega = 0 and an
// algebraic large-omega tail.
#pragma once

#include <functional>
#include <vector>

#include "thermal_bound/errors.hpp"

namespace thermal_bound::quadrature {

// Integrand on the half line. The evaluator must be finite on
// (0, 10 * tail_start]; the two endpoints are described analytically:
//  - zero_limit is the omega -> 0 value (the singularity is removable),
//  - beyond tail_start the integrand behaves like
//    tail_coefficient / omega^tail_exponent with tail_exponent > 1.
// breakpoints may list interior feature locations (narrow resonances);
// they seed the initial panel boundaries so the adaptive refinement cannot
// step over a spike.
struct IntegrandSpec {
    std::function<double(double)> evaluator;
    double zero_limit = 0.0;
    double tail_coefficient = 0.0;
    double tail_exponent = 2.0;
    double tail_start = 1.0;
    std::vector<double> breakpoints{};
};

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    long evaluations = 0;
    double tail_contribution = 0.0;  // A / ((k-1) * omega_max^(k-1))
    double omega_max = 0.0;          // where the analytic tail takes over
};

// Integral of spec.evaluator over [0, inf) with estimated relative error
// <= rel_tol (rel_tol must lie in (1e-14, 1e-2)).
//
// Method: the integrand is replaced by zero_limit on [0, eps0], with eps0
// shrunk until the evaluator agrees with zero_limit to rel_tol of the
// integrand's sampled magnitude; [eps0, omega_max] is handled by adaptive
// 15-point Gauss–Kronrod subdivision (worst panel first); omega_max starts
// at tail_start and doubles until the analytic tail contributes less than
// rel_tol of the running value. Deterministic for fixed inputs.
//
// Errors: NaN from the evaluator -> EvaluatorError at the offending omega;
// exceeding the evaluation budget (1e6) -> NumericError carrying the
// partial result.
QuadratureResult integrate_halfline(const IntegrandSpec& spec, double rel_tol);

}  // namespace thermal_bound::quadrature
