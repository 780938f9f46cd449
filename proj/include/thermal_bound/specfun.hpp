// specfun.hpp — g(x) = x tanh(x/2), its inverse, the bound amplification
// factor Gamma(x) = g^{-1}(x)/x, the thermal de Broglie wavelength, and the
// refined lower bound on the thermal uncertainty product built from them.
#pragma once

#include "thermal_bound/units.hpp"

namespace thermal_bound::specfun {

// Result of a safeguarded Newton/bisection inversion of g.
struct InverseResult {
    double value = 0.0;     // x with g(x) = y
    int iterations = 0;
    double residual = 0.0;  // |g(value) - y|
};

// Gamma(x) = g^{-1}(x)/x together with solver diagnostics.
// gamma >= 1 for all x > 0, approaching 1 only as x -> infinity; the
// implementation keeps it strictly above 1 (floor at 1 + 1e-15) where the
// true excess 2 e^{-x} falls below double resolution.
struct GammaEval {
    double x = 0.0;
    double gamma = 1.0;
    double g_inv = 0.0;     // g^{-1}(x) = gamma * x
    int iterations = 0;
    double residual = 0.0;  // |g(g_inv) - x|
};

// g(x) = x tanh(x/2). Strictly increasing on [0, inf), g(x) < x for x > 0.
// Uses the Taylor series x^2/2 - x^4/24 + x^6/240 below x = 1e-4.
double g(double x);

// First derivative of g, used by the Newton solver.
double g_prime(double x);

// Inverse of g on [0, inf): returns x with |g(x) - y| <= tol * max(1, y).
// Brackets from the two asymptotic branches (g ~ x^2/2 small, g ~ x - 2
// large) and polishes with bracket-safeguarded Newton steps.
InverseResult g_inverse(double y, double tol = 1e-12);

// Gamma(x) = g^{-1}(x)/x. Strictly decreasing, > 1 everywhere.
// Below x = 1e-8 the asymptotic branch sqrt(2/x) * (1 + x/12) is used to
// avoid the pointless root find; above x = 1e8 the value is pinned to the
// floor (the analytic excess is far below double resolution there).
GammaEval gamma_big(double x);

// Thermal de Broglie wavelength sqrt(2 pi hbar^2 beta / m).
double thermal_wavelength(double mass, double beta, const UnitSystem& units = {});

// Refined lower bound on delta_x * delta_p for a thermal state.
struct BoundValue {
    double value = 0.0;   // (hbar/2) * Gamma(x_arg)
    double r = 0.0;       // delta_x / lambda_th
    double x_arg = 0.0;   // beta hbar^2 / (2 m delta_x^2) = 1/(4 pi r^2)
    GammaEval gamma;
};

// Evaluates (hbar/2) * Gamma(1/(4 pi r^2)) with r = delta_x/lambda_th.
// The Gamma argument is computed directly as beta hbar^2/(2 m delta_x^2),
// which is algebraically identical to 1/(4 pi r^2) but avoids the square
// root round trip through lambda_th.
BoundValue boltzmann_bound(double delta_x, double mass, double beta,
                           const UnitSystem& units = {});

}  // namespace thermal_bound::specfun
