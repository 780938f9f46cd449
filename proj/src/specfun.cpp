#include "thermal_bound/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace thermal_bound::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Strict floor for Gamma: the analytic excess 2 e^{-x} drops below double
// resolution near x = 36, but Gamma must stay strictly above 1. 1 + 1e-15
// rounds to the nearest representable value, 1 + 5 ulp.
constexpr double kGammaFloor = 1.0 + 1e-15;

void require_finite_nonneg(double x, const char* who) {
    if (!std::isfinite(x) || x < 0.0)
        throw DomainError(std::string(who) + ": argument must be finite and >= 0");
}

}  // namespace

double g(double x) {
    require_finite_nonneg(x, "g");
    if (x < 1e-4) {
        // x tanh(x/2) = x^2/2 - x^4/24 + x^6/240 - O(x^8); truncation error
        // below 1e-19 relative at the switch point.
        const double x2 = x * x;
        return x2 * (0.5 - x2 * (1.0 / 24.0 - x2 * (1.0 / 240.0)));
    }
    return x * std::tanh(0.5 * x);
}

double g_prime(double x) {
    require_finite_nonneg(x, "g_prime");
    const double t = std::tanh(0.5 * x);
    return t + 0.5 * x * (1.0 - t * t);
}

InverseResult g_inverse(double y, double tol) {
    if (!std::isfinite(y) || y < 0.0)
        throw DomainError("g_inverse: argument must be finite and >= 0");
    if (!(tol > 0.0) || !std::isfinite(tol))
        throw DomainError("g_inverse: tolerance must be positive and finite");
    if (y == 0.0) return {0.0, 0, 0.0};

    // g(x) <= x^2/2 makes sqrt(2y) a lower bracket; g(x) >= x - 2 makes
    // y + 2 + sqrt(2y) an upper one. Doubling is a safeguard only.
    double lo = std::sqrt(2.0 * y);
    double hi = y + 2.0 + lo;
    int expansions = 0;
    while (g(hi) < y) {
        hi *= 2.0;
        if (++expansions > 200)
            throw NumericError("g_inverse: bracket expansion failed", hi, lo, hi);
    }

    const double f_tol = tol * std::max(1.0, y);
    double x = 0.5 * (lo + hi);
    double fx = g(x) - y;
    int iter = 0;
    while (++iter <= 200) {
        if (fx == 0.0) break;
        if (fx > 0.0)
            hi = x;
        else
            lo = x;
        const double d = g_prime(x);
        double xn = (d > 0.0) ? x - fx / d : 0.5 * (lo + hi);
        if (!(xn > lo) || !(xn < hi)) xn = 0.5 * (lo + hi);  // Newton left the bracket
        const double step = xn - x;
        x = xn;
        fx = g(x) - y;
        // Converge in x, not just in residual: the round trip through g
        // loses a factor g'(x) of precision at small y otherwise.
        if (std::fabs(fx) <= f_tol && std::fabs(step) <= 4.0 * kEps * x) break;
        if (std::fabs(fx) <= f_tol && (hi - lo) <= 8.0 * kEps * x) break;
    }
    if (iter > 200)
        throw NumericError("g_inverse: no convergence within 200 iterations", x, lo, hi);
    return {x, iter, std::fabs(fx)};
}

GammaEval gamma_big(double x) {
    if (!std::isfinite(x) || x <= 0.0)
        throw DomainError("gamma_big: argument must be finite and > 0");

    GammaEval out;
    out.x = x;

    if (x < 1e-8) {
        // Inverting g(t) = t^2/2 - t^4/24 + ... gives t = sqrt(2x)(1 + x/12
        // + O(x^2)); the dropped term is below 1e-17 relative here.
        out.g_inv = std::sqrt(2.0 * x) * (1.0 + x / 12.0);
        out.gamma = out.g_inv / x;
        out.iterations = 0;
        out.residual = std::fabs(g(out.g_inv) - x);
        return out;
    }

    if (x > 1e8) {
        // g^{-1}(x) = x (1 + 2 e^{-x} + ...): the excess is unrepresentable,
        // so pin to the floor.
        out.gamma = kGammaFloor;
        out.g_inv = out.gamma * x;
        out.iterations = 0;
        out.residual = std::fabs(g(out.g_inv) - x);
        return out;
    }

    const InverseResult inv = g_inverse(x, 1e-13);
    out.g_inv = inv.value;
    out.gamma = std::max(inv.value / x, kGammaFloor);
    out.iterations = inv.iterations;
    out.residual = inv.residual;
    return out;
}

double thermal_wavelength(double mass, double beta, const UnitSystem& units) {
    units.validate();
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw DomainError("thermal_wavelength: mass must be positive and finite");
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw DomainError("thermal_wavelength: beta must be positive and finite");
    return units.hbar * std::sqrt(2.0 * std::numbers::pi * beta / mass);
}

BoundValue boltzmann_bound(double delta_x, double mass, double beta,
                           const UnitSystem& units) {
    units.validate();
    if (!(delta_x > 0.0) || !std::isfinite(delta_x))
        throw DomainError("boltzmann_bound: delta_x must be positive and finite");
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw DomainError("boltzmann_bound: mass must be positive and finite");
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw DomainError("boltzmann_bound: beta must be positive and finite");

    BoundValue out;
    out.r = delta_x / thermal_wavelength(mass, beta, units);
    out.x_arg = beta * units.hbar * units.hbar / (2.0 * mass * delta_x * delta_x);
    out.gamma = gamma_big(out.x_arg);
    out.value = 0.5 * units.hbar * out.gamma.gamma;
    return out;
}

}  // namespace thermal_bound::specfun
