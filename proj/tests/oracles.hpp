// oracles.hpp — test-only reference implementations, deliberately kept
// independent of the library's evaluation paths.
#pragma once

#include <cmath>
#include <stdexcept>

namespace oracles {

// tanh via Lambert's continued fraction,
//   tanh(z) = z / (1 + z^2 / (3 + z^2 / (5 + ...))),
// evaluated bottom-up in long double. Shares nothing with std::tanh or the
// library's series.
inline long double tanh_cf(long double z) {
    const long double z2 = z * z;
    long double f = 2.0L * 40.0L + 1.0L;  // deepest partial denominator
    for (int k = 39; k >= 1; --k) f = (2.0L * k + 1.0L) + z2 / f;
    return z / (1.0L + z2 / f);
}

// g(x) = x tanh(x/2) built on the continued fraction above.
inline long double g_cf(long double x) { return x * tanh_cf(0.5L * x); }

// Plain bisection for g(x) = y on [lo, hi], to an absolute x tolerance.
// Used to pin expected values for the library's Newton-based inverse.
inline double bisect_g(double y, double lo, double hi, double tol) {
    if (!(g_cf(lo) <= y && g_cf(hi) >= y))
        throw std::runtime_error("bisect_g: root not bracketed");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (g_cf(mid) < y)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace oracles
