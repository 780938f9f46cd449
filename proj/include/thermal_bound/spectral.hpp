// spectral.hpp — equilibrium correlation spectrum C(omega) from a
// susceptibility via the fluctuation–dissipation theorem, the P and Q
// frequency distributions built from it, their moments, and the Jensen
// inequality check that underpins the refined uncertainty bound.
#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "thermal_bound/quadrature.hpp"
#include "thermal_bound/units.hpp"

namespace thermal_bound::spectral {

// Frequency-domain susceptibility of a single coordinate. Only the
// imaginary part enters equilibrium correlation functions; it must be odd
// in omega and nonnegative on omega >= 0 (passivity). The tail fields
// declare the algebraic decay im_chi ~ A/omega^k beyond tail_start, and
// feature_points may mark narrow resonances for panel seeding.
struct SusceptibilityModel {
    std::function<double(double)> im_chi;
    double mass = 1.0;
    double char_freq = 1.0;  // characteristic frequency: scales grids and probes
    double tail_coefficient = 0.0;
    double tail_exponent = 5.0;
    double tail_start = 1.0;
    std::vector<double> feature_points{};
    std::optional<double> zero_slope_hint{};  // analytic lim im_chi(w)/w, if known

    // Checks field validity plus sampled odd symmetry and passivity.
    void validate() const;

    // lim_{w->0} im_chi(w)/w: the declared hint when present, otherwise a
    // two-point Richardson estimate at {1e-6, 5e-7} * char_freq.
    double zero_slope() const;
};

struct GridTail {
    double coefficient = 0.0;
    double exponent = 2.0;
};

enum class SpectrumKind { C, P, Q };

// Discretized nonnegative-frequency representation of a spectrum, meant for
// CSV export and coarse cross-checks; moments are always computed from the
// continuous evaluators, never from the grid.
struct SpectrumGrid {
    std::vector<double> omegas;  // strictly increasing, all >= 0
    std::vector<double> values;
    GridTail tail{};
    SpectrumKind kind = SpectrumKind::C;
};

struct MomentSummary {
    double var_x = 0.0;          // (delta_x)^2
    double var_p = 0.0;          // (delta_p)^2
    double mean_omega = 0.0;     // <w> under P
    double mean_omega_sq = 0.0;  // <w^2> under P
    double mean_g_q = 0.0;       // <g(beta hbar w)> under Q
};

struct JensenReport {
    double lhs = 0.0;    // <w^2>
    double rhs = 0.0;    // g^{-1}(beta hbar <w>)^2 / (beta hbar)^2
    double slack = 0.0;  // lhs - rhs, >= 0 up to numerical noise
};

// C(omega) = hbar * im_chi(omega) / (1 - e^{-beta hbar omega}), full line.
// For |beta hbar omega| <= 1e-8 the removable limit L/beta is substituted,
// with L = lim im_chi(w)/w. Nonnegative everywhere; detailed balance
// C(-w) = e^{-beta hbar w} C(w) holds by construction.
double c_spectrum(const SusceptibilityModel& model, const ThermalState& state,
                  double omega);

// (delta_x)^2 = (hbar/pi) * int_0^inf im_chi(w) coth(beta hbar w / 2) dw.
// This is the full-line FDT integral folded onto the half line through
// C(w) + C(-w) = hbar im_chi(w) coth(beta hbar w / 2).
double var_x_fdt(const SusceptibilityModel& model, const ThermalState& state,
                 double rel_tol);

// P(w) = C(w)/(pi var_x) on the full line; Q(w) = (1 + e^{-beta hbar w}) P(w)
// on the half line. Both normalized to 1.
double p_density(const SusceptibilityModel& model, const ThermalState& state,
                 double var_x, double omega);
double q_density(const SusceptibilityModel& model, const ThermalState& state,
                 double var_x, double omega);

// Full-line integral of P, evaluated as int_0^inf [P(w) + P(-w)] dw with a
// genuine negative-frequency evaluation of C (the fold is not assumed).
double p_normalization(const SusceptibilityModel& model,
                       const ThermalState& state, double rel_tol);
// int_0^inf Q(w) dw.
double q_normalization(const SusceptibilityModel& model,
                       const ThermalState& state, double rel_tol);

struct PDensity {
    SpectrumGrid grid;
    double var_x = 0.0;
};

// Samples P onto a 2048-point log grid over [1e-6, 10 * tail_start / char_freq]
// scaled by char_freq, and returns it with the variance used to normalize.
PDensity build_p(const SusceptibilityModel& model, const ThermalState& state,
                 double rel_tol);

// Q from a P grid: multiply by (1 + e^{-beta hbar w}) pointwise.
SpectrumGrid build_q(const SpectrumGrid& p_grid, const ThermalState& state);

// All moments in one pass: var_x first (it normalizes P), then var_p,
// <w>, <w^2> and <g(beta hbar w)>_Q as independent quadratures.
MomentSummary moments(const SusceptibilityModel& model, const ThermalState& state,
                      double rel_tol);

JensenReport jensen_check(const MomentSummary& summary, const ThermalState& state);

// CSV export: header "omega,value", 17 significant digits.
void write_csv(std::ostream& os, const SpectrumGrid& grid);

}  // namespace thermal_bound::spectral
