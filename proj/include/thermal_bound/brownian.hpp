// brownian.hpp — Brownian oscillator with a Drude bath: friction kernel,
// susceptibility, the adapter into the spectral pipeline, and an independent
// Matsubara-summation oracle for the position variance.
#pragma once

#include <complex>

#include "thermal_bound/spectral.hpp"
#include "thermal_bound/units.hpp"

namespace thermal_bound::brownian {

// Oscillator of mass m and bare frequency Omega coupled to a Drude bath
// with coupling strength eta and damping/cutoff rate zeta. The bath enters
// only through the friction kernel gamma(omega); its microscopic modes are
// integrated out. Defaults are the bundled demo configuration.
struct OscillatorModel {
    double mass = 1.0;
    double omega0 = 1.0;
    double eta = 10.0;
    double zeta = 10.0;

    void validate() const;
};

// Drude friction gamma(omega) = i eta Omega / (omega + i zeta).
// Re gamma = eta Omega zeta / (omega^2 + zeta^2) (even, > 0 for eta > 0),
// Im gamma = eta Omega omega / (omega^2 + zeta^2) (odd).
std::complex<double> drude_friction(const OscillatorModel& model, double omega);

// chi(omega) = (1/m) / (Omega^2 - omega^2 - i omega gamma(omega)).
// Im chi >= 0 on omega >= 0; Re even, Im odd. With eta = 0 the undamped
// resonance at |omega| = Omega is a pole and is rejected.
std::complex<double> susceptibility(const OscillatorModel& model, double omega);

// Wraps the model for the spectral pipeline: Im chi evaluator, declared
// tail A = eta Omega zeta / m with exponent 5, the analytic zero slope
// L = (eta Omega / zeta) / (m Omega^4), and resonance feature points.
spectral::SusceptibilityModel to_susceptibility_model(const OscillatorModel& model);

// Independent route to (delta_x)^2:
//   (1/(m beta)) * sum_n [Omega^2 + nu_n^2 + |nu_n| gh(|nu_n|)]^{-1},
// nu_n = 2 pi n / (beta hbar), gh(z) = eta Omega / (z + zeta).
// The eta = 0 part of the sum is taken in closed form,
// (beta hbar / (2 Omega)) coth(beta hbar Omega / 2), and the remainder
// converges like 1/n^4; n is grown until its analytic tail bound drops
// below rel_tol of the running value. Deterministic.
double matsubara_var_x(const OscillatorModel& model, const ThermalState& state,
                       double rel_tol);

}  // namespace thermal_bound::brownian
