#include "thermal_bound/brownian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace thermal_bound::brownian {

namespace {

constexpr double kPi = std::numbers::pi;

// Real-arithmetic pieces of chi's denominator
//   D = Omega^2 - w^2 + w Im gamma(w) - i w Re gamma(w),
// written out so that Im chi is odd in w to the last bit.
struct Denominator {
    double re;
    double im;
};

Denominator denominator(const OscillatorModel& model, double omega) {
    const double o2 = model.omega0 * model.omega0;
    const double lorentz = omega * omega + model.zeta * model.zeta;
    const double re_gamma = model.eta * model.omega0 * model.zeta / lorentz;
    const double im_gamma = model.eta * model.omega0 * omega / lorentz;
    return {o2 - omega * omega + omega * im_gamma, -omega * re_gamma};
}

}  // namespace

void OscillatorModel::validate() const {
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw DomainError("OscillatorModel: mass must be positive and finite");
    if (!(omega0 > 0.0) || !std::isfinite(omega0))
        throw DomainError("OscillatorModel: omega0 must be positive and finite");
    if (!(zeta > 0.0) || !std::isfinite(zeta))
        throw DomainError("OscillatorModel: zeta must be positive and finite");
    if (!(eta >= 0.0) || !std::isfinite(eta))
        throw DomainError("OscillatorModel: eta must be finite and >= 0");
}

std::complex<double> drude_friction(const OscillatorModel& model, double omega) {
    if (!std::isfinite(omega))
        throw DomainError("drude_friction: omega must be finite");
    // i eta Omega / (w + i zeta) = eta Omega (zeta + i w) / (w^2 + zeta^2)
    const double lorentz = omega * omega + model.zeta * model.zeta;
    return {model.eta * model.omega0 * model.zeta / lorentz,
            model.eta * model.omega0 * omega / lorentz};
}

std::complex<double> susceptibility(const OscillatorModel& model, double omega) {
    if (!std::isfinite(omega))
        throw DomainError("susceptibility: omega must be finite");
    const double o2 = model.omega0 * model.omega0;
    if (model.eta == 0.0 && std::fabs(omega * omega - o2) < 1e-14 * o2)
        throw DomainError("susceptibility: pole at the undamped resonance");
    const Denominator d = denominator(model, omega);
    const double mag = model.mass * (d.re * d.re + d.im * d.im);
    return {d.re / mag, -d.im / mag};
}

spectral::SusceptibilityModel to_susceptibility_model(const OscillatorModel& model) {
    model.validate();

    spectral::SusceptibilityModel out;
    out.mass = model.mass;
    out.char_freq = model.omega0;
    out.im_chi = [model](double omega) {
        const Denominator d = denominator(model, omega);
        return -d.im / (model.mass * (d.re * d.re + d.im * d.im));
    };

    // Im chi -> eta Omega zeta / (m w^5) once w dominates Omega and zeta.
    out.tail_coefficient = model.eta * model.omega0 * model.zeta / model.mass;
    out.tail_exponent = 5.0;
    out.tail_start = 10.0 * std::max(model.omega0, model.zeta);

    // lim_{w->0} Im chi / w = Re gamma(0) / (m Omega^4).
    const double o4 = model.omega0 * model.omega0 * model.omega0 * model.omega0;
    out.zero_slope_hint = (model.eta * model.omega0 / model.zeta) / (model.mass * o4);

    // Resonance near Omega with half-width ~ Re gamma(Omega)/2; seed panel
    // boundaries shells around it so even a width-1e-7 spike is caught.
    const double re_gamma_res = drude_friction(model, model.omega0).real();
    const double width = std::max(0.5 * re_gamma_res, 1e-12 * model.omega0);
    out.feature_points.push_back(0.5 * model.omega0);
    out.feature_points.push_back(2.0 * model.omega0);
    for (double shells : {1.0, 10.0, 100.0, 1e3, 1e4}) {
        out.feature_points.push_back(model.omega0 - shells * width);
        out.feature_points.push_back(model.omega0 + shells * width);
    }
    out.feature_points.push_back(model.omega0);
    std::sort(out.feature_points.begin(), out.feature_points.end());
    out.feature_points.erase(
        std::remove_if(out.feature_points.begin(), out.feature_points.end(),
                       [&](double w) { return !(w > 0.0) || w >= out.tail_start; }),
        out.feature_points.end());

    return out;
}

double matsubara_var_x(const OscillatorModel& model, const ThermalState& state,
                       double rel_tol) {
    model.validate();
    state.validate();
    if (!(rel_tol > 1e-14) || !(rel_tol < 1e-2))
        throw DomainError("matsubara_var_x: rel_tol must lie in (1e-14, 1e-2)");

    const double hbar = state.units.hbar;
    const double beta = state.beta;
    const double bh = beta * hbar;
    const double omega0 = model.omega0;
    const double nu1 = 2.0 * kPi / bh;

    // eta = 0 part in closed form: sum_n 1/(Omega^2 + nu_n^2) over all n
    // equals (beta hbar / (2 Omega)) coth(beta hbar Omega / 2).
    const double closed = (bh / (2.0 * omega0)) / std::tanh(0.5 * bh * omega0);

    double sum = closed;
    if (model.eta > 0.0) {
        // Remainder terms
        //   d_n = 1/(Omega^2 + nu^2 + nu gh(nu)) - 1/(Omega^2 + nu^2)
        // fall off like -eta Omega / nu^4; their tail beyond N is bounded by
        // eta Omega (beta hbar / 2 pi)^4 / (3 N^3).
        const double tail_prefactor =
            model.eta * omega0 * std::pow(bh / (2.0 * kPi), 4) / 3.0;

        double correction = 0.0;
        long n = 1;
        long target = 64;
        while (true) {
            for (; n <= target; ++n) {
                const double nu = nu1 * static_cast<double>(n);
                const double base = omega0 * omega0 + nu * nu;
                const double damped =
                    base + nu * model.eta * omega0 / (nu + model.zeta);
                correction += 1.0 / damped - 1.0 / base;
            }
            const double total = closed + 2.0 * correction;
            const double tail_bound =
                2.0 * tail_prefactor / (static_cast<double>(target) *
                                        static_cast<double>(target) *
                                        static_cast<double>(target));
            if (tail_bound <= rel_tol * std::max(std::fabs(total), 1e-300)) {
                sum = total;
                break;
            }
            if (target > 200'000'000)
                throw NumericError("matsubara_var_x: sum does not converge", total);
            target *= 2;
        }
    }

    return sum / (model.mass * beta);
}

}  // namespace thermal_bound::brownian
