#include "thermal_bound/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "thermal_bound/format.hpp"
#include "thermal_bound/specfun.hpp"

namespace thermal_bound::spectral {

namespace {

constexpr double kPi = std::numbers::pi;

// coth(u/2); the integrand fold C(w) + C(-w) = hbar im_chi(w) coth(u/2)
// with u = beta hbar w.
double coth_half(double u) { return 1.0 / std::tanh(0.5 * u); }

quadrature::IntegrandSpec base_spec(const SusceptibilityModel& model) {
    quadrature::IntegrandSpec spec;
    spec.tail_start = model.tail_start;
    spec.breakpoints = model.feature_points;
    return spec;
}

}  // namespace

void SusceptibilityModel::validate() const {
    if (!im_chi) throw DomainError("SusceptibilityModel: im_chi is empty");
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw DomainError("SusceptibilityModel: mass must be positive and finite");
    if (!(char_freq > 0.0) || !std::isfinite(char_freq))
        throw DomainError("SusceptibilityModel: char_freq must be positive and finite");
    if (!(tail_exponent > 1.0))
        throw DomainError("SusceptibilityModel: tail_exponent must be > 1");
    if (!(tail_start > 0.0) || !std::isfinite(tail_start))
        throw DomainError("SusceptibilityModel: tail_start must be positive");
    if (!std::isfinite(tail_coefficient) || tail_coefficient < 0.0)
        throw DomainError("SusceptibilityModel: tail_coefficient must be >= 0");

    // Sampled invariants: odd symmetry and passivity.
    for (double scale : {0.1, 1.0, 10.0}) {
        const double w = scale * char_freq;
        const double plus = im_chi(w);
        const double minus = im_chi(-w);
        if (std::isnan(plus) || std::isnan(minus))
            throw EvaluatorError("SusceptibilityModel: im_chi returned NaN", w);
        if (std::fabs(plus + minus) > 1e-12 * std::fabs(plus) + 1e-300)
            throw DomainError("SusceptibilityModel: im_chi is not odd in omega");
        if (plus < 0.0)
            throw DomainError("SusceptibilityModel: im_chi < 0 at positive omega");
    }
}

double SusceptibilityModel::zero_slope() const {
    if (zero_slope_hint) return *zero_slope_hint;
    // Two-point Richardson estimate in w^2: im_chi(w)/w = L + c w^2 + ...
    const double w1 = 1e-6 * char_freq;
    const double w2 = 5e-7 * char_freq;
    const double r1 = im_chi(w1) / w1;
    const double r2 = im_chi(w2) / w2;
    return (4.0 * r2 - r1) / 3.0;
}

double c_spectrum(const SusceptibilityModel& model, const ThermalState& state,
                  double omega) {
    if (!std::isfinite(omega))
        throw DomainError("c_spectrum: omega must be finite");
    const double u = state.beta * state.units.hbar * omega;
    if (std::fabs(u) <= 1e-8) {
        // Removable point: C -> hbar L / (beta hbar) with L = lim im_chi/w.
        return model.zero_slope() / state.beta;
    }
    const double chi = model.im_chi(omega);
    if (std::isnan(chi)) throw EvaluatorError("c_spectrum: im_chi returned NaN", omega);
    return state.units.hbar * chi / (-std::expm1(-u));
}

double var_x_fdt(const SusceptibilityModel& model, const ThermalState& state,
                 double rel_tol) {
    model.validate();
    state.validate();
    const double hbar = state.units.hbar;
    const double bh = state.beta * hbar;
    const double zero_slope = model.zero_slope();

    quadrature::IntegrandSpec spec = base_spec(model);
    spec.evaluator = [&model, bh](double w) {
        return model.im_chi(w) * coth_half(bh * w);
    };
    spec.zero_limit = 2.0 * zero_slope / bh;
    spec.tail_coefficient = model.tail_coefficient;
    spec.tail_exponent = model.tail_exponent;

    return (hbar / kPi) * quadrature::integrate_halfline(spec, rel_tol).value;
}

double p_density(const SusceptibilityModel& model, const ThermalState& state,
                 double var_x, double omega) {
    return c_spectrum(model, state, omega) / (kPi * var_x);
}

double q_density(const SusceptibilityModel& model, const ThermalState& state,
                 double var_x, double omega) {
    const double u = state.beta * state.units.hbar * omega;
    return (1.0 + std::exp(-u)) * p_density(model, state, var_x, omega);
}

double p_normalization(const SusceptibilityModel& model, const ThermalState& state,
                       double rel_tol) {
    model.validate();
    state.validate();
    const double var_x = var_x_fdt(model, state, rel_tol);

    quadrature::IntegrandSpec spec = base_spec(model);
    spec.evaluator = [&model, &state, var_x](double w) {
        return p_density(model, state, var_x, w) + p_density(model, state, var_x, -w);
    };
    spec.zero_limit = 2.0 * model.zero_slope() / (state.beta * kPi * var_x);
    spec.tail_coefficient =
        state.units.hbar * model.tail_coefficient / (kPi * var_x);
    spec.tail_exponent = model.tail_exponent;

    return quadrature::integrate_halfline(spec, rel_tol).value;
}

double q_normalization(const SusceptibilityModel& model, const ThermalState& state,
                       double rel_tol) {
    model.validate();
    state.validate();
    const double var_x = var_x_fdt(model, state, rel_tol);

    quadrature::IntegrandSpec spec = base_spec(model);
    spec.evaluator = [&model, &state, var_x](double w) {
        return q_density(model, state, var_x, w);
    };
    spec.zero_limit = 2.0 * model.zero_slope() / (state.beta * kPi * var_x);
    spec.tail_coefficient =
        state.units.hbar * model.tail_coefficient / (kPi * var_x);
    spec.tail_exponent = model.tail_exponent;

    return quadrature::integrate_halfline(spec, rel_tol).value;
}

PDensity build_p(const SusceptibilityModel& model, const ThermalState& state,
                 double rel_tol) {
    model.validate();
    state.validate();

    PDensity out;
    out.var_x = var_x_fdt(model, state, rel_tol);

    constexpr std::size_t kGridPoints = 2048;
    const double w_min = 1e-6 * model.char_freq;
    const double w_max = 10.0 * model.tail_start;
    const double ratio = std::log(w_max / w_min);

    out.grid.kind = SpectrumKind::P;
    out.grid.tail.coefficient =
        state.units.hbar * model.tail_coefficient / (kPi * out.var_x);
    out.grid.tail.exponent = model.tail_exponent;
    out.grid.omegas.reserve(kGridPoints);
    out.grid.values.reserve(kGridPoints);
    for (std::size_t i = 0; i < kGridPoints; ++i) {
        const double t = static_cast<double>(i) / (kGridPoints - 1);
        const double w = w_min * std::exp(ratio * t);
        out.grid.omegas.push_back(w);
        out.grid.values.push_back(p_density(model, state, out.var_x, w));
    }
    return out;
}

SpectrumGrid build_q(const SpectrumGrid& p_grid, const ThermalState& state) {
    if (p_grid.kind != SpectrumKind::P)
        throw DomainError("build_q: input grid must be a P spectrum");
    state.validate();

    SpectrumGrid q = p_grid;
    q.kind = SpectrumKind::Q;
    const double bh = state.beta * state.units.hbar;
    for (std::size_t i = 0; i < q.omegas.size(); ++i) {
        if (q.omegas[i] < 0.0)
            throw DomainError("build_q: P grid contains negative frequencies");
        q.values[i] *= 1.0 + std::exp(-bh * q.omegas[i]);
    }
    return q;
}

MomentSummary moments(const SusceptibilityModel& model, const ThermalState& state,
                      double rel_tol) {
    model.validate();
    state.validate();

    const double hbar = state.units.hbar;
    const double m = model.mass;
    const double bh = state.beta * hbar;

    MomentSummary out;

    // (delta_x)^2 first: it normalizes P for the remaining moments.
    out.var_x = var_x_fdt(model, state, rel_tol);
    if (!(out.var_x > 0.0) || !std::isfinite(out.var_x))
        throw NumericError("moments: var_x is not positive", out.var_x);

    // (delta_p)^2 = (m^2 hbar / pi) int w^2 im_chi coth(u/2) dw.
    {
        quadrature::IntegrandSpec spec = base_spec(model);
        spec.evaluator = [&model, bh](double w) {
            return w * w * model.im_chi(w) * coth_half(bh * w);
        };
        spec.zero_limit = 0.0;
        spec.tail_coefficient = model.tail_coefficient;
        spec.tail_exponent = model.tail_exponent - 2.0;
        out.var_p = (m * m * hbar / kPi) *
                    quadrature::integrate_halfline(spec, rel_tol).value;
    }
    if (!(out.var_p > 0.0) || !std::isfinite(out.var_p))
        throw NumericError("moments: var_p is not positive", out.var_p);

    // <w> under P: the odd fold C(w) - C(-w) = hbar im_chi(w) leaves a bare
    // im_chi integrand.
    {
        quadrature::IntegrandSpec spec = base_spec(model);
        const double norm = hbar / (kPi * out.var_x);
        spec.evaluator = [&model, norm](double w) {
            return norm * w * model.im_chi(w);
        };
        spec.zero_limit = 0.0;
        spec.tail_coefficient = norm * model.tail_coefficient;
        spec.tail_exponent = model.tail_exponent - 1.0;
        out.mean_omega = quadrature::integrate_halfline(spec, rel_tol).value;
    }

    // <w^2> under P, folded with coth like var_p but normalized by var_x.
    {
        quadrature::IntegrandSpec spec = base_spec(model);
        const double norm = hbar / (kPi * out.var_x);
        spec.evaluator = [&model, bh, norm](double w) {
            return norm * w * w * model.im_chi(w) * coth_half(bh * w);
        };
        spec.zero_limit = 0.0;
        spec.tail_coefficient = norm * model.tail_coefficient;
        spec.tail_exponent = model.tail_exponent - 2.0;
        out.mean_omega_sq = quadrature::integrate_halfline(spec, rel_tol).value;
    }
    if (!(out.mean_omega_sq > 0.0))
        throw NumericError("moments: <w^2> is not positive", out.mean_omega_sq);

    // <g(beta hbar w)> under Q, evaluated literally through g and Q.
    {
        quadrature::IntegrandSpec spec = base_spec(model);
        const double var_x = out.var_x;
        spec.evaluator = [&model, &state, var_x, bh](double w) {
            return specfun::g(bh * w) * q_density(model, state, var_x, w);
        };
        spec.zero_limit = 0.0;
        spec.tail_coefficient =
            bh * hbar * model.tail_coefficient / (kPi * var_x);
        spec.tail_exponent = model.tail_exponent - 1.0;
        out.mean_g_q = quadrature::integrate_halfline(spec, rel_tol).value;
    }

    return out;
}

JensenReport jensen_check(const MomentSummary& summary, const ThermalState& state) {
    state.validate();
    if (!std::isfinite(summary.mean_omega) || !std::isfinite(summary.mean_omega_sq))
        throw DomainError("jensen_check: moments must be finite");

    const double bh = state.beta * state.units.hbar;
    const double k = specfun::g_inverse(bh * summary.mean_omega).value;

    JensenReport report;
    report.lhs = summary.mean_omega_sq;
    report.rhs = (k / bh) * (k / bh);
    report.slack = report.lhs - report.rhs;
    return report;
}

void write_csv(std::ostream& os, const SpectrumGrid& grid) {
    os << "omega,value\n";
    for (std::size_t i = 0; i < grid.omegas.size(); ++i)
        os << format_full(grid.omegas[i]) << ',' << format_full(grid.values[i])
           << '\n';
}

}  // namespace thermal_bound::spectral
