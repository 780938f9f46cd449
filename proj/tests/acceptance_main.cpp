// acceptance_main.cpp — end-to-end acceptance suite. Runs every contract
// check at its pinned tolerance and prints one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "thermal_bound/brownian.hpp"
#include "thermal_bound/specfun.hpp"
#include "thermal_bound/spectral.hpp"
#include "thermal_bound/sweep.hpp"

using namespace thermal_bound;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", index,
                name.c_str(), detail.c_str());
    if (!ok) ++g_failures;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

// demo configuration: hbar = k_B = 1, m = 1/Omega, Omega = 1, eta = zeta = 10
const brownian::OscillatorModel kModel{1.0, 1.0, 10.0, 10.0};
const double kRelTol = 1e-10;

const std::vector<double> kBetaMatrix = {0.05, 0.1, 0.5, 1.0, 5.0, 10.0, 50.0};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
}

std::vector<sweep::BoundReport> g_sweep_reports;

void criterion_1_bound_chain() {
    const auto start = std::chrono::steady_clock::now();

    sweep::SweepConfig config;
    config.model = kModel;
    config.beta_grid = sweep::SweepConfig::log_grid(0.02, 50.0, 200);
    config.rel_tol = kRelTol;
    const auto points = sweep::run_sweep(config, 1);  // single-threaded
    g_sweep_reports = sweep::successful_reports(points);

    const double elapsed = seconds_since(start);

    bool ok = g_sweep_reports.size() == 200;
    double worst_product = 1.0;
    double worst_bound = 1.0;
    for (const auto& r : g_sweep_reports) {
        worst_product = std::min(worst_product, (r.product - r.boltzmann) / r.product);
        worst_bound = std::min(worst_bound, (r.boltzmann - 0.5) / 0.5);
    }
    ok = ok && worst_product >= -1e-9 && worst_bound >= -1e-9 && elapsed < 30.0;
    report(1, "bound chain over 200-point sweep", ok,
           "worst product slack " + fmt(worst_product) + ", worst bound slack " +
               fmt(worst_bound) + ", " + fmt(elapsed) + " s single-threaded");
}

void criterion_2_low_temperature() {
    const auto& r = g_sweep_reports.back();  // beta = 50 endpoint
    const double gap = std::fabs(r.boltzmann - 0.5);
    report(2, "low-temperature coincidence with hbar/2", gap < 0.01,
           "beta = " + fmt(r.beta) + ", |boltzmann - 0.5| = " + fmt(gap));
}

void criterion_3_high_temperature_refinement() {
    const auto r = sweep::evaluate_point(kModel, UnitSystem{}, 1.0, kRelTol);
    const bool floor_ok = r.boltzmann - 0.5 > 0.05;
    // frozen regression value from the validated first run, cross-checked
    // against an independent multi-precision evaluation
    const bool frozen_ok = std::fabs(r.boltzmann - 1.0797222944928183) <
                           1e-8 * r.boltzmann;
    report(3, "high-temperature refinement at beta = 1", floor_ok && frozen_ok,
           "boltzmann - 0.5 = " + fmt(r.boltzmann - 0.5));
}

void criterion_4_saturation() {
    brownian::OscillatorModel model = kModel;
    model.eta = 1e-6;
    bool ok = true;
    double worst = 0.0;
    for (double beta : {0.1, 1.0, 10.0}) {
        const auto r = sweep::evaluate_point(model, UnitSystem{}, beta, kRelTol);
        const double coth_form = 0.5 / std::tanh(0.5 * beta);
        const double product_gap = std::fabs(r.product - coth_form) / coth_form;
        const double bound_gap = std::fabs(r.boltzmann - r.product) / r.product;
        worst = std::max({worst, product_gap, bound_gap});
        ok = ok && product_gap < 1e-4 && bound_gap < 1e-4;
    }
    report(4, "undamped saturation at eta = 1e-6", ok,
           "worst relative gap " + fmt(worst));
}

void criterion_5_oracle_equivalence() {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    double worst = 0.0;
    for (double eta : {10.0, 1e-6}) {
        brownian::OscillatorModel model = kModel;
        model.eta = eta;
        const auto sm = brownian::to_susceptibility_model(model);
        for (double beta : kBetaMatrix) {
            const ThermalState state{beta, UnitSystem{}};
            const double quad_route = spectral::var_x_fdt(sm, state, kRelTol);
            const double mats_route = brownian::matsubara_var_x(model, state, kRelTol);
            const double rel = std::fabs(quad_route - mats_route) / mats_route;
            worst = std::max(worst, rel);
            ok = ok && rel < 1e-8;
        }
    }
    const double elapsed = seconds_since(start);
    ok = ok && elapsed < 5.0;
    report(5, "FDT quadrature vs Matsubara oracle (7 x 2 points)", ok,
           "worst relative gap " + fmt(worst) + ", " + fmt(elapsed) + " s");
}

void criterion_6_sum_rules() {
    const auto sm = brownian::to_susceptibility_model(kModel);
    bool ok = true;
    double worst = 0.0;
    for (double beta : kBetaMatrix) {
        const ThermalState state{beta, UnitSystem{}};
        const auto m = spectral::moments(sm, state, kRelTol);
        const double first =
            std::fabs(m.mean_omega * 2.0 * kModel.mass * m.var_x - 1.0);
        const double second = std::fabs(
            m.mean_omega_sq * kModel.mass * kModel.mass * m.var_x / m.var_p - 1.0);
        worst = std::max({worst, first, second});
        ok = ok && first < 1e-7 && second < 1e-7;
    }
    report(6, "first and second moment sum rules", ok,
           "worst residual " + fmt(worst));
}

void criterion_7_distribution_identities() {
    const auto sm = brownian::to_susceptibility_model(kModel);
    bool ok = true;
    std::string note;

    for (double beta : {0.1, 1.0, 10.0}) {
        const ThermalState state{beta, UnitSystem{}};
        const double p_norm = spectral::p_normalization(sm, state, kRelTol);
        const double q_norm = spectral::q_normalization(sm, state, kRelTol);
        ok = ok && std::fabs(p_norm - 1.0) < 1e-9 && std::fabs(q_norm - 1.0) < 1e-9;

        for (double scale : {0.1, 1.0, 10.0}) {
            const double w = scale / beta;
            const double plus = spectral::c_spectrum(sm, state, w);
            const double minus = spectral::c_spectrum(sm, state, -w);
            ok = ok && std::fabs(minus - std::exp(-beta * w) * plus) < 1e-12 * plus;
        }
    }

    for (double beta : kBetaMatrix) {
        const ThermalState state{beta, UnitSystem{}};
        const auto m = spectral::moments(sm, state, kRelTol);
        const double link =
            std::fabs(beta * m.mean_omega - m.mean_g_q) / (beta * m.mean_omega);
        const auto jensen = spectral::jensen_check(m, state);
        ok = ok && link < 1e-7 && jensen.slack >= -1e-9 * jensen.lhs;
    }
    report(7, "P/Q normalization, detailed balance, moment link, Jensen", ok,
           ok ? "all identities within pinned tolerances" : "violation found");
}

void criterion_8_special_functions() {
    bool ok = true;
    double worst_rt = 0.0;
    for (int i = 0; i <= 110; ++i) {
        const double y = 1e-8 * std::pow(10.0, 11.0 * i / 110.0);  // up to 1e3
        const double x = specfun::g_inverse(y).value;
        const double rt = std::fabs(specfun::g(x) - y) / std::max(1.0, y);
        worst_rt = std::max(worst_rt, rt);
        ok = ok && rt <= 1e-12;
    }
    for (int i = 0; i <= 60; ++i) {
        const double x = 1e-6 * std::pow(10.0, 12.0 * i / 60.0);  // up to 1e6
        ok = ok && specfun::gamma_big(x).gamma > 1.0;
    }
    ok = ok && specfun::gamma_big(1e6).gamma < 1.01;
    const double asym =
        std::fabs(specfun::gamma_big(1e-6).gamma / std::sqrt(2.0 / 1e-6) - 1.0);
    ok = ok && asym < 1e-3;
    report(8, "special-function round trips and Gamma asymptotics", ok,
           "worst round trip " + fmt(worst_rt) + ", asymptote gap " + fmt(asym));
}

void criterion_9_classical_limit() {
    const auto sm = brownian::to_susceptibility_model(kModel);
    const ThermalState state{0.01, UnitSystem{}};
    const auto m = spectral::moments(sm, state, kRelTol);
    const double x_part = state.beta * kModel.mass * kModel.omega0 *
                          kModel.omega0 * m.var_x;
    const double p_part = state.beta * m.var_p / kModel.mass;
    const bool ok = std::fabs(x_part - 1.0) < 1e-3 && std::fabs(p_part - 1.0) < 1e-3;
    report(9, "classical equipartition at beta = 0.01", ok,
           "beta m w^2 dx^2 = " + fmt(x_part) + ", beta dp^2/m = " + fmt(p_part));
}

}  // namespace

int main() {
    try {
        criterion_1_bound_chain();
        criterion_2_low_temperature();
        criterion_3_high_temperature_refinement();
        criterion_4_saturation();
        criterion_5_oracle_equivalence();
        criterion_6_sum_rules();
        criterion_7_distribution_identities();
        criterion_8_special_functions();
        criterion_9_classical_limit();
    } catch (const std::exception& e) {
        std::printf("[FAIL] acceptance suite aborted: %s\n", e.what());
        return 1;
    }
    if (g_failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria failed\n", g_failures);
    return 1;
}
