// sweep.hpp — temperature sweep producing per-temperature bound reports,
// chain verification, and CSV emission.
#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "thermal_bound/brownian.hpp"
#include "thermal_bound/units.hpp"

namespace thermal_bound::sweep {

struct SweepConfig {
    brownian::OscillatorModel model{};
    UnitSystem units{};
    std::vector<double> beta_grid{};  // strictly increasing, all positive
    double rel_tol = 1e-10;
    bool emit_spectra = false;

    void validate() const;

    static std::vector<double> log_grid(double beta_min, double beta_max, int count);
};

// Everything reported for one temperature.
struct BoundReport {
    double beta = 0.0;
    double temperature = 0.0;  // 1/(k_B beta)
    double delta_x = 0.0;
    double delta_p = 0.0;
    double product = 0.0;      // delta_x * delta_p
    double heisenberg = 0.0;   // hbar/2
    double boltzmann = 0.0;    // (hbar/2) * Gamma(gamma_arg)
    double r = 0.0;            // delta_x / lambda_th
    double gamma_arg = 0.0;    // 1/(4 pi r^2)
    double jensen_slack = 0.0;
    // |<w> 2 m dx^2 / hbar - 1| and |<w^2> m^2 dx^2 / dp^2 - 1|
    std::array<double, 2> sumrule_residuals{0.0, 0.0};
};

// One grid slot: either a report or the error that prevented it.
struct SweepPoint {
    double beta = 0.0;
    std::optional<BoundReport> report{};
    std::string error{};
};

struct VerificationSummary {
    double worst_product_slack = 0.0;  // min (product - boltzmann)/product
    double worst_bound_slack = 0.0;    // min (boltzmann - heisenberg)/heisenberg
    bool passed = false;
    bool product_monotone = true;      // product non-increasing in beta (diagnostic)
};

// Single-temperature evaluation: spectral moments + bound + Jensen check.
BoundReport evaluate_point(const brownian::OscillatorModel& model,
                           const UnitSystem& units, double beta, double rel_tol);

// One report per beta, in grid order. Failures are isolated per point; the
// sweep itself throws only if every point fails. The single-argument
// overload takes its thread cap from THERMAL_BOUND_THREADS (0 or unset =
// one thread per hardware core). Results are identical for any thread count.
std::vector<SweepPoint> run_sweep(const SweepConfig& config);
std::vector<SweepPoint> run_sweep(const SweepConfig& config, unsigned threads);

std::vector<BoundReport> successful_reports(const std::vector<SweepPoint>& points);

// Chain checks: product >= boltzmann (within -1e-9 relative) and
// boltzmann >= heisenberg (exactly). Product monotonicity in beta is
// reported as a diagnostic, never a failure.
VerificationSummary verify_chain(const std::vector<BoundReport>& reports);

// CSV with header beta,temperature,delta_x,delta_p,product,heisenberg_bound,
// boltzmann_bound,r,gamma_arg,jensen_slack,sumrule1,sumrule2; one row per
// successful point, 17 significant digits.
std::string to_csv(const std::vector<SweepPoint>& points);
void write_csv(std::ostream& os, const std::vector<SweepPoint>& points);

// Parses THERMAL_BOUND_THREADS; 0 = auto.
unsigned thread_cap_from_env();

}  // namespace thermal_bound::sweep
