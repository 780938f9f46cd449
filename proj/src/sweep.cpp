#include "thermal_bound/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include "thermal_bound/format.hpp"
#include "thermal_bound/specfun.hpp"
#include "thermal_bound/spectral.hpp"

namespace thermal_bound::sweep {

void SweepConfig::validate() const {
    model.validate();
    units.validate();
    if (beta_grid.empty()) throw DomainError("SweepConfig: beta grid is empty");
    double prev = 0.0;
    for (double b : beta_grid) {
        if (!(b > 0.0) || !std::isfinite(b))
            throw DomainError("SweepConfig: beta grid entries must be positive and finite");
        if (!(b > prev))
            throw DomainError("SweepConfig: beta grid must be strictly increasing");
        prev = b;
    }
    if (!(rel_tol > 1e-14) || !(rel_tol < 1e-2))
        throw DomainError("SweepConfig: rel_tol must lie in (1e-14, 1e-2)");
}

std::vector<double> SweepConfig::log_grid(double beta_min, double beta_max, int count) {
    if (!(beta_min > 0.0) || !(beta_max > beta_min) || count < 2)
        throw DomainError("log_grid: need 0 < beta_min < beta_max and count >= 2");
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(count));
    const double span = std::log(beta_max / beta_min);
    for (int i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / (count - 1);
        grid.push_back(beta_min * std::exp(span * t));
    }
    return grid;
}

BoundReport evaluate_point(const brownian::OscillatorModel& model,
                           const UnitSystem& units, double beta, double rel_tol) {
    const ThermalState state{beta, units};
    const spectral::SusceptibilityModel sm = brownian::to_susceptibility_model(model);
    const spectral::MomentSummary m = spectral::moments(sm, state, rel_tol);

    BoundReport report;
    report.beta = beta;
    report.temperature = state.temperature();
    report.delta_x = std::sqrt(m.var_x);
    report.delta_p = std::sqrt(m.var_p);
    report.product = report.delta_x * report.delta_p;
    report.heisenberg = 0.5 * units.hbar;

    const specfun::BoundValue bound =
        specfun::boltzmann_bound(report.delta_x, model.mass, beta, units);
    report.boltzmann = bound.value;
    report.r = bound.r;
    report.gamma_arg = bound.x_arg;

    report.jensen_slack = spectral::jensen_check(m, state).slack;

    const double hbar = units.hbar;
    report.sumrule_residuals[0] =
        std::fabs(m.mean_omega * 2.0 * model.mass * m.var_x / hbar - 1.0);
    report.sumrule_residuals[1] =
        std::fabs(m.mean_omega_sq * model.mass * model.mass * m.var_x / m.var_p - 1.0);
    return report;
}

unsigned thread_cap_from_env() {
    const char* env = std::getenv("THERMAL_BOUND_THREADS");
    if (env == nullptr || *env == '\0') return 0;
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || value < 0)
        throw DomainError("THERMAL_BOUND_THREADS must be a nonnegative integer");
    return static_cast<unsigned>(value);
}

std::vector<SweepPoint> run_sweep(const SweepConfig& config) {
    return run_sweep(config, thread_cap_from_env());
}

std::vector<SweepPoint> run_sweep(const SweepConfig& config, unsigned threads) {
    config.validate();

    const std::size_t n = config.beta_grid.size();
    std::vector<SweepPoint> points(n);
    for (std::size_t i = 0; i < n; ++i) points[i].beta = config.beta_grid[i];

    // Per-point evaluation is pure; slots are written by index so the
    // output is identical for any thread count.
    auto work = [&](std::size_t i) {
        try {
            points[i].report =
                evaluate_point(config.model, config.units, points[i].beta,
                               config.rel_tol);
        } catch (const std::exception& e) {
            points[i].error = e.what();
        }
    };

    if (threads == 0) threads = std::thread::hardware_concurrency();
    if (threads == 0) threads = 1;
    threads = std::min<unsigned>(threads, static_cast<unsigned>(n));

    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) work(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&]() {
                for (std::size_t i = next++; i < n; i = next++) work(i);
            });
        for (std::thread& t : pool) t.join();
    }

    bool any_ok = false;
    for (const SweepPoint& p : points) any_ok = any_ok || p.report.has_value();
    if (!any_ok)
        throw NumericError("run_sweep: every grid point failed; first error: " +
                           points.front().error);
    return points;
}

std::vector<BoundReport> successful_reports(const std::vector<SweepPoint>& points) {
    std::vector<BoundReport> reports;
    reports.reserve(points.size());
    for (const SweepPoint& p : points)
        if (p.report) reports.push_back(*p.report);
    return reports;
}

VerificationSummary verify_chain(const std::vector<BoundReport>& reports) {
    if (reports.empty()) throw DomainError("verify_chain: no reports");

    VerificationSummary summary;
    summary.worst_product_slack = std::numeric_limits<double>::infinity();
    summary.worst_bound_slack = std::numeric_limits<double>::infinity();

    double prev_beta = -std::numeric_limits<double>::infinity();
    double prev_product = std::numeric_limits<double>::infinity();
    for (const BoundReport& r : reports) {
        summary.worst_product_slack = std::min(
            summary.worst_product_slack, (r.product - r.boltzmann) / r.product);
        summary.worst_bound_slack = std::min(
            summary.worst_bound_slack, (r.boltzmann - r.heisenberg) / r.heisenberg);
        if (r.beta > prev_beta && r.product > prev_product * (1.0 + 1e-12))
            summary.product_monotone = false;
        prev_beta = r.beta;
        prev_product = r.product;
    }
    summary.passed = summary.worst_product_slack >= -1e-9 &&
                     summary.worst_bound_slack >= 0.0;
    return summary;
}

std::string to_csv(const std::vector<SweepPoint>& points) {
    std::ostringstream os;
    write_csv(os, points);
    return os.str();
}

void write_csv(std::ostream& os, const std::vector<SweepPoint>& points) {
    os << "beta,temperature,delta_x,delta_p,product,heisenberg_bound,"
          "boltzmann_bound,r,gamma_arg,jensen_slack,sumrule1,sumrule2\n";
    for (const SweepPoint& p : points) {
        if (!p.report) continue;
        const BoundReport& r = *p.report;
        os << format_full(r.beta) << ',' << format_full(r.temperature) << ','
           << format_full(r.delta_x) << ',' << format_full(r.delta_p) << ','
           << format_full(r.product) << ',' << format_full(r.heisenberg) << ','
           << format_full(r.boltzmann) << ',' << format_full(r.r) << ','
           << format_full(r.gamma_arg) << ',' << format_full(r.jensen_slack) << ','
           << format_full(r.sumrule_residuals[0]) << ','
           << format_full(r.sumrule_residuals[1]) << '\n';
    }
}

}  // namespace thermal_bound::sweep
