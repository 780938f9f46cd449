#include "thermal_bound/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>

namespace thermal_bound::quadrature {

namespace {

constexpr long kEvaluationBudget = 1'000'000;
constexpr double kTinyValue = 1e-300;  // absolute floor for relative criteria

// 15-point Kronrod nodes (positive half) with the embedded 7-point Gauss
// rule; classical QUADPACK values.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Panel {
    double a = 0.0;
    double b = 0.0;
    double value = 0.0;  // Kronrod estimate
    double error = 0.0;  // |Kronrod - Gauss|
    long seq = 0;        // insertion order, for deterministic tie-breaking
};

struct PanelWorse {
    bool operator()(const Panel& lhs, const Panel& rhs) const {
        if (lhs.error != rhs.error) return lhs.error < rhs.error;
        return lhs.seq > rhs.seq;
    }
};

using PanelHeap = std::priority_queue<Panel, std::vector<Panel>, PanelWorse>;

class Evaluator {
  public:
    Evaluator(const std::function<double(double)>& f, long budget)
        : f_(f), budget_(budget) {}

    double operator()(double w) {
        if (++count_ > budget_) over_budget_ = true;
        const double v = f_(w);
        if (std::isnan(v))
            throw EvaluatorError("integrate_halfline: evaluator returned NaN", w);
        return v;
    }

    long count() const { return count_; }
    bool over_budget() const { return over_budget_; }

  private:
    const std::function<double(double)>& f_;
    long budget_;
    long count_ = 0;
    bool over_budget_ = false;
};

Panel gk15(Evaluator& f, double a, double b, long seq) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double kronrod = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double fsum = f(center - dx) + f(center + dx);
        kronrod += kWgk[j] * fsum;
        if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
    }
    kronrod *= half;
    gauss *= half;

    return {a, b, kronrod, std::fabs(kronrod - gauss), seq};
}

double tail_integral(const IntegrandSpec& spec, double omega_max) {
    // int_{omega_max}^inf A / w^k dw = A / ((k-1) omega_max^(k-1))
    return spec.tail_coefficient / ((spec.tail_exponent - 1.0) *
                                    std::pow(omega_max, spec.tail_exponent - 1.0));
}

void validate(const IntegrandSpec& spec, double rel_tol) {
    if (!spec.evaluator)
        throw DomainError("integrate_halfline: evaluator is empty");
    if (!(spec.tail_exponent > 1.0) || !std::isfinite(spec.tail_exponent))
        throw DomainError("integrate_halfline: tail_exponent must be > 1");
    if (!(spec.tail_start > 0.0) || !std::isfinite(spec.tail_start))
        throw DomainError("integrate_halfline: tail_start must be positive");
    if (!std::isfinite(spec.tail_coefficient))
        throw DomainError("integrate_halfline: tail_coefficient must be finite");
    if (!std::isfinite(spec.zero_limit))
        throw DomainError("integrate_halfline: zero_limit must be finite");
    if (!(rel_tol > 1e-14) || !(rel_tol < 1e-2))
        throw DomainError("integrate_halfline: rel_tol must lie in (1e-14, 1e-2)");
}

}  // namespace

QuadratureResult integrate_halfline(const IntegrandSpec& spec, double rel_tol) {
    validate(spec, rel_tol);

    std::vector<double> features;
    for (double w : spec.breakpoints)
        if (std::isfinite(w) && w > 0.0) features.push_back(w);
    std::sort(features.begin(), features.end());
    features.erase(std::unique(features.begin(), features.end()), features.end());

    Evaluator f(spec.evaluator, kEvaluationBudget);

    // Characteristic magnitude of the integrand: sampled on a coarse log
    // grid plus the declared features. Only used to scale the zero-limit
    // agreement test below.
    double scale = std::fabs(spec.zero_limit);
    for (int k = 0; k <= 6; ++k)
        scale = std::max(scale, std::fabs(f(spec.tail_start * std::pow(10.0, -k))));
    for (double w : features)
        if (w < spec.tail_start) scale = std::max(scale, std::fabs(f(w)));

    // Shrink eps0 until the evaluator has settled onto its analytic limit;
    // [0, eps0] then contributes eps0 * zero_limit.
    double eps0 = spec.tail_start * 1e-4;
    if (!features.empty()) eps0 = std::min(eps0, 0.5 * features.front());
    {
        const double settle_tol = rel_tol * std::max(scale, kTinyValue);
        int shrinks = 0;
        while (std::fabs(f(eps0) - spec.zero_limit) > settle_tol) {
            eps0 /= 8.0;
            if (++shrinks > 150)
                throw NumericError(
                    "integrate_halfline: evaluator does not approach zero_limit",
                    spec.zero_limit, 0.0, eps0);
        }
    }

    // Initial panels: [eps0, tail_start] split at the declared features
    // plus decade marks, so integrands spanning many scales start from a
    // sane partition.
    std::vector<double> bounds;
    bounds.push_back(eps0);
    for (int k = 6; k >= 1; --k) {
        const double w = spec.tail_start * std::pow(10.0, -k);
        if (w > eps0) bounds.push_back(w);
    }
    for (double w : features)
        if (w > eps0 && w < spec.tail_start) bounds.push_back(w);
    bounds.push_back(spec.tail_start);
    std::sort(bounds.begin(), bounds.end());
    bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

    PanelHeap heap;
    long seq = 0;
    double value_sum = 0.0;
    double error_sum = 0.0;
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
        Panel p = gk15(f, bounds[i], bounds[i + 1], seq++);
        value_sum += p.value;
        error_sum += p.error;
        heap.push(p);
    }

    double omega_max = spec.tail_start;
    const double head = eps0 * spec.zero_limit;

    while (true) {
        const double tail = tail_integral(spec, omega_max);
        const double value_est = head + value_sum + tail;
        const double target = rel_tol * std::max(std::fabs(value_est), kTinyValue);
        const bool tail_ok = std::fabs(tail) <= 0.5 * target;
        const bool error_ok = error_sum <= 0.5 * target;
        if (tail_ok && error_ok) break;

        if (f.over_budget())
            throw NumericError("integrate_halfline: evaluation budget exhausted",
                               value_est, eps0, omega_max);

        if (!tail_ok) {
            // Push the analytic tail outward: integrate one more octave.
            Panel p = gk15(f, omega_max, 2.0 * omega_max, seq++);
            value_sum += p.value;
            error_sum += p.error;
            heap.push(p);
            omega_max *= 2.0;
            if (!std::isfinite(omega_max))
                throw NumericError("integrate_halfline: tail does not converge",
                                   value_est, eps0, omega_max);
            continue;
        }

        // Split the worst panel.
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a) || !(mid < worst.b)) {
            // Panel already at ulp width; its error estimate is as good as
            // it gets. Drop the error from further consideration.
            error_sum -= worst.error;
            worst.error = 0.0;
            heap.push(worst);
            continue;
        }
        Panel left = gk15(f, worst.a, mid, seq++);
        Panel right = gk15(f, mid, worst.b, seq++);
        value_sum += left.value + right.value - worst.value;
        error_sum += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Recompute the totals in left-to-right order: the result must not
    // depend on the incremental update sequence above.
    std::vector<Panel> panels;
    panels.reserve(heap.size());
    while (!heap.empty()) {
        panels.push_back(heap.top());
        heap.pop();
    }
    std::sort(panels.begin(), panels.end(),
              [](const Panel& lhs, const Panel& rhs) { return lhs.a < rhs.a; });
    double segments = 0.0;
    double error = 0.0;
    for (const Panel& p : panels) {
        segments += p.value;
        error += p.error;
    }

    QuadratureResult result;
    result.tail_contribution = tail_integral(spec, omega_max);
    result.omega_max = omega_max;
    result.value = head + segments + result.tail_contribution;
    result.abs_error_estimate = error + std::fabs(result.tail_contribution);
    result.evaluations = f.count();
    return result;
}

}  // namespace thermal_bound::quadrature
