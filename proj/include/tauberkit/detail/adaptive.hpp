#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include "tauberkit/errors.hpp"

namespace tauberkit {

// Tolerances and budgets for the adaptive integrator.  The integrator stops
// when the accumulated error estimate drops below
//   max(abs_tol, rel_tol * |integral|).
struct QuadratureOptions {
    double rel_tol = 1e-11;
    double abs_tol = 1e-14;
    int max_subdivisions = 20000;
    // When true, failing to meet tolerance throws accuracy_failure; when
    // false, the result is returned with converged == false.
    bool throw_on_failure = true;
};

template <typename Value>
struct QuadratureResult {
    Value value{};
    double error = 0.0;      // conservative absolute error estimate
    bool converged = false;
    long evaluations = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule.  Nodes are the
// positive abscissae on [-1, 1] (the rule is symmetric); node index 7 is 0.
// The embedded Gauss rule uses the odd-index nodes.
inline constexpr double gk_nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double gk_weights_k[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double gk_weights_g[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <typename Value>
struct GKPanelEstimate {
    Value integral{};
    double error = 0.0;
};

inline double component_abs(double v) { return std::fabs(v); }
inline double component_abs(const std::complex<double>& v) { return std::abs(v); }

// One Gauss-Kronrod pass over [a, b].  The error estimate uses the standard
// scaled difference between the Kronrod and embedded Gauss values.
template <typename Value, typename Fn>
GKPanelEstimate<Value> gk15_panel(Fn&& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    Value sum_k = gk_weights_k[7] * f(mid);
    Value sum_g = gk_weights_g[3] * f(mid);
    for (int i = 0; i < 7; ++i) {
        const double dx = half * gk_nodes[i];
        const Value lo = f(mid - dx);
        const Value hi = f(mid + dx);
        sum_k += gk_weights_k[i] * (lo + hi);
        if (i % 2 == 1) sum_g += gk_weights_g[i / 2] * (lo + hi);
    }
    GKPanelEstimate<Value> out;
    out.integral = half * sum_k;
    const double diff = component_abs(Value(half * (sum_k - sum_g)));
    // Empirically sharp rescaling used by QUADPACK-family integrators.
    out.error = diff > 0 ? std::pow(200.0 * diff, 1.5) : 0.0;
    if (!(out.error < diff) || !std::isfinite(out.error)) out.error = diff;
    return out;
}

template <typename Value>
struct AdaptivePanel {
    double a = 0, b = 0;
    Value integral{};
    double error = 0.0;
    bool operator<(const AdaptivePanel& other) const { return error < other.error; }
};

// Worst-panel-first adaptive integration over the union of [pts[i], pts[i+1]].
// `pts` must be strictly increasing; callers use interior breakpoints to mark
// known scale changes (peaks, kinks) so the first pass already resolves them.
template <typename Value, typename Fn>
QuadratureResult<Value> integrate_adaptive(Fn&& f, const std::vector<double>& pts,
                                           const QuadratureOptions& opt = {}) {
    if (pts.size() < 2) throw invalid_input("integrate_adaptive: need at least two breakpoints");
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (!(pts[i] > pts[i - 1]))
            throw invalid_input("integrate_adaptive: breakpoints must be strictly increasing");

    QuadratureResult<Value> res;
    std::priority_queue<AdaptivePanel<Value>> queue;
    Value total{};
    double total_err = 0.0;
    const double span = pts.back() - pts.front();
    // Panels thinner than this are numerically unsplittable; their estimate is
    // kept as-is (prevents spinning on an integrable kink).
    const double min_width = span * 1e-14;
    Value floor_sum{};   // contributions from unsplittable panels
    double floor_err = 0.0;
    int panels = 0;

    auto push = [&](double a, double b) {
        auto est = gk15_panel<Value>(f, a, b);
        res.evaluations += 15;
        AdaptivePanel<Value> p{a, b, est.integral, est.error};
        if (b - a <= min_width) {
            floor_sum += p.integral;
            floor_err += p.error;
        } else {
            total += p.integral;
            total_err += p.error;
            queue.push(p);
        }
        ++panels;
    };

    for (std::size_t i = 1; i < pts.size(); ++i) push(pts[i - 1], pts[i]);

    auto tolerance_met = [&]() {
        const double scale = component_abs(Value(total + floor_sum));
        return total_err + floor_err <= std::max(opt.abs_tol, opt.rel_tol * scale);
    };

    while (!tolerance_met() && !queue.empty() && panels < opt.max_subdivisions) {
        AdaptivePanel<Value> worst = queue.top();
        queue.pop();
        total -= worst.integral;
        total_err -= worst.error;
        const double mid = 0.5 * (worst.a + worst.b);
        push(worst.a, mid);
        push(mid, worst.b);
    }

    res.value = total + floor_sum;
    res.error = total_err + floor_err;
    res.converged = tolerance_met();
    if (!res.converged && opt.throw_on_failure)
        throw accuracy_failure("integrate_adaptive: tolerance not reached (error estimate " +
                               std::to_string(res.error) + " after " + std::to_string(panels) +
                               " panels)");
    return res;
}

template <typename Value, typename Fn>
QuadratureResult<Value> integrate_adaptive(Fn&& f, double a, double b,
                                           const QuadratureOptions& opt = {}) {
    return integrate_adaptive<Value>(static_cast<Fn&&>(f), std::vector<double>{a, b}, opt);
}

}  // namespace detail

// The adaptive integrator is public API: transforms, kernels and scans all
// build on it, and tests drive it directly.
using detail::integrate_adaptive;

namespace detail {

// Merge caller breakpoints into [a, b], dropping points outside the interval.
inline std::vector<double> clip_breakpoints(double a, double b, std::vector<double> extra) {
    std::vector<double> pts{a};
    std::sort(extra.begin(), extra.end());
    for (double x : extra)
        if (x > a && x < b && (pts.empty() || x > pts.back() * (1 + 1e-15) || x > pts.back() + 1e-300))
            pts.push_back(x);
    pts.push_back(b);
    // Deduplicate near-coincident points.
    std::vector<double> out;
    for (double x : pts)
        if (out.empty() || x - out.back() > 1e-15 * (std::fabs(x) + std::fabs(out.back()) + 1))
            out.push_back(x);
    if (out.size() < 2 || out.back() < b) out = {a, b};
    return out;
}

}  // namespace detail
}  // namespace tauberkit
