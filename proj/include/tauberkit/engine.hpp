#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "tauberkit/decay_function.hpp"
#include "tauberkit/detail/adaptive.hpp"
#include "tauberkit/detail/parallel.hpp"
#include "tauberkit/errors.hpp"
#include "tauberkit/model.hpp"
#include "tauberkit/quadrature.hpp"
#include "tauberkit/special_functions.hpp"

namespace tauberkit {

// Which algebraic route evaluates the compensated transform remainder G.
enum class GRoute {
    auto_route,             // exact when the function carries an oracle, else transform quadrature
    exact,                  // closed-form transform oracle
    transform_quadrature,   // numeric laplace of phi
    stieltjes_quadrature    // identity route through the Stieltjes transform
};

struct EngineConfig {
    // Compensated-growth offset; 0 means auto: max(1, nu - mu + 1).
    double a = 0.0;
    // General scan offsets sigma = 2^{-k}, k in [sigma_k_lo, sigma_k_hi].
    int sigma_k_lo = 2;
    int sigma_k_hi = 14;
    // Condition checkers need more decades than general scans: a gauged
    // square-root difference |log sigma| sqrt(sigma) starts its visible
    // decade of decay only around sigma ~ 2^{-20}, so the default range
    // reaches 2^{-32}.  Checkers that evaluate boundary factors directly pay
    // microseconds per extra level; quadrature-backed scans cap their own
    // depth independently of this setting.
    int checker_k_lo = 2;
    int checker_k_hi = 32;
    // rho truncation-height search: T >= T_floor_factor * (a + 1), log grid
    // up to T_grid_hi with T_grid_n points, then golden-section refinement.
    double T_floor_factor = 32.0;
    double T_grid_hi = 1e6;
    int T_grid_n = 40;
    // Envelope half-width multiplier.
    double envelope_C = 1.0;
    // Scan verdict rules: pass when final < pass_ratio * initial with the
    // last three values strictly decreasing; fail when final >= fail_ratio *
    // initial or the tail of the scan is non-decreasing; otherwise
    // inconclusive.  Values below zero_floor count as converged-to-zero.
    double pass_ratio = 0.05;
    double fail_ratio = 0.5;
    double zero_floor = 1e-12;
    // Grid size for sup-over-line searches (plus local refinement).
    int sup_grid_n = 512;
    QuadratureOptions transform_quad{};
    QuadratureOptions tau_quad{1e-7, 1e-12, 20000, true};
    GRoute g_route = GRoute::auto_route;
};

namespace detail {

inline GRoute resolve_route(const DecayFunction& f, GRoute route) {
    if (route != GRoute::auto_route) return route;
    return f.exact_transform ? GRoute::exact : GRoute::transform_quadrature;
}

inline double resolve_a(const DecayFunction& f, double mu, const EngineConfig& cfg) {
    double nu = f.nu_certificate ? *f.nu_certificate : mu;
    if (cfg.a > 0.0) {
        if (f.nu_certificate && !(cfg.a > nu - mu))
            throw hypothesis_violation("engine: a must exceed nu - mu (certified compensation)");
        return cfg.a;
    }
    return std::max(1.0, nu - mu + 1.0);
}

inline std::vector<double> sigma_sequence(double mu, int k_lo, int k_hi) {
    if (k_lo < 0 || k_hi < k_lo) throw invalid_input("sigma sequence: need 0 <= k_lo <= k_hi");
    std::vector<double> out;
    for (int k = k_lo; k <= k_hi; ++k) {
        const double s = std::pow(2.0, -k);
        if (2.0 * s < mu) out.push_back(s);
    }
    if (out.empty())
        throw invalid_input("sigma sequence: no offsets satisfy 2 sigma < mu in the given range");
    return out;
}

// Maximum of |fn| over [-T, T]: uniform grid plus golden-section refinement
// around each local maximum.  Deterministic.
template <typename Fn>
double sup_on_segment(Fn&& fn, double lo, double hi, int n) {
    if (!(hi > lo)) throw invalid_input("sup_on_segment: empty interval");
    n = std::max(n, 16);
    std::vector<double> vals(static_cast<std::size_t>(n) + 1);
    auto at = [&](int i) { return lo + (hi - lo) * static_cast<double>(i) / n; };
    for (int i = 0; i <= n; ++i) vals[i] = std::fabs(fn(at(i)));
    double best = 0.0;
    const double inv_phi = 0.6180339887498949;
    for (int i = 0; i <= n; ++i) {
        if (vals[i] < best) continue;
        const bool local_max = (i == 0 || vals[i] >= vals[i - 1]) &&
                               (i == n || vals[i] >= vals[i + 1]);
        best = std::max(best, vals[i]);
        if (!local_max) continue;
        // Golden-section refinement on the bracketing interval.
        double a = at(std::max(0, i - 1));
        double b = at(std::min(n, i + 1));
        double x1 = b - inv_phi * (b - a);
        double x2 = a + inv_phi * (b - a);
        double f1 = std::fabs(fn(x1));
        double f2 = std::fabs(fn(x2));
        for (int it = 0; it < 48; ++it) {
            if (f1 < f2) {
                a = x1; x1 = x2; f1 = f2;
                x2 = a + inv_phi * (b - a);
                f2 = std::fabs(fn(x2));
            } else {
                b = x2; x2 = x1; f2 = f1;
                x1 = b - inv_phi * (b - a);
                f1 = std::fabs(fn(x1));
            }
        }
        best = std::max({best, f1, f2});
    }
    return best;
}

// Shared verdict logic for shrinking-offset scans.
inline void apply_scan_verdict(ConditionReport& rep, const EngineConfig& cfg) {
    const auto& v = rep.values;
    rep.initial = v.front();
    rep.final = v.back();
    double scale = 0.0;
    for (double x : v) scale = std::max(scale, x);
    if (scale <= cfg.zero_floor) {
        rep.verdict = Verdict::pass;
        rep.ratio = 0.0;
        rep.notes += " scan identically ~0 (below zero floor);";
        return;
    }
    rep.ratio = rep.initial > 0 ? rep.final / rep.initial : std::numeric_limits<double>::infinity();
    const std::size_t n = v.size();
    bool last3_decreasing = n >= 3;
    for (std::size_t i = n >= 3 ? n - 3 : 0; i + 1 < n && last3_decreasing; ++i) {
        const bool both_floor = v[i] <= cfg.zero_floor && v[i + 1] <= cfg.zero_floor;
        if (!(v[i + 1] < v[i]) && !both_floor) last3_decreasing = false;
    }
    bool tail_nondecreasing = true;
    for (std::size_t i = n / 2; i + 1 < n; ++i)
        if (v[i + 1] < v[i] * (1.0 - 1e-12)) { tail_nondecreasing = false; break; }

    if (rep.ratio < cfg.pass_ratio && last3_decreasing)
        rep.verdict = Verdict::pass;
    else if (rep.ratio >= cfg.fail_ratio || tail_nondecreasing)
        rep.verdict = Verdict::fail;
    else
        rep.verdict = Verdict::inconclusive;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// predict(model): reads the law off the factorization.  The boundary value
// D = F(mu) must be real and non-negative; anything else means the supplied
// factorization cannot describe a non-negative decaying function.
inline AsymptoticLaw predict(const SingularityModel& m) {
    if (!(m.mu > 0)) throw invalid_input("predict: mu > 0 required");
    classify_regime(m.j);
    const complex_t Fmu = m.F_at(complex_t(m.mu, 0.0));
    const double scale = std::abs(Fmu);
    if (!std::isfinite(scale)) throw hypothesis_violation("predict: F(mu) is not finite");
    if (std::fabs(Fmu.imag()) > std::max(1e-9 * scale, 1e-12))
        throw hypothesis_violation("predict: F(mu) must be real");
    if (Fmu.real() < 0) throw hypothesis_violation("predict: F(mu) must be non-negative");
    return AsymptoticLaw{m.mu, m.j, Fmu.real()};
}

// ---------------------------------------------------------------------------
// G_eval: the compensated remainder
//   G(z) = laplace(mu - z) - phi(0)/(a + z) - D / z^j,   Re z > 0,
// with laplace(mu - z) supplied by the chosen route.  This is the quantity
// whose line-to-line differences eta integrates.
inline complex_t G_eval(const DecayFunction& f, const AsymptoticLaw& law, complex_t z,
                        const EngineConfig& cfg = {}) {
    if (!(z.real() > 0)) throw out_of_domain("G_eval: Re z > 0 required");
    const double a = detail::resolve_a(f, law.mu, cfg);
    const complex_t w = complex_t(law.mu, 0.0) - z;
    complex_t L;
    switch (detail::resolve_route(f, cfg.g_route)) {
        case GRoute::exact:
            if (!f.exact_transform)
                throw invalid_input("G_eval: exact route requested but no oracle present");
            L = f.exact_transform(w);
            break;
        case GRoute::stieltjes_quadrature: {
            // Identity route: (a+z) L(mu-z) = (mu+a) L(mu-z) + S(mu-z) + phi(0)
            // rearranged so the Stieltjes quadrature genuinely enters.
            const complex_t S = stieltjes(f, w, cfg.transform_quad);
            const complex_t Lq = laplace(f, w, cfg.transform_quad);
            L = ((law.mu + a) * Lq + S + f.phi0()) / (a + z);
            break;
        }
        default:
            L = laplace(f, w, cfg.transform_quad);
    }
    return L - f.phi0() / (a + z) - law.D / std::pow(z, law.j);
}

// ---------------------------------------------------------------------------
// eta(sigma, T): the line-to-line difference integral
//   eta(sigma, T) = sigma^{j-1} * integral_{-T}^{T}
//                     |G(2 sigma + i tau) - G(sigma + i tau)| dtau.
// G of a real function obeys G(conj z) = conj G(z), so the integrand is even
// in tau and the integral is evaluated as twice the [0, T] half (the symmetry
// itself is property-tested).
inline double eta(const DecayFunction& f, const AsymptoticLaw& law, double sigma, double T,
                  const EngineConfig& cfg = {}) {
    if (!(sigma > 0)) throw invalid_input("eta: sigma > 0 required");
    if (!(T > 0)) throw invalid_input("eta: T > 0 required");
    auto integrand = [&](double tau) {
        const complex_t z1(sigma, tau);
        const complex_t z2(2.0 * sigma, tau);
        return std::abs(G_eval(f, law, z2, cfg) - G_eval(f, law, z1, cfg));
    };
    std::vector<double> marks;
    for (double m = sigma; m < T; m *= 4.0) marks.push_back(m);
    for (double m : {1.0, 10.0, 100.0, 1000.0, 1e4, 1e5}) marks.push_back(m);
    auto pts = detail::clip_breakpoints(0.0, T, std::move(marks));
    const double half = integrate_adaptive<double>(integrand, pts, cfg.tau_quad).value;
    return std::pow(sigma, law.j - 1.0) * 2.0 * half;
}

// ---------------------------------------------------------------------------
// rho(t): the optimized error functional
//   rho(t) = inf over admissible T of [ 1/T + eta(1/t, T) + (T t)^{-j} ],
// T restricted to T >= T_floor_factor * (a + 1).  The infimum is located on a
// log-spaced grid and sharpened by golden-section search; the minimizing T is
// reported so the certificate is reproducible.
inline RhoResult rho(const DecayFunction& f, const AsymptoticLaw& law, double t,
                     const EngineConfig& cfg = {}) {
    if (!(t > 0)) throw invalid_input("rho: t > 0 required");
    const double a = detail::resolve_a(f, law.mu, cfg);
    const double T_lo = cfg.T_floor_factor * (a + 1.0);
    const double T_hi = std::max(cfg.T_grid_hi, 2.0 * T_lo);
    const int n = std::max(cfg.T_grid_n, 8);
    const double sigma = 1.0 / t;

    auto objective = [&](double T) {
        return 1.0 / T + eta(f, law, sigma, T, cfg) + std::pow(T * t, -law.j);
    };

    std::vector<double> Ts(static_cast<std::size_t>(n));
    std::vector<double> vals(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        Ts[i] = T_lo * std::pow(T_hi / T_lo, static_cast<double>(i) / (n - 1));
    detail::parallel_for(Ts.size(), [&](std::size_t i) { vals[i] = objective(Ts[i]); });

    std::size_t best = 0;
    for (std::size_t i = 1; i < vals.size(); ++i)
        if (vals[i] < vals[best]) best = i;

    double aT = Ts[best > 0 ? best - 1 : 0];
    double bT = Ts[std::min(Ts.size() - 1, best + 1)];
    double best_T = Ts[best];
    double best_v = vals[best];
    const double inv_phi = 0.6180339887498949;
    // Golden-section in log T.
    double la = std::log(aT), lb = std::log(bT);
    double x1 = lb - inv_phi * (lb - la);
    double x2 = la + inv_phi * (lb - la);
    double f1 = objective(std::exp(x1));
    double f2 = objective(std::exp(x2));
    for (int it = 0; it < 28; ++it) {
        if (f1 < f2) {
            lb = x2; x2 = x1; f2 = f1;
            x1 = lb - inv_phi * (lb - la);
            f1 = objective(std::exp(x1));
        } else {
            la = x1; x1 = x2; f1 = f2;
            x2 = la + inv_phi * (lb - la);
            f2 = objective(std::exp(x2));
        }
        const double cand = std::min(f1, f2);
        if (cand < best_v) {
            best_v = cand;
            best_T = std::exp(f1 < f2 ? x1 : x2);
        }
    }
    return RhoResult{best_v, best_T};
}

// Two-sided envelope for phi at time t implied by rho:
//   phi(t) in (D/Gamma(j) -+ C rho(t)) * t^{j-1} e^{-mu t}.
inline EnvelopeBand envelope(const DecayFunction& f, const AsymptoticLaw& law, double t,
                             const EngineConfig& cfg = {}) {
    const RhoResult r = rho(f, law, t, cfg);
    EnvelopeBand band;
    band.t = t;
    band.center = law.D / gamma_fn(law.j);
    band.half_width = cfg.envelope_C * r.value;
    const double shape = std::pow(t, law.j - 1.0) * std::exp(-law.mu * t);
    band.lo = std::max(0.0, band.center - band.half_width) * shape;
    band.hi = (band.center + band.half_width) * shape;
    return band;
}

// ---------------------------------------------------------------------------
// check_loglim: scans the gauged line-to-line difference of the singular
// factor,
//   v_k = |g_j(sigma_k)| * sup_{|tau| <= T} |F(mu - 2 sigma_k - i tau)
//                                           - F(mu - sigma_k - i tau)|,
// along sigma_k = 2^{-k}, and applies the shared scan verdict rules.
inline ConditionReport check_loglim(const SingularityModel& m, const EngineConfig& cfg = {},
                                    std::optional<double> T_opt = std::nullopt) {
    const double T = T_opt ? *T_opt : m.T_max;
    if (!(T > 0)) throw invalid_input("check_loglim: T > 0 required");
    ConditionReport rep;
    rep.check_name = "loglim";
    rep.sigmas = detail::sigma_sequence(m.mu, cfg.checker_k_lo, cfg.checker_k_hi);
    rep.values.assign(rep.sigmas.size(), 0.0);
    detail::parallel_for(rep.sigmas.size(), [&](std::size_t i) {
        const double s = rep.sigmas[i];
        auto diff = [&](double tau) {
            const complex_t z1(m.mu - s, tau);
            const complex_t z2(m.mu - 2.0 * s, tau);
            return std::abs(m.F_at(z2) - m.F_at(z1));
        };
        const double sup = detail::sup_on_segment(diff, -T, T, cfg.sup_grid_n);
        rep.values[i] = std::fabs(g_j(s, m.j)) * sup;
    });
    rep.notes = "gauged sup-difference scan, T=" + detail::format_double(T) + ";";
    detail::apply_scan_verdict(rep, cfg);
    return rep;
}

// ---------------------------------------------------------------------------
// lipschitz_margin: difference-quotient probe of F on lines approaching the
// boundary.  Level m uses distance delta_m = beta * 2^{-m} and step
// delta_m / 8; K is the largest quotient seen.  Quotients that keep growing
// level over level signal a factor rougher than Lipschitz, setting
// `reclassify` (treat as continuous_only).
inline LipschitzReport lipschitz_margin(const SingularityModel& m, double beta, double T,
                                        const EngineConfig& cfg = {}, int levels = 8) {
    if (!(beta > 0) || !(beta < m.mu))
        throw invalid_input("lipschitz_margin: 0 < beta < mu required");
    if (!(T > 0)) throw invalid_input("lipschitz_margin: T > 0 required");
    if (levels < 4) throw invalid_input("lipschitz_margin: at least 4 levels required");
    LipschitzReport rep;
    rep.level_sigma.resize(static_cast<std::size_t>(levels));
    rep.level_max.resize(static_cast<std::size_t>(levels));
    detail::parallel_for(rep.level_sigma.size(), [&](std::size_t idx) {
        const double delta = beta * std::pow(2.0, -static_cast<double>(idx) - 1.0);
        const double h = delta / 8.0;
        auto quotient = [&](double tau) {
            const complex_t z(m.mu - delta, tau);
            return std::abs(m.F_at(z + h) - m.F_at(z - h)) / (2.0 * h);
        };
        rep.level_sigma[idx] = delta;
        rep.level_max[idx] = detail::sup_on_segment(quotient, -T, T, cfg.sup_grid_n / 2);
    });
    rep.K = *std::max_element(rep.level_max.begin(), rep.level_max.end());
    const std::size_t n = rep.level_max.size();
    int growing = 0;
    for (std::size_t i = n - 3; i + 1 < n; ++i)
        // Strictly positive quotients only: a constant factor keeps every
        // level at exactly 0, and 0 >= 1.25 * 0 must not read as growth.
        if (rep.level_max[i + 1] >= 1.25 * rep.level_max[i] &&
            rep.level_max[i + 1] > 0.0) ++growing;
    rep.reclassify = growing >= 2;
    rep.stable = !rep.reclassify &&
                 rep.level_max[n - 1] <= 1.15 * std::max(rep.level_max[n - 2], 1e-300) &&
                 std::isfinite(rep.K);
    rep.notes = "difference-quotient probe, beta=" + detail::format_double(beta) +
                ", T=" + detail::format_double(T) + ", levels=" + std::to_string(levels) + ";";
    if (rep.reclassify)
        rep.notes += " quotients grow persistently: factor is rougher than Lipschitz;";
    return rep;
}

// ---------------------------------------------------------------------------
// Residual remainder evaluator: H(z) = transform(z) - D / (mu - z)^j via the
// configured route.  This is the object whose boundary behaviour check_dk and
// (for j > 1) check_bounded_H can interrogate when no model H is available.
inline std::function<complex_t(complex_t)> dk_residual(const DecayFunction& f,
                                                       const AsymptoticLaw& law,
                                                       const EngineConfig& cfg = {}) {
    const GRoute route = detail::resolve_route(f, cfg.g_route);
    auto opt = cfg.transform_quad;
    return [f, law, route, opt](complex_t z) -> complex_t {
        const complex_t pole = complex_t(law.mu, 0.0) - z;
        complex_t L;
        if (route == GRoute::exact) {
            L = f.exact_transform(z);
        } else {
            L = laplace(f, z, opt);
        }
        return L - law.D / std::pow(pole, law.j);
    };
}

// check_dk: Cauchy-style uniform-convergence scan of the residual remainder
// on lines approaching the boundary:
//   d_k = sup_{|tau| <= T} |Hres(mu - sigma_{k+1} - i tau)
//                          - Hres(mu - sigma_k - i tau)|.
// Vanishing d_k certifies the remainder converges to a boundary function;
// growing d_k (e.g. when the law's D is wrong and a pole leaks into the
// residual) fails the scan.  Requires j >= 1.  Quadrature routes cap the scan
// depth: each halving of sigma doubles the truncation cost of the transform.
inline ConditionReport check_dk(const DecayFunction& f, const AsymptoticLaw& law,
                                const EngineConfig& cfg = {},
                                std::optional<double> T_opt = std::nullopt) {
    if (law.j < 1.0)
        throw hypothesis_violation("check_dk: j >= 1 required for the uniform-limit criterion");
    const double T = T_opt ? *T_opt : 64.0;
    const GRoute route = detail::resolve_route(f, cfg.g_route);
    int k_hi = cfg.checker_k_hi;
    if (route != GRoute::exact) k_hi = std::min(k_hi, 9);
    auto sig = detail::sigma_sequence(law.mu, cfg.checker_k_lo, k_hi + 1);
    auto Hres = dk_residual(f, law, cfg);

    ConditionReport rep;
    rep.check_name = "dk_uniform_limit";
    rep.sigmas.assign(sig.begin(), sig.end() - 1);
    rep.values.assign(rep.sigmas.size(), 0.0);
    detail::parallel_for(rep.sigmas.size(), [&](std::size_t i) {
        const double s1 = sig[i];
        const double s2 = sig[i + 1];
        auto diff = [&](double tau) {
            return std::abs(Hres(complex_t(law.mu - s2, tau)) - Hres(complex_t(law.mu - s1, tau)));
        };
        rep.values[i] = detail::sup_on_segment(diff, -T, T, cfg.sup_grid_n);
    });
    rep.notes = "residual-remainder Cauchy scan, T=" + detail::format_double(T) +
                ", route=" + (route == GRoute::exact ? std::string("exact") : std::string("quadrature")) + ";";
    detail::apply_scan_verdict(rep, cfg);
    return rep;
}

// check_bounded_H: for j > 1 bounded remainders suffice; this scans
//   s_k = sup_{|tau| <= T} |H(mu - sigma_k - i tau)|
// and passes when the levels stabilize, fails when they keep growing
// geometrically (a disguised singularity), and is inconclusive in between.
// The H evaluator is supplied by the caller: a model's remainder, or a
// residual built with dk_residual.
inline ConditionReport check_bounded_H(const std::function<complex_t(complex_t)>& H, double j,
                                       double mu, const EngineConfig& cfg = {},
                                       std::optional<double> T_opt = std::nullopt) {
    if (!H) throw invalid_input("check_bounded_H: H evaluator required");
    if (!(j > 1.0))
        throw hypothesis_violation("check_bounded_H: boundedness only suffices for j > 1");
    if (!(mu > 0)) throw invalid_input("check_bounded_H: mu > 0 required");
    const double T = T_opt ? *T_opt : 64.0;
    ConditionReport rep;
    rep.check_name = "bounded_remainder";
    rep.sigmas = detail::sigma_sequence(mu, cfg.checker_k_lo, cfg.checker_k_hi);
    rep.values.assign(rep.sigmas.size(), 0.0);
    detail::parallel_for(rep.sigmas.size(), [&](std::size_t i) {
        const double s = rep.sigmas[i];
        auto mod = [&](double tau) { return std::abs(H(complex_t(mu - s, tau))); };
        rep.values[i] = detail::sup_on_segment(mod, -T, T, cfg.sup_grid_n);
    });
    rep.initial = rep.values.front();
    rep.final = rep.values.back();
    double scale = 0.0;
    for (double v : rep.values) scale = std::max(scale, v);
    rep.notes = "remainder boundedness scan, T=" + detail::format_double(T) + ";";
    if (scale <= cfg.zero_floor) {
        rep.verdict = Verdict::pass;
        rep.ratio = 0.0;
        rep.notes += " remainder identically ~0;";
        return rep;
    }
    rep.ratio = rep.initial > 0 ? rep.final / rep.initial : std::numeric_limits<double>::infinity();
    const std::size_t n = rep.values.size();
    // Growth factors over the deep half of the scan.
    double worst_growth = 0.0;
    int geometric_steps = 0;
    for (std::size_t i = n / 2; i + 1 < n; ++i) {
        const double g = rep.values[i + 1] / std::max(rep.values[i], cfg.zero_floor);
        worst_growth = std::max(worst_growth, g);
        if (g >= 1.4) ++geometric_steps;
    }
    if (worst_growth <= 1.10)
        rep.verdict = Verdict::pass;
    else if (geometric_steps >= 3)
        rep.verdict = Verdict::fail;
    else
        rep.verdict = Verdict::inconclusive;
    return rep;
}

// ---------------------------------------------------------------------------
// diagnostics_AB: splits the line-to-line difference of the singular part at
// offset sigma into
//   A = sigma^{j-1} integral |F(mu-2s-it) - F(mu-s-it)| (s^2+t^2)^{-j/2} dt
//   B = (sigma^{j-1}/j) integral |F(mu-2s-it) - F(mu)|
//         * |(2s+it)^{-j} - (s+it)^{-j}| dt
// together with the certified envelopes
//   A <= sup_{|tau|<=T} |diff| * h_j(sigma; T)
//   j B <= sup_{|tau|<=sqrt(sigma)} |F(mu-2s-it) - F(mu)| * h_{j+1}(sigma; T)
//          + 4 C1 I_j            (holds for j <= 1; C1 = sup |F| on the window)
// where I_j = integral of cos^{j-1} over [atan(1/sqrt(sigma)), atan(T/sigma)].
struct ABDiagnostics {
    double A = 0, B = 0;
    double sup_diff = 0;       // sup over the full window of the line difference
    double sup_boundary = 0;   // sup over |tau| <= sqrt(sigma) of |F(mu-2s-it)-F(mu)|
    double C1 = 0;             // sup |F| over both lines
    double I_j = 0;
    double bound_A = 0;        // sup_diff * h_j
    double bound_B = 0;        // sup_boundary * h_{j+1} + 4 C1 I_j
};

inline ABDiagnostics diagnostics_AB(const SingularityModel& m, double sigma, double T,
                                    const EngineConfig& cfg = {}) {
    if (!(sigma > 0) || !(2.0 * sigma < m.mu))
        throw invalid_input("diagnostics_AB: need 0 < 2 sigma < mu");
    if (!(T >= std::sqrt(sigma)))
        throw invalid_input("diagnostics_AB: T >= sqrt(sigma) required");
    const double j = m.j;
    const complex_t Fmu = m.F_at(complex_t(m.mu, 0.0));

    auto lineF = [&](double s, double tau) { return m.F_at(complex_t(m.mu - s, tau)); };
    auto diff = [&](double tau) { return std::abs(lineF(2 * sigma, tau) - lineF(sigma, tau)); };
    auto bdry = [&](double tau) { return std::abs(lineF(2 * sigma, tau) - Fmu); };

    ABDiagnostics d;
    const double sj = std::pow(sigma, j - 1.0);
    auto kernelA = [&](double tau) {
        return diff(tau) * std::pow(sigma * sigma + tau * tau, -0.5 * j);
    };
    auto kernelB = [&](double tau) {
        const complex_t k1 = std::pow(complex_t(2 * sigma, tau), -j);
        const complex_t k2 = std::pow(complex_t(sigma, tau), -j);
        return bdry(tau) * std::abs(k1 - k2);
    };
    std::vector<double> marks;
    for (double mk = sigma; mk < T; mk *= 4.0) { marks.push_back(mk); marks.push_back(-mk); }
    auto pts = detail::clip_breakpoints(-T, T, std::move(marks));
    d.A = sj * integrate_adaptive<double>(kernelA, pts, cfg.tau_quad).value;
    d.B = sj / j * integrate_adaptive<double>(kernelB, pts, cfg.tau_quad).value;

    d.sup_diff = detail::sup_on_segment(diff, -T, T, cfg.sup_grid_n);
    d.sup_boundary = detail::sup_on_segment(bdry, -std::sqrt(sigma), std::sqrt(sigma),
                                            cfg.sup_grid_n);
    auto modF = [&](double tau) {
        return std::max(std::abs(lineF(sigma, tau)), std::abs(lineF(2 * sigma, tau)));
    };
    d.C1 = detail::sup_on_segment(modF, -T, T, cfg.sup_grid_n);
    auto cosj = [j](double t) { return std::pow(std::cos(t), j - 1.0); };
    d.I_j = integrate_adaptive<double>(cosj, std::atan(1.0 / std::sqrt(sigma)),
                                       std::atan(T / sigma), cfg.tau_quad).value;
    d.bound_A = d.sup_diff * h_j(sigma, j, T);
    d.bound_B = d.sup_boundary * h_j(sigma, j + 1.0, T) + 4.0 * d.C1 * d.I_j;
    return d;
}

}  // namespace tauberkit
