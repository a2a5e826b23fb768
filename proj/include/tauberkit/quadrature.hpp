#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "tauberkit/decay_function.hpp"
#include "tauberkit/detail/adaptive.hpp"
#include "tauberkit/errors.hpp"

namespace tauberkit {

using complex_t = std::complex<double>;

namespace detail {

// (e^w - 1) / w and (e^w - 1 - w) / w^2 with series fallbacks: the building
// blocks for exact integration of e^{z t} against piecewise-linear data.
inline complex_t expm1_div(complex_t w) {
    if (std::abs(w) < 1e-4) {
        return 1.0 + w * (0.5 + w * (1.0 / 6.0 + w * (1.0 / 24.0 + w / 120.0)));
    }
    return (std::exp(w) - 1.0) / w;
}

inline complex_t expm1m_div2(complex_t w) {
    if (std::abs(w) < 1e-3) {
        return 0.5 + w * (1.0 / 6.0 + w * (1.0 / 24.0 + w * (1.0 / 120.0 + w / 720.0)));
    }
    return (std::exp(w) - 1.0 - w) / (w * w);
}

// ln of the rounding threshold to 0.0: a non-negative double that evaluates
// to exactly 0.0 is below half the smallest subnormal, so this is a valid
// upper bound for its logarithm.
inline constexpr double log_subnormal_floor = -745.2;

// Upper bound for ln phi(t): the log evaluator when present (exact), else the
// log of the evaluated value, with the subnormal floor standing in for values
// that rounded to zero.
inline double log_phi_upper(const DecayFunction& f, double t) {
    if (f.log_eval) return f.log_eval(t);
    const double p = f(t);
    if (p < 0 || std::isnan(p)) throw hypothesis_violation("tail bound: phi(t) must be >= 0");
    return p > 0 ? std::log(p) : log_subnormal_floor;
}

// w * e^{z t} without intermediate overflow: the factors routinely exceed the
// double range in opposite directions while the product is moderate.
inline complex_t mul_exp(complex_t w, complex_t z, double t) {
    const double aw = std::abs(w);
    if (aw == 0.0) return {0.0, 0.0};
    const double rt = z.real() * t;
    if (std::fabs(rt) < 690.0 && aw > 1e-290 && aw < 1e290) return w * std::exp(z * t);
    const double ex = rt + std::log(aw);
    if (!(ex > log_subnormal_floor)) return {0.0, 0.0};
    return (w / aw) * std::exp(complex_t(ex, z.imag() * t));
}

inline complex_t mul_exp(double w, complex_t z, double t) {
    return mul_exp(complex_t(w, 0.0), z, t);
}

// e^{log_w} * e^{z t} assembled in the exponent (log_w may be -inf).
inline complex_t exp_log_scaled(double log_w, complex_t z, double t) {
    const double ex = z.real() * t + log_w;
    if (!(ex > log_subnormal_floor)) return {0.0, 0.0};
    return std::exp(complex_t(ex, z.imag() * t));
}

// Estimated decay rate of phi over [T, 2T]: the smallest log-slope observed,
// shrunk by a safety factor.  Returns 0 when the window is not strictly
// decreasing or phi is not resolvable there (no rate certifiable).  This is
// the fallback when the function carries no analytic tail_rate certificate;
// it is a heuristic and is documented as such.
inline double empirical_tail_rate(const DecayFunction& f, double T) {
    auto lphi = [&f](double t) {
        if (f.log_eval) return f.log_eval(t);
        const double p = f(t);
        if (p < 0 || std::isnan(p))
            throw hypothesis_violation("tail rate: phi(t) must be >= 0");
        return p > 0 ? std::log(p) : -std::numeric_limits<double>::infinity();
    };
    constexpr int n = 16;
    double rate = std::numeric_limits<double>::infinity();
    double prev = lphi(T);
    if (std::isinf(prev)) return 0.0;
    for (int i = 1; i <= n; ++i) {
        const double t = T * (1.0 + static_cast<double>(i) / n);
        const double cur = lphi(t);
        if (cur > prev || std::isinf(cur)) return 0.0;
        rate = std::min(rate, (prev - cur) / (T / n));
        prev = cur;
    }
    return 0.95 * rate;
}

inline double certified_tail_rate(const DecayFunction& f, double T) {
    if (f.tail_rate) {
        const double r = f.tail_rate(T);
        if (r > 0) return r;
        // A non-positive certificate at this T means "no statement here";
        // fall through to the empirical estimate.
    }
    return empirical_tail_rate(f, T);
}

// Remainder bound for integral_T^inf e^{Re z * t} phi(t) dt under the
// envelope phi(t) <= phi(T) e^{-r (t - T)}:  phi(T) e^{Re z * T} / (r - Re z),
// assembled in the exponent so neither factor overflows on its own.  A
// black-box phi that rounded to 0.0 is bounded by the subnormal floor rather
// than treated as zero; only an explicit log_eval of -inf certifies a truly
// vanished tail.
inline double laplace_tail_bound(const DecayFunction& f, double T, double re_z, double rate) {
    const double lp = log_phi_upper(f, T);
    if (lp == -std::numeric_limits<double>::infinity()) return 0.0;
    const double gap = rate - re_z;
    if (!(gap > 0)) return std::numeric_limits<double>::infinity();
    const double ex = re_z * T + lp;
    if (ex > 690.0) return std::numeric_limits<double>::infinity();
    return std::exp(ex) / gap;
}

// Initial breakpoints for a chunk [a, b] of an oscillatory transform
// integrand: log-scale marks plus enough uniform marks that each starting
// panel spans only a few oscillation periods.
inline std::vector<double> transform_marks(double a, double b, double im_z) {
    std::vector<double> marks;
    for (int k = 1; k <= 12; ++k) {
        const double t = a + (b - a) * std::pow(2.0, -k);
        marks.push_back(t);
    }
    const double cycles = std::fabs(im_z) * (b - a) / (2.0 * 3.14159265358979323846);
    const int uniform = static_cast<int>(std::min(4096.0, std::ceil(cycles / 2.0)));
    for (int i = 1; i < uniform; ++i)
        marks.push_back(a + (b - a) * static_cast<double>(i) / uniform);
    return clip_breakpoints(a, b, std::move(marks));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// laplace(f, z): integral_0^inf e^{z t} phi(t) dt.
//
// Sampled functions are integrated exactly: e^{z t} against each linear
// segment in closed form, plus the closed-form transform of the exponential
// continuation beyond the last sample.  Closed-form functions are integrated
// adaptively on [0, T] with T grown geometrically until the certified
// remainder bound phi(T) e^{Re z T} / (r(T) - Re z) fits inside the requested
// tolerance; the bound is added to the reported error, never ignored.
// Throws out_of_domain when Re z reaches the decay rate (no convergent
// abscissa) and accuracy_failure when no certifiable truncation is found.

namespace detail {

inline complex_t laplace_sampled(const DecayFunction& f, complex_t z) {
    complex_t total = 0.0;
    for (std::size_t i = 1; i < f.samples.size(); ++i) {
        const auto& [a, pa] = f.samples[i - 1];
        const auto& [b, pb] = f.samples[i];
        const double dt = b - a;
        const complex_t w = z * dt;
        // integral_a^b e^{z t} (pa (1-u) + pb u) dt with u = (t-a)/dt, using
        //   integral_0^1 (1-u) e^{w u} du = (e^w - 1 - w)/w^2
        //   integral_0^1      e^{w u} du = (e^w - 1)/w.
        const complex_t m2 = expm1m_div2(w);
        total += mul_exp(dt * (pa * m2 + pb * (expm1_div(w) - m2)), z, a);
    }
    const auto& [t_end, p_end] = f.samples.back();
    if (p_end > 0) {
        const double r = f.tail_rate ? f.tail_rate(t_end) : 0.0;
        if (!(z.real() < r))
            throw out_of_domain("laplace: abscissa >= continuation decay rate of sampled tail");
        total += mul_exp(p_end / (complex_t(r, 0.0) - z), z, t_end);
    }
    return total;
}

struct TruncatedIntegral {
    complex_t value{};
    double T = 0;
    double rate = 0;
    double tail_bound = 0;
    long evaluations = 0;
};

// Shared truncation loop: integrates `integrand` over growing [0, T] until
// tail_weight * laplace_tail_bound(...) fits the tolerance.
template <typename Fn>
TruncatedIntegral truncated_transform(const DecayFunction& f, complex_t z, Fn&& integrand,
                                      double tail_weight, const QuadratureOptions& opt) {
    if (f.mu_hint && z.real() >= *f.mu_hint)
        throw out_of_domain("laplace: abscissa at or beyond the decay rate");
    TruncatedIntegral out;
    double T = 8.0;
    if (f.mu_hint) {
        const double gap = *f.mu_hint - z.real();
        T = std::max(8.0, 24.0 / gap);
    }
    double lo = 0.0;
    QuadratureOptions chunk_opt = opt;
    chunk_opt.throw_on_failure = false;
    // Each chunk is integrated to a tighter tolerance than the certification
    // check below.  Without the headroom, a chunk that stops exactly at its
    // own budget leaves quad_err flush against the certified tolerance, and
    // the next chunk's epsilon pushes the accumulated error over a line it
    // can never come back under (it only grows).
    chunk_opt.rel_tol = 0.25 * opt.rel_tol;
    chunk_opt.abs_tol = 0.25 * opt.abs_tol;
    double quad_err = 0.0;
    for (int iter = 0; iter < 48; ++iter) {
        auto res = integrate_adaptive<complex_t>(integrand,
                                                 transform_marks(lo, T, z.imag()), chunk_opt);
        out.value += res.value;
        quad_err += res.error;
        out.evaluations += res.evaluations;
        const double rate = certified_tail_rate(f, T);
        const double bound = tail_weight * laplace_tail_bound(f, T, z.real(), rate);
        const double tol = std::max(opt.abs_tol, opt.rel_tol * std::abs(out.value));
        if (bound <= 0.5 * tol && quad_err <= tol) {
            out.T = T;
            out.rate = rate;
            out.tail_bound = bound;
            return out;
        }
        // Once the tail bound fits the budget, the value -- and with it the
        // tolerance -- is pinned to within that bound, while quad_err only
        // accumulates.  An over-budget quad_err is then unrecoverable: fail
        // honestly instead of doubling T toward the horizon.
        if (bound <= 0.5 * tol && quad_err > tol)
            throw accuracy_failure(
                "laplace: accumulated quadrature error exceeds the certifiable tolerance "
                "(tail bound already satisfied); loosen the tolerance or raise "
                "max_subdivisions");
        lo = T;
        T *= 2.0;
        if (T > 1e9)
            throw accuracy_failure(
                "laplace: no certifiable truncation point below T = 1e9 (abscissa too close "
                "to the decay rate, or tail rate not certifiable)");
    }
    throw accuracy_failure("laplace: truncation loop exceeded iteration budget");
}

}  // namespace detail

inline complex_t laplace(const DecayFunction& f, complex_t z, const QuadratureOptions& opt = {}) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw invalid_input("laplace: z must be finite");
    if (f.kind == DecayFunction::Kind::sampled) return detail::laplace_sampled(f, z);
    const bool has_log = static_cast<bool>(f.log_eval);
    auto integrand = [&f, z, has_log](double t) {
        if (has_log) return detail::exp_log_scaled(f.log_eval(t), z, t);
        return detail::mul_exp(f.eval(t), z, t);
    };
    return detail::truncated_transform(f, z, integrand, 1.0, opt).value;
}

// ---------------------------------------------------------------------------
// stieltjes(f, z): integral_0^inf e^{z t} d phi(t).
//
// Routes by input kind:
//   * sampled: the interpolant has piecewise-constant slope, so each segment
//     contributes slope * integral e^{z t} dt exactly, plus the closed-form
//     contribution of the exponential continuation.
//   * closed form with derivative: adaptive integration of e^{z t} phi'(t).
//   * closed form without derivative: midpoint Riemann-Stieltjes sums under
//     grid doubling with Richardson extrapolation.
// For the truncated routes the tail integral_T^inf e^{z t} d phi is reduced
// by parts to -e^{z T} phi(T) - z * integral_T^inf e^{z t} phi dt, whose
// second term is controlled by the same certified tail bound as laplace.

namespace detail {

inline complex_t stieltjes_sampled(const DecayFunction& f, complex_t z) {
    complex_t total = 0.0;
    for (std::size_t i = 1; i < f.samples.size(); ++i) {
        const auto& [a, pa] = f.samples[i - 1];
        const auto& [b, pb] = f.samples[i];
        const double dt = b - a;
        const double slope = (pb - pa) / dt;
        total += mul_exp(slope * dt * expm1_div(z * dt), z, a);
    }
    const auto& [t_end, p_end] = f.samples.back();
    if (p_end > 0) {
        const double r = f.tail_rate ? f.tail_rate(t_end) : 0.0;
        if (!(z.real() < r))
            throw out_of_domain("stieltjes: abscissa >= continuation decay rate of sampled tail");
        total += mul_exp(-r * p_end / (complex_t(r, 0.0) - z), z, t_end);
    }
    return total;
}

// Midpoint Riemann-Stieltjes sum of e^{z t} against phi over [0, T].
inline complex_t rs_midpoint(const DecayFunction& f, complex_t z, double T, std::size_t n) {
    complex_t sum = 0.0;
    double t_prev = 0.0;
    double p_prev = f.eval(0.0);
    for (std::size_t i = 1; i <= n; ++i) {
        const double t = T * static_cast<double>(i) / static_cast<double>(n);
        const double p = f.eval(t);
        sum += mul_exp(p - p_prev, z, 0.5 * (t_prev + t));
        t_prev = t;
        p_prev = p;
    }
    return sum;
}

inline complex_t stieltjes_rs(const DecayFunction& f, complex_t z, const QuadratureOptions& opt) {
    // Pick T exactly as laplace would: the by-parts tail needs
    // |z| * (laplace tail bound) + (exactly computed) e^{z T} phi(T).
    double T = 8.0;
    if (f.mu_hint) {
        if (z.real() >= *f.mu_hint)
            throw out_of_domain("stieltjes: abscissa at or beyond the decay rate");
        T = std::max(8.0, 24.0 / (*f.mu_hint - z.real()));
    }
    double bound = 0.0;
    bool found = false;
    for (int iter = 0; iter < 48 && !found; ++iter) {
        const double rate = certified_tail_rate(f, T);
        bound = std::abs(z) * laplace_tail_bound(f, T, z.real(), rate);
        const double head_scale = std::fabs(f.eval(0.0)) + 1.0;
        if (bound <= std::max(opt.abs_tol, opt.rel_tol * head_scale) * 0.5) {
            found = true;
            break;
        }
        T *= 2.0;
        if (T > 1e9) throw accuracy_failure("stieltjes: no certifiable truncation point");
    }
    if (!found) throw accuracy_failure("stieltjes: truncation loop exceeded iteration budget");

    // Grid refinement with Richardson extrapolation (midpoint sums converge
    // at second order for smooth integrators).
    const double min_n = std::max(512.0, std::fabs(z.imag()) * T);
    std::size_t n = 512;
    while (static_cast<double>(n) < min_n) n *= 2;
    complex_t coarse = rs_midpoint(f, z, T, n);
    for (; n <= (std::size_t{1} << 22); n *= 2) {
        const complex_t fine = rs_midpoint(f, z, T, 2 * n);
        const complex_t extrap = (4.0 * fine - coarse) / 3.0;
        const double err = std::abs(fine - coarse);
        if (err <= std::max(opt.abs_tol * 10, 1e-9 * std::abs(extrap))) {
            // by-parts tail head term
            const complex_t head = f.log_eval ? exp_log_scaled(f.log_eval(T), z, T)
                                              : mul_exp(f.eval(T), z, T);
            return extrap - head;
        }
        coarse = fine;
    }
    throw accuracy_failure("stieltjes: Riemann-Stieltjes refinement did not stabilize");
}

}  // namespace detail

inline complex_t stieltjes(const DecayFunction& f, complex_t z, const QuadratureOptions& opt = {}) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw invalid_input("stieltjes: z must be finite");
    if (f.kind == DecayFunction::Kind::sampled) return detail::stieltjes_sampled(f, z);
    if (f.has_deriv()) {
        auto integrand = [&f, z](double t) { return detail::mul_exp(f.deriv(t), z, t); };
        // By-parts tail control: |z| * laplace bound, plus the exact head
        // term -e^{z T} phi(T) added after truncation.
        auto res = detail::truncated_transform(f, z, integrand, std::abs(z) + 1e-300, opt);
        const complex_t head = f.log_eval ? detail::exp_log_scaled(f.log_eval(res.T), z, res.T)
                                          : detail::mul_exp(f.eval(res.T), z, res.T);
        return res.value - head;
    }
    return detail::stieltjes_rs(f, z, opt);
}

// ---------------------------------------------------------------------------
// alpha_transform(f, a, z): the transform of the compensated growth profile
// alpha(t) = e^{(mu + a) t} phi(t), i.e.  (1/(a+z)) integral e^{-(a+z) t}
// d alpha(t), evaluated through two independent algebraic routes:
//
//   parts route       : -phi(0) + (a + z) * laplace(f, mu - z)   (Re z > 0)
//   stieltjes route   : (mu + a) * laplace(f, mu - z) + stieltjes(f, mu - z)
//                       (0 < Re z < mu)
//
// With route = cross_checked (default) both are computed where defined and
// must agree; disagreement raises consistency_failure instead of silently
// preferring one.  Requires f.mu_hint (the compensation rate must be known).

enum class AlphaRoute { parts, stieltjes_identity, cross_checked };

inline complex_t alpha_transform(const DecayFunction& f, double a, complex_t z,
                                 const QuadratureOptions& opt = {},
                                 AlphaRoute route = AlphaRoute::cross_checked) {
    if (!f.mu_hint)
        throw invalid_input("alpha_transform: decay rate (mu_hint) required");
    const double mu = *f.mu_hint;
    if (!(a > 0)) throw invalid_input("alpha_transform: a must be > 0");
    if (!(z.real() > 0))
        throw out_of_domain("alpha_transform: Re z > 0 required for convergence");

    auto parts = [&]() -> complex_t {
        return -f.phi0() + (a + z) * laplace(f, complex_t(mu, 0.0) - z, opt);
    };
    auto via_stieltjes = [&]() -> complex_t {
        const complex_t w = complex_t(mu, 0.0) - z;
        return (mu + a) * laplace(f, w, opt) + stieltjes(f, w, opt);
    };

    switch (route) {
        case AlphaRoute::parts:
            return parts();
        case AlphaRoute::stieltjes_identity:
            if (!(z.real() < mu))
                throw out_of_domain("alpha_transform: stieltjes route needs 0 < Re z < mu");
            return via_stieltjes();
        case AlphaRoute::cross_checked:
        default: {
            const complex_t v1 = parts();
            if (!(z.real() < mu)) return v1;  // second route undefined here
            const complex_t v2 = via_stieltjes();
            const double scale = 1.0 + std::max(std::abs(v1), std::abs(v2));
            if (std::abs(v1 - v2) > 1e-6 * scale)
                throw consistency_failure(
                    "alpha_transform: independent routes disagree (|delta| = " +
                    std::to_string(std::abs(v1 - v2)) + " at scale " + std::to_string(scale) + ")");
            return v1;
        }
    }
}

}  // namespace tauberkit
