#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "tauberkit/detail/adaptive.hpp"
#include "tauberkit/errors.hpp"

namespace tauberkit {

using complex_t = std::complex<double>;

// Shape-parameter regimes of the kernel integral h_j (below).  The regime
// determines which uniform bound applies and how h_j behaves as sigma -> 0.
enum class RegimeJ {
    j_below_one,        // 0 < j < 1: h_j grows like sigma^{j-1}
    j_equal_one,        // j = 1: closed form, logarithmic growth
    j_between_one_two,  // 1 < j < 2: bounded by 2^{4-2j} pi^{j-1} / (j-1)
    j_at_least_two      // j >= 2: bounded by pi
};

inline RegimeJ classify_regime(double j) {
    if (!(j > 0) || !std::isfinite(j))
        throw invalid_input("classify_regime: j must be finite and > 0");
    if (j < 1) return RegimeJ::j_below_one;
    if (j == 1) return RegimeJ::j_equal_one;
    if (j < 2) return RegimeJ::j_between_one_two;
    return RegimeJ::j_at_least_two;
}

inline std::string regime_name(RegimeJ r) {
    switch (r) {
        case RegimeJ::j_below_one: return "j_below_one";
        case RegimeJ::j_equal_one: return "j_equal_one";
        case RegimeJ::j_between_one_two: return "j_between_one_two";
        default: return "j_at_least_two";
    }
}

// Complete Gamma function on the positive axis (domain-checked wrapper).
inline double gamma_fn(double s) {
    if (!(s > 0) || !std::isfinite(s)) throw invalid_input("gamma_fn: s must be > 0");
    if (s > 170) throw out_of_domain("gamma_fn: s too large for double range");
    return std::tgamma(s);
}

// Gauge factor multiplying sup-differences in the vanishing-difference
// condition: sigma^{j-1} below j = 1, log(sigma) at j = 1 (negative for
// sigma < 1; consumers take |g_j|), and 1 above.
inline double g_j(double sigma, double j) {
    if (!(sigma > 0)) throw invalid_input("g_j: sigma must be > 0");
    switch (classify_regime(j)) {
        case RegimeJ::j_below_one: return std::pow(sigma, j - 1.0);
        case RegimeJ::j_equal_one: return std::log(sigma);
        default: return 1.0;
    }
}

namespace detail {

inline double sinc(double t) {
    // sin(t)/t with a series fallback near 0.
    if (std::fabs(t) < 1e-8) return 1.0 - t * t / 6.0;
    return std::sin(t) / t;
}

// Entire power series E_s(x) = sum_{n>=0} (-x)^n / (n! (s+n)), which satisfies
// x^s * E_s(x) = Gamma(s) - Gamma(s, x).  Converges for all x; used directly
// for moderate |x| and via the incomplete-gamma identity for large |x|.
complex_t upper_incomplete_gamma(double s, complex_t x, const QuadratureOptions& opt);

inline complex_t entire_gamma_series(double s, complex_t x,
                                     const QuadratureOptions& opt = {}) {
    if (!(s > 0)) throw invalid_input("entire_gamma_series: s must be > 0");
    if (std::abs(x) <= 8.0) {
        complex_t sum = 1.0 / s;
        complex_t term = 1.0;
        for (int n = 1; n <= 200; ++n) {
            term *= -x / static_cast<double>(n);
            const complex_t add = term / (s + n);
            sum += add;
            if (std::abs(add) <= 1e-18 * std::abs(sum) && n > 4) return sum;
        }
        return sum;  // |x| <= 8 always terminates far earlier
    }
    // Large |x|: fall back to the defining identity.  Principal power; the
    // callers only reach this branch with Re x > 0.
    if (!(x.real() > 0))
        throw out_of_domain("entire_gamma_series: large-|x| branch needs Re x > 0");
    return (gamma_fn(s) - upper_incomplete_gamma(s, x, opt)) / std::pow(x, s);
}

}  // namespace detail

// Upper incomplete Gamma function Gamma(s, x) for real s > 0 and complex x
// with Re x >= 0 (x = 0 gives the complete Gamma).  Computed by integrating
//   integral_0^R (x + r)^{s-1} e^{-(x+r)} dr
// along the horizontal ray from x; the integrand carries a constant phase and
// decays like e^{-r}, so the adaptive rule converges quickly for any |x|.
// For |x| < 1 and s < 3 the shape parameter is first lifted (s -> s + k so
// the integrand is flat near the ray origin) and then brought back down with
//   Gamma(s, x) = (Gamma(s+1, x) - x^s e^{-x}) / s.
namespace detail {

inline complex_t incomplete_gamma_ray(double s, complex_t x, const QuadratureOptions& opt) {
    // Integration length: continue until the integrand modulus bound
    // (|x|+R)^{s-1} e^{-R} is negligible relative to the r = 0 scale.
    const double ax = std::abs(x);
    const double scale0 = std::pow(std::max(ax, 1.0), s - 1.0);
    double R = std::max({40.0, 4.0 * s, 2.0 * std::log1p(ax)});
    while (std::pow(ax + R, std::max(s - 1.0, 0.0)) * std::exp(-R) > 1e-19 * scale0 && R < 4000)
        R += 20.0;
    auto integrand = [&](double r) -> complex_t {
        const complex_t u = x + r;
        return std::pow(u, s - 1.0) * std::exp(-u);
    };
    std::vector<double> pts = detail::clip_breakpoints(0.0, R, {1.0, 4.0, 16.0, 64.0, 256.0, 1024.0});
    return integrate_adaptive<complex_t>(integrand, pts, opt).value;
}

inline complex_t upper_incomplete_gamma(double s, complex_t x, const QuadratureOptions& opt) {
    if (!(s > 0) || !std::isfinite(s))
        throw invalid_input("upper_incomplete_gamma: s must be finite and > 0");
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
        throw invalid_input("upper_incomplete_gamma: x must be finite");
    if (x == complex_t(0.0, 0.0)) return gamma_fn(s);
    if (x.real() < 0)
        throw out_of_domain("upper_incomplete_gamma: Re x >= 0 required");

    const double ax = std::abs(x);
    int lift = 0;
    if (ax < 1.0 && s < 3.0) lift = static_cast<int>(std::ceil(3.0 - s));
    complex_t g = incomplete_gamma_ray(s + lift, x, opt);
    // Bring the shape parameter back down.
    for (int m = lift; m-- > 0;) {
        const double sm = s + m;
        g = (g - std::pow(x, sm) * std::exp(-x)) / sm;
    }
    return g;
}

}  // namespace detail

inline complex_t upper_incomplete_gamma(double s, complex_t x, const QuadratureOptions& opt = {}) {
    return detail::upper_incomplete_gamma(s, x, opt);
}

inline double upper_incomplete_gamma(double s, double x, const QuadratureOptions& opt = {}) {
    return detail::upper_incomplete_gamma(s, complex_t(x, 0.0), opt).real();
}

// ---------------------------------------------------------------------------
// Kernel integral
//   h_j(sigma; T) = sigma^{j-1} * integral_{-T}^{T} (sigma^2 + tau^2)^{-j/2} dtau.
//
// h_j   : production route.  Closed form at j = 1; otherwise a substitution
//         that turns the integrand into a smooth bounded function:
//           j >= 2        : h_j = 2 * integral_0^{atan(T/sigma)} cos(t)^{j-2} dt
//           j < 2, j != 1 : with x0 = atan(sigma/T) and u = t^{j-1},
//                           h_j = (2/|j-1|) * integral (sin t / t)^{j-2} du
//                           over u between (pi/2)^{j-1} and x0^{j-1}.
// h_j_raw: direct adaptive integration of the definition, kept as an
//         independent cross-check route.
// h_j_bound: regime-uniform upper bounds (sharp enough for the scans):
//         pi for j >= 2; 2^{4-2j} pi^{j-1} / (j-1) for 1 < j < 2; the closed
//         form itself at j = 1; and for 0 < j < 1 the sigma-explicit bound
//         (2^{3-j}/(1-j)) * (x0^{j-1} - (pi/2)^{j-1}).

namespace detail {

inline void check_hj_args(double sigma, double j, double T) {
    if (!(sigma > 0) || !std::isfinite(sigma)) throw invalid_input("h_j: sigma must be > 0");
    if (!(T > 0) || !std::isfinite(T)) throw invalid_input("h_j: T must be > 0");
    classify_regime(j);  // validates j
}

}  // namespace detail

inline double h_j_closed_j1(double sigma, double T) {
    // 2 * log((sqrt(T^2 + sigma^2) + T) / sigma), written hypot-stably.
    return 2.0 * std::log((std::hypot(T, sigma) + T) / sigma);
}

inline double h_j(double sigma, double j, double T, const QuadratureOptions& opt = {}) {
    detail::check_hj_args(sigma, j, T);
    if (j == 1.0) return h_j_closed_j1(sigma, T);
    if (j >= 2.0) {
        const double A = std::atan(T / sigma);
        auto f = [j](double t) { return std::pow(std::cos(t), j - 2.0); };
        return 2.0 * integrate_adaptive<double>(f, 0.0, A, opt).value;
    }
    // j in (0,1) or (1,2): smooth substitution u = t^{j-1}.
    const double x0 = std::atan(sigma / T);
    const double p = j - 1.0;
    const double ua = std::pow(x0, p);
    const double ub = std::pow(std::atan(1.0) * 2.0, p);  // (pi/2)^{j-1}
    const double lo = std::min(ua, ub);
    const double hi = std::max(ua, ub);
    auto m = [j, p](double u) {
        const double t = std::pow(u, 1.0 / p);
        return std::pow(detail::sinc(t), j - 2.0);
    };
    const double integral = integrate_adaptive<double>(m, lo, hi, opt).value;
    return 2.0 / std::fabs(p) * integral;
}

inline double h_j_raw(double sigma, double j, double T, const QuadratureOptions& opt = {}) {
    detail::check_hj_args(sigma, j, T);
    auto f = [sigma, j](double tau) {
        return std::pow(sigma * sigma + tau * tau, -0.5 * j);
    };
    // Breakpoints at multiples of sigma resolve the central peak when
    // sigma << T.
    std::vector<double> marks;
    for (double m : {1.0, 4.0, 16.0, 64.0, 256.0, 1024.0, 4096.0}) {
        marks.push_back(m * sigma);
        marks.push_back(-m * sigma);
    }
    auto pts = detail::clip_breakpoints(-T, T, marks);
    const double integral = integrate_adaptive<double>(f, pts, opt).value;
    return std::pow(sigma, j - 1.0) * integral;
}

inline double h_j_bound(double sigma, double j, double T) {
    detail::check_hj_args(sigma, j, T);
    const double pi = 4.0 * std::atan(1.0);
    switch (classify_regime(j)) {
        case RegimeJ::j_at_least_two:
            return pi;
        case RegimeJ::j_between_one_two:
            return std::pow(2.0, 4.0 - 2.0 * j) * std::pow(pi, j - 1.0) / (j - 1.0);
        case RegimeJ::j_equal_one:
            return h_j_closed_j1(sigma, T);
        default: {
            const double x0 = std::atan(sigma / T);
            return std::pow(2.0, 3.0 - j) / (1.0 - j) *
                   (std::pow(x0, j - 1.0) - std::pow(pi / 2.0, j - 1.0));
        }
    }
}

}  // namespace tauberkit
