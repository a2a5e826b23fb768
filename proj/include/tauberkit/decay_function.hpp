#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <functional>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tauberkit/errors.hpp"

namespace tauberkit {

// A non-negative, eventually-decaying function of t >= 0, either given in
// closed form or as samples.  This is the common input type for transforms,
// scans and fits.
//
// Optional certificates sharpen what the numerics can do:
//   * nu_certificate: a rate nu such that e^{nu t} * phi(t) is non-decreasing
//     (equivalently phi' >= -nu * phi wherever phi is differentiable).
//   * mu_hint: the exponential decay rate of phi itself.
//   * tail_rate(T): a certified lower bound r with
//     phi(t) <= phi(T) * e^{-r (t - T)} for all t >= T; used to truncate
//     improper integrals with a provable remainder bound.
//   * log_eval(t): ln phi(t) (-inf where phi vanishes exactly).  Transform
//     quadrature forms products e^{Re z * t} * phi(t) whose factors overflow
//     and underflow long before the product does; with log_eval those
//     products are assembled in the exponent and stay exact at any depth.
//     Without it, black-box evaluation loses the tail once phi(t) underflows,
//     which caps how close to the decay rate a certified abscissa can sit.
//   * exact_transform(z): closed form of integral_0^inf e^{z t} phi(t) dt on
//     0 < Re z < mu, used as an oracle and as a fast route in scans.
class DecayFunction {
  public:
    enum class Kind { closed_form, sampled };

    Kind kind = Kind::closed_form;
    std::string name;
    std::function<double(double)> eval;              // phi(t), t >= 0
    std::function<double(double)> deriv;             // optional phi'(t)
    std::function<double(double)> log_eval;          // optional ln phi(t)
    std::vector<std::pair<double, double>> samples;  // sampled kind only
    std::optional<double> nu_certificate;
    std::optional<double> mu_hint;
    std::function<double(double)> tail_rate;         // optional certified rate bound
    std::function<std::complex<double>(std::complex<double>)> exact_transform;

    double operator()(double t) const {
        if (t < 0) throw out_of_domain("DecayFunction: evaluation requires t >= 0");
        return eval(t);
    }

    bool has_deriv() const { return static_cast<bool>(deriv); }

    double phi0() const { return eval(0.0); }

    // End of the sampled grid (closed-form functions have no such cutoff).
    std::optional<double> sample_end() const {
        if (kind != Kind::sampled || samples.empty()) return std::nullopt;
        return samples.back().first;
    }
};

inline DecayFunction make_closed_form(std::string name, std::function<double(double)> eval,
                                      std::function<double(double)> deriv = nullptr,
                                      std::optional<double> nu_certificate = std::nullopt,
                                      std::optional<double> mu_hint = std::nullopt) {
    if (!eval) throw invalid_input("make_closed_form: evaluator required");
    DecayFunction f;
    f.kind = DecayFunction::Kind::closed_form;
    f.name = std::move(name);
    f.eval = std::move(eval);
    f.deriv = std::move(deriv);
    f.nu_certificate = nu_certificate;
    f.mu_hint = mu_hint;
    const double p0 = f.eval(0.0);
    if (!std::isfinite(p0) || p0 < 0)
        throw invalid_input("make_closed_form: phi(0) must be finite and non-negative");
    return f;
}

namespace detail {

// Log-slope of the trailing part of a sample set: the continuation rate used
// past the last sample.  Conservative choice: the smallest decay rate observed
// over the final segments (so the continued tail never under-estimates phi...
// it may over-estimate, which is the safe direction for truncation bounds).
inline double trailing_log_slope(const std::vector<std::pair<double, double>>& s) {
    const std::size_t n = s.size();
    if (n < 2) return 0.0;
    double rate = std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    for (std::size_t i = n - 1; i-- > 0 && used < 8;) {
        const auto& [t0, p0] = s[i];
        const auto& [t1, p1] = s[i + 1];
        if (p0 <= 0 || p1 <= 0) break;
        rate = std::min(rate, (std::log(p0) - std::log(p1)) / (t1 - t0));
        ++used;
    }
    if (!std::isfinite(rate) || rate < 0) return 0.0;
    return rate;
}

}  // namespace detail

// Builds a sampled DecayFunction from (t, phi) pairs.
//   * t must be strictly increasing and start at exactly 0 (the transform
//     identities need phi(0)).
//   * phi must be non-negative and finite.
// Evaluation uses piecewise-linear interpolation inside the grid (linear
// interpolation of monotone data stays monotone) and an exponential
// continuation phi(t_end) * e^{-r (t - t_end)} beyond it, with r taken from
// mu_hint when provided, else from the trailing log-slope of the data.
inline DecayFunction make_sampled(std::string name,
                                  std::vector<std::pair<double, double>> samples,
                                  std::optional<double> nu_certificate = std::nullopt,
                                  std::optional<double> mu_hint = std::nullopt) {
    if (samples.size() < 2) throw invalid_input("make_sampled: need at least two samples");
    if (samples.front().first != 0.0)
        throw invalid_input("make_sampled: first sample must be at t = 0");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& [t, p] = samples[i];
        if (!std::isfinite(t) || !std::isfinite(p))
            throw invalid_input("make_sampled: non-finite sample at row " + std::to_string(i));
        if (p < 0) throw invalid_input("make_sampled: negative value at t = " + std::to_string(t));
        if (i > 0 && !(t > samples[i - 1].first))
            throw invalid_input("make_sampled: t must be strictly increasing (row " +
                                std::to_string(i) + ")");
    }

    DecayFunction f;
    f.kind = DecayFunction::Kind::sampled;
    f.name = std::move(name);
    f.nu_certificate = nu_certificate;
    f.mu_hint = mu_hint;
    const double cont_rate = mu_hint ? *mu_hint : detail::trailing_log_slope(samples);
    f.samples = std::move(samples);

    // Shared immutable state for the closures.
    auto data = std::make_shared<const std::vector<std::pair<double, double>>>(f.samples);
    const double t_end = data->back().first;
    const double p_end = data->back().second;

    f.eval = [data, t_end, p_end, cont_rate](double t) -> double {
        if (t < 0) throw out_of_domain("sampled DecayFunction: t >= 0 required");
        if (t >= t_end) return p_end * std::exp(-cont_rate * (t - t_end));
        auto it = std::upper_bound(data->begin(), data->end(), t,
                                   [](double v, const auto& s) { return v < s.first; });
        const auto& hi = *it;
        const auto& lo = *(it - 1);
        const double w = (t - lo.first) / (hi.first - lo.first);
        return lo.second + w * (hi.second - lo.second);
    };
    // Certified continuation rate only applies beyond the grid; inside it the
    // data itself bounds the tail, so transforms integrate the grid exactly.
    f.tail_rate = [t_end, cont_rate](double T) -> double {
        return T >= t_end ? cont_rate : 0.0;
    };
    return f;
}

struct MonotonicityReport {
    bool ok = true;
    double worst_increase = 0.0;    // largest upward step, relative to local scale
    double worst_t = 0.0;           // left endpoint of the worst step
    std::size_t points_checked = 0;
};

namespace detail {

// Default audit grid: log-spaced head (resolves fast variation near 0) plus a
// uniform body out to t_max.
inline std::vector<double> audit_grid(double t_max, std::size_t n) {
    std::vector<double> g;
    g.reserve(n + 40);
    g.push_back(0.0);
    for (int k = -30; k < 0; ++k) {
        const double t = t_max * std::pow(2.0, k);
        if (t > 0 && t < t_max) g.push_back(t);
    }
    for (std::size_t i = 1; i + 1 < n; ++i)
        g.push_back(t_max * static_cast<double>(i) / static_cast<double>(n - 1));
    g.push_back(t_max);
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

}  // namespace detail

// Checks that phi is non-increasing on a grid over [0, t_max].  For sampled
// functions the sample points themselves are also audited.  `rel_tol` forgives
// upward steps below rel_tol * (local scale), which absorbs round-off in
// closed-form evaluators.
inline MonotonicityReport validate_nonincreasing(const DecayFunction& f, double t_max = 0,
                                                 std::size_t n = 2048, double rel_tol = 1e-12) {
    if (t_max <= 0) {
        if (auto e = f.sample_end()) t_max = *e;
        else t_max = f.mu_hint ? 50.0 / *f.mu_hint : 50.0;
    }
    std::vector<double> grid = detail::audit_grid(t_max, n);
    if (f.kind == DecayFunction::Kind::sampled)
        for (const auto& [t, p] : f.samples)
            if (t <= t_max) grid.push_back(t);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    MonotonicityReport rep;
    rep.points_checked = grid.size();
    double prev = f(grid[0]);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double cur = f(grid[i]);
        const double scale = std::max({std::fabs(prev), std::fabs(cur), 1e-300});
        const double rise = (cur - prev) / scale;
        if (rise > rep.worst_increase) {
            rep.worst_increase = rise;
            rep.worst_t = grid[i - 1];
        }
        prev = cur;
    }
    rep.ok = rep.worst_increase <= rel_tol;
    return rep;
}

// Smallest rate nu >= 0 such that e^{nu t} phi(t) is non-decreasing on the
// audit grid: the maximum observed log-slope of decay.  Infinity when phi
// reaches exact zero while still positive earlier (no finite rate recovers a
// drop to zero).  This is an estimate from finitely many points, not a
// certificate; corpus members carry analytic nu_certificate values instead.
inline double estimate_min_nu(const DecayFunction& f, double t_max = 0, std::size_t n = 4096) {
    if (t_max <= 0) {
        if (auto e = f.sample_end()) t_max = *e;
        else t_max = f.mu_hint ? 50.0 / *f.mu_hint : 50.0;
    }
    const std::vector<double> grid = detail::audit_grid(t_max, n);
    double nu = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double p0 = f(grid[i - 1]);
        const double p1 = f(grid[i]);
        if (p0 <= 0 && p1 <= 0) continue;
        if (p1 <= 0) return std::numeric_limits<double>::infinity();
        if (p0 <= 0) continue;  // rising from zero needs no nu
        nu = std::max(nu, (std::log(p0) - std::log(p1)) / (grid[i] - grid[i - 1]));
    }
    return nu;
}

// ---------------------------------------------------------------------------
// CSV input/output.  Format: header line "t,phi", then one "<t>,<phi>" row
// per sample.  Numbers are written with shortest round-trip formatting so
// files are byte-stable across runs.

namespace detail {

inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc())
        throw accuracy_failure("format_double: conversion failed");
    return std::string(buf, ptr);
}

inline bool parse_double(std::string_view text, double& out) {
    // Trim surrounding whitespace; accept the usual decimal/exponent forms.
    std::size_t b = text.find_first_not_of(" \t\r");
    std::size_t e = text.find_last_not_of(" \t\r");
    if (b == std::string_view::npos) return false;
    text = text.substr(b, e - b + 1);
    std::string owned(text);
    char* end = nullptr;
    out = std::strtod(owned.c_str(), &end);
    return end == owned.c_str() + owned.size() && std::isfinite(out);
}

}  // namespace detail

inline std::vector<std::pair<double, double>> parse_samples_csv(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    std::vector<std::pair<double, double>> rows;
    auto strip = [](std::string s) {
        if (s.size() >= 3 && s.compare(0, 3, "\xEF\xBB\xBF") == 0) s.erase(0, 3);
        while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
        std::size_t b = s.find_first_not_of(" \t");
        return b == std::string::npos ? std::string() : s.substr(b);
    };
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string s = strip(line);
        if (s.empty()) continue;
        if (!saw_header) {
            std::string squeezed;
            for (char c : s)
                if (c != ' ' && c != '\t') squeezed.push_back(c);
            if (squeezed != "t,phi")
                throw invalid_input("samples CSV: expected header \"t,phi\" on line " +
                                    std::to_string(lineno));
            saw_header = true;
            continue;
        }
        const std::size_t comma = s.find(',');
        if (comma == std::string::npos)
            throw invalid_input("samples CSV: missing comma on line " + std::to_string(lineno));
        double t = 0, p = 0;
        if (!detail::parse_double(std::string_view(s).substr(0, comma), t) ||
            !detail::parse_double(std::string_view(s).substr(comma + 1), p))
            throw invalid_input("samples CSV: malformed number on line " + std::to_string(lineno));
        rows.emplace_back(t, p);
    }
    if (!saw_header) throw invalid_input("samples CSV: empty input");
    if (rows.size() < 2) throw invalid_input("samples CSV: need at least two data rows");
    return rows;
}

inline DecayFunction load_samples_csv(const std::string& path,
                                      std::optional<double> nu_certificate = std::nullopt,
                                      std::optional<double> mu_hint = std::nullopt) {
    std::ifstream in(path);
    if (!in) throw invalid_input("load_samples_csv: cannot open " + path);
    return make_sampled(path, parse_samples_csv(in), nu_certificate, mu_hint);
}

inline void write_samples_csv(std::ostream& out,
                              const std::vector<std::pair<double, double>>& rows) {
    out << "t,phi\n";
    for (const auto& [t, p] : rows)
        out << detail::format_double(t) << ',' << detail::format_double(p) << '\n';
}

}  // namespace tauberkit
