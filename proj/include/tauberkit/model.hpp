#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tauberkit/errors.hpp"
#include "tauberkit/special_functions.hpp"

namespace tauberkit {

// The predicted long-time law  phi(t) ~ (D / Gamma(j)) t^{j-1} e^{-mu t}.
struct AsymptoticLaw {
    double mu = 0;
    double j = 1;
    double D = 0;

    double eval(double t) const {
        if (!(t > 0)) throw out_of_domain("AsymptoticLaw::eval: t > 0 required");
        return D / gamma_fn(j) * std::pow(t, j - 1.0) * std::exp(-mu * t);
    }
};

// Regularity class of the singular factor F near the dominant abscissa.
enum class FClass {
    holomorphic,      // F extends holomorphically past the abscissa
    continuous_only,  // F is continuous up to the boundary line, nothing more
    limit_form        // only the compensated limit of the full transform exists
};

inline std::string fclass_name(FClass c) {
    switch (c) {
        case FClass::holomorphic: return "holomorphic";
        case FClass::continuous_only: return "continuous_only";
        default: return "limit_form";
    }
}

// Structured boundary behaviour of a transform on its convergence strip:
//   transform(z) = F(z) / (mu - z)^j + H(z),   0 < Re z < mu,
// where F carries the singular weight at z = mu and H is the regular
// remainder (null H means identically zero).  T_max bounds the |Im z| range
// over which the factorization is intended to be used by the checkers.
struct SingularityModel {
    std::string name;
    double mu = 0;
    double j = 1;
    FClass f_class = FClass::holomorphic;
    std::function<complex_t(complex_t)> F;
    std::function<complex_t(complex_t)> H;  // optional; null => 0
    double T_max = 64.0;

    complex_t F_at(complex_t z) const {
        if (!F) throw invalid_input("SingularityModel: F evaluator missing");
        return F(z);
    }
    complex_t H_at(complex_t z) const { return H ? H(z) : complex_t(0.0, 0.0); }

    // Reassembles the transform from the factorization (principal power).
    complex_t transform_at(complex_t z) const {
        const complex_t pole = complex_t(mu, 0.0) - z;
        return F_at(z) / std::pow(pole, j) + H_at(z);
    }
};

// --------------------------- scan/check reports ----------------------------

enum class Verdict { pass, fail, inconclusive };

inline std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        default: return "inconclusive";
    }
}

// Outcome of a vanishing/boundedness scan along a shrinking sigma sequence.
struct ConditionReport {
    std::string check_name;
    Verdict verdict = Verdict::inconclusive;
    std::vector<double> sigmas;   // scan offsets, decreasing
    std::vector<double> values;   // scanned quantity per offset
    double initial = 0;           // values.front()
    double final = 0;             // values.back()
    double ratio = 0;             // final / initial (0 when initial == 0)
    std::string notes;
};

// Outcome of the boundary-slope probe for F.
struct LipschitzReport {
    double K = 0;                     // largest observed difference quotient
    bool stable = false;              // quotients settled across levels
    bool reclassify = false;          // persistent growth: treat F as rougher
    std::vector<double> level_sigma;  // probe distance per refinement level
    std::vector<double> level_max;    // max |F'| estimate per level
    std::string notes;
};

// rho(t) with the truncation height that attained the minimum.
struct RhoResult {
    double value = 0;
    double T_argmin = 0;
};

// Two-sided envelope for the compensated profile at one t.
struct EnvelopeBand {
    double t = 0;
    double lo = 0;
    double hi = 0;
    double center = 0;
    double half_width = 0;
};

// Law recovered from samples by the estimator.
struct FitResult {
    AsymptoticLaw law;
    double kappa = 0;          // fitted 1/t correction weight (diagnostic)
    double residual_rms = 0;   // log-space residuals over the fit window
    double residual_max = 0;
    double holdout_rms = 0;    // residuals on the held-out final fraction
    double corr_span = 0;      // |kappa| * (1/t_lo - 1/t_hi): window distortion
    bool inconclusive = false; // window judged pre-asymptotic
    double t_lo = 0, t_hi = 0;
    std::size_t n_points = 0;
    std::string notes;
};

// Row-by-row comparison of a law against the function it should describe.
struct RatioRow {
    double t = 0;
    double actual = 0;
    double predicted = 0;
    double ratio = 0;  // actual / predicted
};

struct VerificationReport {
    std::string subject;
    std::vector<RatioRow> rows;
    double tol = 0;
    double worst_abs_dev = 0;  // max |ratio - 1| over rows
    bool pass = false;
    std::string notes;
};

}  // namespace tauberkit
