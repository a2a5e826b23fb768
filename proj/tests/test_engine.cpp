#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "helpers.hpp"
#include "tauberkit/corpus.hpp"
#include "tauberkit/engine.hpp"

using tauberkit::complex_t;
using tauberkit::EngineConfig;
using tauberkit::Verdict;
using testutil::rel_err;

namespace {

const tauberkit::Exemplar& find_ex(const char* id) {
    static const auto all = tauberkit::corpus::registry();
    return tauberkit::corpus::find(all, id);
}

complex_t G_of(const char* id, complex_t z, const EngineConfig& cfg = {}) {
    const auto& e = find_ex(id);
    return tauberkit::G_eval(e.f, e.law, z, cfg);
}

}  // namespace

TEST_CASE("predict reads the law off a factorization", "[engine]") {
    for (const char* id : {"exp", "gamma_j2", "gamma_j05", "gamma_j15", "half_power",
                           "mix_two_rates"}) {
        const auto& e = find_ex(id);
        const auto law = tauberkit::predict(e.model);
        INFO(id);
        CHECK(law.mu == e.law.mu);
        CHECK(law.j == e.law.j);
        CHECK(rel_err(law.D, e.law.D) < 1e-12);
    }
}

TEST_CASE("predict rejects factorizations that cannot describe decay", "[engine]") {
    tauberkit::SingularityModel m;
    m.mu = 1.0;
    m.j = 1.0;
    m.F = [](complex_t) { return complex_t(0.0, 1.0); };  // imaginary boundary value
    CHECK_THROWS_AS(tauberkit::predict(m), tauberkit::hypothesis_violation);
    m.F = [](complex_t) { return complex_t(-1.0, 0.0); };  // negative boundary value
    CHECK_THROWS_AS(tauberkit::predict(m), tauberkit::hypothesis_violation);
    m.F = [](complex_t) { return complex_t(1.0, 0.0); };
    m.mu = 0.0;
    CHECK_THROWS_AS(tauberkit::predict(m), tauberkit::invalid_input);
    m.mu = 1.0;
    m.j = -2.0;
    CHECK_THROWS_AS(tauberkit::predict(m), tauberkit::invalid_input);
}

TEST_CASE("compensated remainder matches independent closed forms", "[engine]") {
    // Each exemplar's G(z) = laplace(mu - z) - phi(0)/(a+z) - D/z^j collapses
    // to an elementary expression; these were derived by hand and serve as
    // end-to-end checks of the wiring (a-resolution included).
    using tauberkit::upper_incomplete_gamma;
    const double e1 = std::exp(-1.0);

    auto check = [](const char* id, complex_t z, complex_t want, double tol = 1e-9) {
        const complex_t got = G_of(id, z);
        INFO(id << " z=" << z.real() << "+" << z.imag() << "i got=" << got.real() << "+"
                << got.imag() << "i");
        CHECK(rel_err(got, want) < tol);
    };

    for (const complex_t z : {complex_t(0.5, 0.0), complex_t(0.25, 3.0)}) {
        // exp (a = 1): G = -1/(1+z)
        check("exp", z, -1.0 / (1.0 + z), 1e-12);
        // gamma_j2 (a = 1): G = e^{-1} / (z (1+z))
        check("gamma_j2", z, e1 / (z * (1.0 + z)), 1e-12);
        // mix_two_rates (a = 2): G = 1/(1+z) - 2/(2+z)
        check("mix_two_rates", z, 1.0 / (1.0 + z) - 2.0 / (2.0 + z), 1e-12);
        // half_power (a = 3/2): G = e^{z-1} Gamma(1/2, z)/sqrt(z) - 2 e^{-1}/(3/2 + z)
        check("half_power", z,
              std::exp(z - 1.0) * upper_incomplete_gamma(0.5, z) / std::sqrt(z) -
                  2.0 * e1 / (1.5 + z));
        // gamma_j05 (a = 3/2): G = [e^{z-2} Gamma(1/2, z) - e^{-2} sqrt(pi)]/sqrt(z)
        //                          - e^{-2}/(3/2 + z)
        check("gamma_j05", z,
              (std::exp(z - 2.0) * upper_incomplete_gamma(0.5, z) -
               std::exp(-2.0) * 1.7724538509055160273) /
                      std::sqrt(z) -
                  std::exp(-2.0) / (1.5 + z));
        // gamma_j15 (a = 1): G = [e^{2z-1.4} Gamma(3/2, 2z) - e^{-1.4} Gamma(3/2)]/z^{3/2}
        //                        - sqrt(2) e^{-1.4}/(1+z)
        check("gamma_j15", z,
              (std::exp(2.0 * z - 1.4) * upper_incomplete_gamma(1.5, 2.0 * z) -
               std::exp(-1.4) * tauberkit::gamma_fn(1.5)) /
                      std::pow(z, 1.5) -
                  std::sqrt(2.0) * std::exp(-1.4) / (1.0 + z));
    }
}

TEST_CASE("compensated remainder routes agree", "[engine]") {
    const complex_t z(0.3, 2.0);
    EngineConfig quad;
    quad.g_route = tauberkit::GRoute::transform_quadrature;
    EngineConfig stq;
    stq.g_route = tauberkit::GRoute::stieltjes_quadrature;
    const complex_t exact = G_of("gamma_j2", z);
    CHECK(std::abs(G_of("gamma_j2", z, quad) - exact) < 1e-8 * (1.0 + std::abs(exact)));
    CHECK(std::abs(G_of("gamma_j2", z, stq) - exact) < 1e-6 * (1.0 + std::abs(exact)));
}

TEST_CASE("compensated remainder obeys conjugate symmetry", "[engine]") {
    // This symmetry justifies evaluating the line-difference integral on the
    // upper half only.
    for (const char* id : {"gamma_j15", "half_power", "mix_two_rates"}) {
        for (const complex_t z : {complex_t(0.2, 1.5), complex_t(0.05, 17.0)}) {
            const complex_t g = G_of(id, z);
            const complex_t gc = G_of(id, std::conj(z));
            INFO(id);
            CHECK(std::abs(gc - std::conj(g)) < 1e-12 * (1.0 + std::abs(g)));
        }
    }
}

TEST_CASE("compensated remainder domain and configuration guards", "[engine]") {
    const auto& e = find_ex("exp");
    CHECK_THROWS_AS(tauberkit::G_eval(e.f, e.law, complex_t(-0.1, 0.0)),
                    tauberkit::out_of_domain);
    CHECK_THROWS_AS(tauberkit::G_eval(e.f, e.law, complex_t(0.0, 1.0)),
                    tauberkit::out_of_domain);

    // Explicit a below the certified compensation margin is rejected.
    const auto& hp = find_ex("half_power");
    EngineConfig bad;
    bad.a = 0.1;  // needs a > nu - mu = 0.5
    CHECK_THROWS_AS(tauberkit::G_eval(hp.f, hp.law, complex_t(0.5, 0.0), bad),
                    tauberkit::hypothesis_violation);
    EngineConfig ok;
    ok.a = 0.7;
    CHECK_NOTHROW(tauberkit::G_eval(hp.f, hp.law, complex_t(0.5, 0.0), ok));

    // Exact route without an oracle present.
    auto bare = tauberkit::make_closed_form("bare", e.f.eval, e.f.deriv, e.nu, e.law.mu);
    EngineConfig ex;
    ex.g_route = tauberkit::GRoute::exact;
    CHECK_THROWS_AS(tauberkit::G_eval(bare, e.law, complex_t(0.5, 0.0), ex),
                    tauberkit::invalid_input);
}

TEST_CASE("line-difference integral reproduces frozen reference values", "[engine]") {
    // Reference values computed externally with 50-digit arithmetic from the
    // exact transforms (auto a: exp/gamma_j2/gamma_j15 -> 1, half_power and
    // gamma_j05 -> 3/2, mix_two_rates -> 2).
    struct Row {
        const char* id;
        double sigma;
        double T;
        double want;
    };
    const double s12 = std::pow(2.0, -12);
    const Row rows[] = {
        {"exp", 0.25, 10.0, 0.5227},       {"exp", s12, 10.0, 0.00071804},
        {"gamma_j2", 0.25, 64.0, 0.17274}, {"gamma_j2", s12, 64.0, 0.0001937},
        {"mix_two_rates", 0.25, 64.0, 0.32814}, {"mix_two_rates", s12, 64.0, 0.00050343},
        {"gamma_j15", 0.25, 64.0, 0.10753},     {"gamma_j15", s12, 64.0, 0.00022854},
        {"half_power", 0.25, 64.0, 0.41592},    {"half_power", s12, 64.0, 0.021907},
        {"gamma_j05", 0.25, 1.0, 0.096735},     {"gamma_j05", s12, 1.0, 0.0059063},
        {"gamma_j05", 0.25, 64.0, 0.28895},     {"gamma_j05", s12, 64.0, 0.012362},
    };
    for (const auto& r : rows) {
        const auto& e = find_ex(r.id);
        const double got = tauberkit::eta(e.f, e.law, r.sigma, r.T);
        INFO(r.id << " sigma=" << r.sigma << " T=" << r.T << " got=" << got);
        CHECK(rel_err(got, r.want) < 0.01);
    }
}

TEST_CASE("line-difference integral agrees across transform routes", "[engine]") {
    const auto& e = find_ex("exp");
    EngineConfig quad;
    quad.g_route = tauberkit::GRoute::transform_quadrature;
    const double a = tauberkit::eta(e.f, e.law, 0.25, 4.0);
    const double b = tauberkit::eta(e.f, e.law, 0.25, 4.0, quad);
    CHECK(rel_err(b, a) < 1e-5);
}

TEST_CASE("line-difference integral input guards", "[engine]") {
    const auto& e = find_ex("exp");
    CHECK_THROWS_AS(tauberkit::eta(e.f, e.law, 0.0, 1.0), tauberkit::invalid_input);
    CHECK_THROWS_AS(tauberkit::eta(e.f, e.law, 0.1, -1.0), tauberkit::invalid_input);
}

TEST_CASE("rho minimizes over admissible truncation heights", "[engine]") {
    const auto& e = find_ex("exp");
    // For the pure exponential the optimized error approaches pi/t.
    const auto r100 = tauberkit::rho(e.f, e.law, 100.0);
    CHECK(r100.value > 0.028);
    CHECK(r100.value < 0.036);
    CHECK(r100.T_argmin >= 64.0 * (1.0 - 1e-12));  // floor: 32 (a+1) with a = 1

    const auto r50 = tauberkit::rho(e.f, e.law, 50.0);
    const auto r200 = tauberkit::rho(e.f, e.law, 200.0);
    CHECK(r50.value >= r100.value - 1e-3);
    CHECK(r100.value >= r200.value - 1e-3);
    CHECK_THROWS_AS(tauberkit::rho(e.f, e.law, 0.0), tauberkit::invalid_input);
}

TEST_CASE("envelope brackets the true function", "[engine]") {
    const auto& e = find_ex("exp");
    const auto band = tauberkit::envelope(e.f, e.law, 30.0);
    const double actual = e.f(30.0);
    CHECK(band.lo > 0.0);
    CHECK(band.lo <= actual);
    CHECK(actual <= band.hi);
    CHECK(band.center == Catch::Approx(1.0));
    CHECK(band.half_width < 0.2);
}

TEST_CASE("vanishing-difference check passes across the corpus", "[engine]") {
    for (const char* id : {"exp", "gamma_j2", "gamma_j05", "gamma_j15", "half_power",
                           "mix_two_rates"}) {
        const auto& e = find_ex(id);
        const auto rep = tauberkit::check_loglim(e.model);
        INFO(id << " ratio=" << rep.ratio << " notes=" << rep.notes);
        CHECK(rep.verdict == Verdict::pass);
    }
}

TEST_CASE("vanishing-difference check fails the constructed j = 1 violator", "[engine]") {
    const auto m = tauberkit::corpus::loglim_counterexample(1.0);
    const auto rep = tauberkit::check_loglim(m);
    INFO("ratio=" << rep.ratio);
    CHECK(rep.verdict == Verdict::fail);
    CHECK(rep.ratio > 1.0);  // the gauged difference grows toward its positive limit
}

TEST_CASE("the same violator at j = 2 stays inconclusive at any feasible depth", "[engine]") {
    // At j = 2 the gauge carries an extra factor sigma, so the scanned values
    // v_k ~ 0.1 * [log(e + k log 2) - log(e + (k-1) log 2)] do vanish -- but only
    // at a 1/log rate.  Reaching the 0.05 pass ratio would need k > 124 levels,
    // while mu - sigma rounds to mu once sigma < 2^-53.  The honest verdict at
    // every reachable depth is therefore inconclusive, with a slowly improving
    // ratio and a strictly decreasing tail.
    const auto m2 = tauberkit::corpus::loglim_counterexample(1.0, 2.0);
    const auto shallow = tauberkit::check_loglim(m2);
    INFO("shallow ratio=" << shallow.ratio);
    CHECK(shallow.verdict == Verdict::inconclusive);
    CHECK(shallow.ratio > 0.05);
    CHECK(shallow.ratio < 0.5);

    EngineConfig deep;
    deep.checker_k_hi = 44;  // near the limit before mu - sigma rounds to mu
    const auto rep = tauberkit::check_loglim(m2, deep);
    INFO("deep ratio=" << rep.ratio);
    CHECK(rep.verdict == Verdict::inconclusive);
    CHECK(rep.ratio < shallow.ratio);  // deeper scans keep improving...
    CHECK(rep.ratio > 0.05);           // ...but never enough to certify
    REQUIRE(rep.values.size() >= 3);
    const auto n = rep.values.size();
    CHECK(rep.values[n - 1] < rep.values[n - 2]);
    CHECK(rep.values[n - 2] < rep.values[n - 3]);
}

TEST_CASE("scan verdict rules on synthetic sequences", "[engine]") {
    EngineConfig cfg;
    auto run = [&cfg](std::vector<double> vals) {
        tauberkit::ConditionReport rep;
        rep.sigmas.assign(vals.size(), 0.0);
        rep.values = std::move(vals);
        tauberkit::detail::apply_scan_verdict(rep, cfg);
        return rep.verdict;
    };
    CHECK(run({1.0, 0.5, 0.2, 0.1, 0.04, 0.01}) == Verdict::pass);
    CHECK(run({1.0, 0.8, 0.7, 0.65, 0.62, 0.6}) == Verdict::fail);       // ratio >= 0.5
    CHECK(run({1.0, 0.3, 0.2, 0.2, 0.2, 0.2}) == Verdict::fail);         // flat tail
    CHECK(run({1.0, 0.6, 0.4, 0.3, 0.25, 0.2}) == Verdict::inconclusive);
    CHECK(run({0.0, 0.0, 0.0, 0.0}) == Verdict::pass);                   // zero floor
    CHECK(run({1.0, 0.5, 0.3, 0.2, 0.1, 0.0}) == Verdict::pass);         // exact zero final
}

TEST_CASE("boundary slope probe: smooth factor is stable, rough factor reclassifies",
          "[engine]") {
    const auto& g2 = find_ex("gamma_j2");
    const auto rep = tauberkit::lipschitz_margin(g2.model, 0.5, 8.0);
    INFO("K=" << rep.K << " notes=" << rep.notes);
    CHECK(rep.stable);
    CHECK_FALSE(rep.reclassify);
    // F(z) = e^{-1} (1 + (1 - z)) has |F'| = e^{-1} everywhere.
    CHECK(rel_err(rep.K, std::exp(-1.0)) < 1e-3);

    const auto& hp = find_ex("half_power");
    const auto rhp = tauberkit::lipschitz_margin(hp.model, 0.5, 8.0);
    INFO("half_power K=" << rhp.K);
    CHECK(rhp.reclassify);
    CHECK_FALSE(rhp.stable);

    const auto& g15 = find_ex("gamma_j15");
    const auto r15 = tauberkit::lipschitz_margin(g15.model, 0.35, 8.0);
    CHECK(r15.stable);

    // A constant factor is the smoothest case of all: every quotient level is
    // exactly 0, which must read as stable (K = 0), never as growth.
    const auto& ex = find_ex("exp");
    const auto rc = tauberkit::lipschitz_margin(ex.model, 0.5, 8.0);
    CHECK(rc.K == 0.0);
    CHECK(rc.stable);
    CHECK_FALSE(rc.reclassify);

    CHECK_THROWS_AS(tauberkit::lipschitz_margin(g2.model, 1.5, 8.0), tauberkit::invalid_input);
    CHECK_THROWS_AS(tauberkit::lipschitz_margin(g2.model, 0.5, 8.0, {}, 2),
                    tauberkit::invalid_input);
}

TEST_CASE("uniform-limit residual scan: clean law passes, perturbed law fails", "[engine]") {
    const auto& e = find_ex("exp");
    const auto rep = tauberkit::check_dk(e.f, e.law);
    INFO(rep.notes);
    CHECK(rep.verdict == Verdict::pass);  // residual is identically zero

    tauberkit::AsymptoticLaw wrong = e.law;
    wrong.D *= 1.1;
    const auto bad = tauberkit::check_dk(e.f, wrong);
    INFO("perturbed ratio=" << bad.ratio);
    CHECK(bad.verdict == Verdict::fail);

    const auto& g05 = find_ex("gamma_j05");
    CHECK_THROWS_AS(tauberkit::check_dk(g05.f, g05.law), tauberkit::hypothesis_violation);
}

TEST_CASE("uniform-limit scan caps its depth on quadrature routes", "[engine]") {
    const auto& e = find_ex("exp");
    auto bare = tauberkit::make_closed_form("exp_noracle", e.f.eval, e.f.deriv, e.nu, e.law.mu);
    bare.tail_rate = e.f.tail_rate;
    bare.log_eval = e.f.log_eval;  // deep offsets need exponent-domain products
    EngineConfig cfg;
    cfg.sup_grid_n = 24;
    cfg.zero_floor = 1e-6;  // the scan sees only quadrature noise here
    const auto rep = tauberkit::check_dk(bare, e.law, cfg, 1.0);
    CHECK(rep.sigmas.size() == 8);  // k = 2..9 instead of 2..19
    CHECK(rep.sigmas.front() == 0.25);
    CHECK(rep.sigmas.back() == Catch::Approx(std::pow(2.0, -9)));
    CHECK(rep.notes.find("quadrature") != std::string::npos);
    CHECK(rep.verdict == Verdict::pass);
    double worst = 0.0;
    for (double v : rep.values) worst = std::max(worst, v);
    CHECK(worst < 1e-6);
}

TEST_CASE("bounded-remainder scan verdicts", "[engine]") {
    EngineConfig cfg;
    // Identically-zero remainder (gamma_j2's factorization has none).
    const auto& g2 = find_ex("gamma_j2");
    REQUIRE(g2.model.H == nullptr);
    auto zero = [](complex_t) { return complex_t(0.0, 0.0); };
    const auto rz = tauberkit::check_bounded_H(zero, g2.model.j, g2.model.mu, cfg);
    CHECK(rz.verdict == Verdict::pass);

    // A genuinely bounded analytic remainder.
    auto analytic = [](complex_t z) { return 1.0 / (complex_t(2.0, 0.0) - z); };
    const auto ra = tauberkit::check_bounded_H(analytic, 2.0, 1.0, cfg);
    CHECK(ra.verdict == Verdict::pass);

    // The numerical residual of gamma_j2 against its own law keeps the
    // derivative pole F'(mu)/(mu - z): it is *not* a bounded remainder, and
    // the scan must say so.
    const auto res = tauberkit::dk_residual(g2.f, g2.law);
    const auto rr = tauberkit::check_bounded_H(res, g2.model.j, g2.model.mu, cfg);
    INFO("residual ratio=" << rr.ratio);
    CHECK(rr.verdict == Verdict::fail);

    // j <= 1 is outside this criterion's hypotheses.
    CHECK_THROWS_AS(tauberkit::check_bounded_H(analytic, 1.0, 1.0, cfg),
                    tauberkit::hypothesis_violation);
    CHECK_THROWS_AS(tauberkit::check_bounded_H(nullptr, 2.0, 1.0, cfg),
                    tauberkit::invalid_input);
}

TEST_CASE("A/B split diagnostics respect their certified envelopes", "[engine]") {
    // The B envelope derivation is rigorous for j <= 1; assert it on the two
    // exemplars in that regime.
    struct Probe {
        const char* id;
        double sigma;
        double T;
    };
    for (const Probe p : {Probe{"gamma_j05", 0.01, 1.0}, Probe{"half_power", 0.001, 64.0}}) {
        const auto& e = find_ex(p.id);
        const auto d = tauberkit::diagnostics_AB(e.model, p.sigma, p.T);
        INFO(p.id << " A=" << d.A << " bound_A=" << d.bound_A << " B=" << d.B
                  << " bound_B=" << d.bound_B);
        CHECK(d.A > 0.0);
        CHECK(d.B > 0.0);
        CHECK(d.A <= d.bound_A * (1.0 + 1e-6));
        CHECK(e.model.j * d.B <= d.bound_B * (1.0 + 1e-6));
    }
    const auto& e = find_ex("gamma_j05");
    CHECK_THROWS_AS(tauberkit::diagnostics_AB(e.model, 1.5, 1.0), tauberkit::invalid_input);
    CHECK_THROWS_AS(tauberkit::diagnostics_AB(e.model, 0.25, 0.01), tauberkit::invalid_input);
}

TEST_CASE("sigma sequence respects the strip constraint", "[engine]") {
    const auto s = tauberkit::detail::sigma_sequence(0.3, 0, 5);
    REQUIRE(s.size() == 3);  // k = 3, 4, 5
    CHECK(s.front() == 0.125);
    CHECK(s.back() == Catch::Approx(std::pow(2.0, -5)));
    CHECK_THROWS_AS(tauberkit::detail::sigma_sequence(0.001, 0, 3), tauberkit::invalid_input);
    CHECK_THROWS_AS(tauberkit::detail::sigma_sequence(1.0, 5, 2), tauberkit::invalid_input);
}
