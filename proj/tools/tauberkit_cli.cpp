// Command-line front end for the toolkit.
//
// Subcommands:
//   corpus         list the built-in exemplars
//   verify-corpus  cross-check each exemplar's numeric routes against its
//                  closed forms (transform oracle, law ratio, monotonicity)
//   analyze        fit a decay law to a CSV of (t, phi) samples
//   check          run boundary-condition checkers on an exemplar model
//   eta-scan       tabulate the line-difference integral along sigma = 2^-k
//   rho            evaluate the optimized error functional at given times
//   specialfn      evaluate kernel/special-function primitives
//
// Exit codes: 0 success / all checks passed, 1 a requested check or
// verification failed (or a numeric route could not reach tolerance),
// 2 usage or input errors.

#include <CLI11.hpp>

#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tauberkit/reports_json.hpp"
#include "tauberkit/tauberkit.hpp"

namespace tk = tauberkit;

namespace {

struct OutputOptions {
    std::string format = "json";  // json | csv
    std::string out_path;         // empty = stdout
};

void emit(const OutputOptions& out, const std::string& text) {
    if (out.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(out.out_path, std::ios::binary);
    if (!file) throw tk::invalid_input("cannot open output file " + out.out_path);
    file << text;
}

std::string json_text(const tk::ordered_json& doc) { return doc.dump(2) + "\n"; }

std::string fmt(double v) { return tk::detail::format_double(v); }

// "k0:k1" -> pair of ints
std::pair<int, int> parse_k_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw CLI::ValidationError("--sigma-seq", "expected k0:k1");
    try {
        const int k0 = std::stoi(text.substr(0, colon));
        const int k1 = std::stoi(text.substr(colon + 1));
        return {k0, k1};
    } catch (const std::exception&) {
        throw CLI::ValidationError("--sigma-seq", "expected integer k0:k1");
    }
}

// "lo:hi:n" -> T grid description
struct TGridSpec {
    double lo = 0, hi = 1e6;
    int n = 40;
};
TGridSpec parse_t_grid(const std::string& text) {
    TGridSpec g;
    std::stringstream ss(text);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    if (parts.size() != 3) throw CLI::ValidationError("--T-grid", "expected lo:hi:n");
    try {
        g.lo = std::stod(parts[0]);
        g.hi = std::stod(parts[1]);
        g.n = std::stoi(parts[2]);
    } catch (const std::exception&) {
        throw CLI::ValidationError("--T-grid", "expected numeric lo:hi:n");
    }
    return g;
}

std::vector<double> parse_double_list(const std::string& text, const char* flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            out.push_back(std::stod(part));
        } catch (const std::exception&) {
            throw CLI::ValidationError(flag, "expected comma-separated numbers");
        }
    }
    if (out.empty()) throw CLI::ValidationError(flag, "empty list");
    return out;
}

// ----------------------------------------------------------------- corpus --
int run_corpus(const OutputOptions& out) {
    const auto all = tk::corpus::registry();
    if (out.format == "csv") {
        std::string text = "id,mu,j,d,nu,c_shift,f_class\n";
        for (const auto& e : all)
            text += e.id + ',' + fmt(e.law.mu) + ',' + fmt(e.law.j) + ',' + fmt(e.law.D) + ',' +
                    fmt(e.nu) + ',' + fmt(e.c_shift) + ',' + tk::fclass_name(e.model.f_class) +
                    '\n';
        emit(out, text);
    } else {
        tk::ordered_json rows = tk::ordered_json::array();
        for (const auto& e : all) {
            tk::ordered_json r;
            r["id"] = e.id;
            r["law"] = tk::to_json_report(e.law);
            r["nu"] = e.nu;
            r["c_shift"] = e.c_shift;
            r["f_class"] = tk::fclass_name(e.model.f_class);
            r["recommended_a"] = e.recommended_a();
            rows.push_back(r);
        }
        emit(out, json_text(tk::make_document("corpus", rows)));
    }
    return 0;
}

// ---------------------------------------------------------- verify-corpus --
int run_verify_corpus(const OutputOptions& out, const std::string& only_id, double tol) {
    const auto all = tk::corpus::registry();
    tk::ordered_json results = tk::ordered_json::array();
    std::string csv = "id,transform_max_rel_err,law_ratio_dev,monotone,pass\n";
    bool all_pass = true;
    for (const auto& e : all) {
        if (!only_id.empty() && e.id != only_id) continue;
        const double mu = e.law.mu;
        // Numeric transform vs closed form on a small strip grid.
        double worst_rel = 0;
        for (double re : {0.1 * mu, 0.5 * mu, 0.9 * mu}) {
            for (double im : {0.0, 2.0}) {
                const tk::complex_t z(re, im);
                const tk::complex_t num = tk::laplace(e.f, z);
                const tk::complex_t ora = e.f.exact_transform(z);
                worst_rel = std::max(worst_rel, std::abs(num - ora) / std::abs(ora));
            }
        }
        // Law ratio far out.
        const double t_mark = 100.0 * std::max(e.c_shift, 1.0 / mu);
        const double ratio_dev = std::fabs(e.f(t_mark) / e.law.eval(t_mark) - 1.0);
        // Monotonicity audit.
        const auto mono = tk::validate_nonincreasing(e.f, 50.0 / mu);
        const bool pass = worst_rel <= tol && mono.ok;
        all_pass = all_pass && pass;

        tk::ordered_json r;
        r["id"] = e.id;
        r["transform_max_rel_err"] = worst_rel;
        r["law_ratio_dev_at_t"] = ratio_dev;
        r["t_mark"] = t_mark;
        r["monotone"] = mono.ok;
        r["pass"] = pass;
        results.push_back(r);
        csv += e.id + ',' + fmt(worst_rel) + ',' + fmt(ratio_dev) + ',' +
               (mono.ok ? "true" : "false") + ',' + (pass ? "true" : "false") + '\n';
    }
    if (results.empty()) throw tk::invalid_input("verify-corpus: no exemplar matches id");
    if (out.format == "csv")
        emit(out, csv);
    else
        emit(out, json_text(tk::make_document("verify_corpus", results)));
    return all_pass ? 0 : 1;
}

// ----------------------------------------------------------------- analyze --
int run_analyze(const OutputOptions& out, const std::string& csv_path, double t_lo, double t_hi,
                double holdout) {
    tk::DecayFunction f = tk::load_samples_csv(csv_path);
    tk::FitOptions fopt;
    fopt.holdout_fraction = holdout;
    if (t_hi <= 0) t_hi = f.samples.back().first;
    if (t_lo <= 0) t_lo = std::max(1e-6, t_hi / 8.0);
    const tk::FitResult fit = tk::fit_decay_law(f, t_lo, t_hi, fopt);
    if (out.format == "csv") {
        std::string text = "mu,j,d,kappa,residual_rms,holdout_rms,corr_span,inconclusive\n";
        text += fmt(fit.law.mu) + ',' + fmt(fit.law.j) + ',' + fmt(fit.law.D) + ',' +
                fmt(fit.kappa) + ',' + fmt(fit.residual_rms) + ',' + fmt(fit.holdout_rms) + ',' +
                fmt(fit.corr_span) + ',' + (fit.inconclusive ? "true" : "false") + '\n';
        emit(out, text);
    } else {
        emit(out, json_text(tk::make_document("fit", tk::to_json_report(fit))));
    }
    return fit.inconclusive ? 1 : 0;
}

// ------------------------------------------------------------------- check --
int run_check(const OutputOptions& out, const std::string& id, const std::string& which,
              std::optional<std::pair<int, int>> krange, double T, double beta) {
    tk::EngineConfig cfg;
    if (krange) {
        cfg.checker_k_lo = krange->first;
        cfg.checker_k_hi = krange->second;
    }
    tk::SingularityModel model;
    std::optional<tk::Exemplar> ex;
    if (id == "loglim_counterexample") {
        model = tk::corpus::loglim_counterexample(1.0);
    } else {
        const auto all = tk::corpus::registry();
        ex = tk::corpus::find(all, id);
        model = ex->model;
    }
    if (T <= 0) T = model.T_max;

    tk::ordered_json results = tk::ordered_json::array();
    std::string csv = "check,verdict,initial,final,ratio\n";
    bool any_fail = false;
    auto add_condition = [&](const tk::ConditionReport& rep) {
        any_fail = any_fail || rep.verdict == tk::Verdict::fail;
        results.push_back(tk::to_json_report(rep));
        csv += rep.check_name + ',' + tk::verdict_name(rep.verdict) + ',' + fmt(rep.initial) +
               ',' + fmt(rep.final) + ',' + fmt(rep.ratio) + '\n';
    };

    const bool all_checks = which == "all";
    if (all_checks || which == "loglim") add_condition(tk::check_loglim(model, cfg, T));
    if (all_checks || which == "lipschitz") {
        const auto rep = tk::lipschitz_margin(model, beta * model.mu, T, cfg);
        results.push_back(tk::to_json_report(rep));
        csv += "lipschitz," + std::string(rep.stable ? "stable" : "unstable") + ',' +
               fmt(rep.level_max.front()) + ',' + fmt(rep.level_max.back()) + ',' + fmt(rep.K) +
               '\n';
    }
    if ((all_checks || which == "dk") && ex) {
        if (ex->law.j >= 1.0) add_condition(tk::check_dk(ex->f, ex->law, cfg, T));
        else if (!all_checks) throw tk::invalid_input("check dk: exemplar has j < 1");
    }
    if ((all_checks || which == "bounded-h") && ex) {
        if (model.j > 1.0) {
            auto H = model.H ? model.H
                             : std::function<tk::complex_t(tk::complex_t)>(
                                   [](tk::complex_t) { return tk::complex_t(0.0, 0.0); });
            add_condition(tk::check_bounded_H(H, model.j, model.mu, cfg, T));
        } else if (!all_checks) {
            throw tk::invalid_input("check bounded-h: requires j > 1");
        }
    }
    if (results.empty()) throw tk::invalid_input("check: nothing to run for this id/selection");
    if (out.format == "csv")
        emit(out, csv);
    else
        emit(out, json_text(tk::make_document("check", results)));
    return any_fail ? 1 : 0;
}

// ---------------------------------------------------------------- eta-scan --
int run_eta_scan(const OutputOptions& out, const std::string& id,
                 std::optional<std::pair<int, int>> krange, double T, double a) {
    const auto all = tk::corpus::registry();
    const auto& e = tk::corpus::find(all, id);
    tk::EngineConfig cfg;
    if (a > 0) cfg.a = a;
    int k_lo = cfg.sigma_k_lo, k_hi = cfg.sigma_k_hi;
    if (krange) {
        k_lo = krange->first;
        k_hi = krange->second;
    }
    if (T <= 0) T = e.model.T_max;
    const auto sigmas = tk::detail::sigma_sequence(e.law.mu, k_lo, k_hi);
    std::vector<double> values(sigmas.size());
    tk::detail::parallel_for(sigmas.size(), [&](std::size_t i) {
        values[i] = tk::eta(e.f, e.law, sigmas[i], T, cfg);
    });
    if (out.format == "csv") {
        std::string text = "sigma,eta\n";
        for (std::size_t i = 0; i < sigmas.size(); ++i)
            text += fmt(sigmas[i]) + ',' + fmt(values[i]) + '\n';
        emit(out, text);
    } else {
        tk::ordered_json payload;
        payload["id"] = e.id;
        payload["t_window"] = T;
        payload["sigmas"] = sigmas;
        payload["values"] = values;
        emit(out, json_text(tk::make_document("eta_scan", payload)));
    }
    return 0;
}

// --------------------------------------------------------------------- rho --
int run_rho(const OutputOptions& out, const std::string& id, const std::vector<double>& times,
            std::optional<TGridSpec> tgrid, double a) {
    const auto all = tk::corpus::registry();
    const auto& e = tk::corpus::find(all, id);
    tk::EngineConfig cfg;
    if (a > 0) cfg.a = a;
    if (tgrid) {
        cfg.T_grid_hi = tgrid->hi;
        cfg.T_grid_n = tgrid->n;
        if (tgrid->lo > 0) cfg.T_floor_factor = tgrid->lo / (tk::detail::resolve_a(e.f, e.law.mu, cfg) + 1.0);
    }
    std::vector<tk::RhoResult> rows(times.size());
    tk::detail::parallel_for(times.size(), [&](std::size_t i) {
        rows[i] = tk::rho(e.f, e.law, times[i], cfg);
    });
    if (out.format == "csv") {
        std::string text = "t,rho,t_argmin\n";
        for (std::size_t i = 0; i < times.size(); ++i)
            text += fmt(times[i]) + ',' + fmt(rows[i].value) + ',' + fmt(rows[i].T_argmin) + '\n';
        emit(out, text);
    } else {
        tk::ordered_json arr = tk::ordered_json::array();
        for (std::size_t i = 0; i < times.size(); ++i) {
            tk::ordered_json r = tk::to_json_report(rows[i]);
            r["t"] = times[i];
            arr.push_back(r);
        }
        emit(out, json_text(tk::make_document("rho", arr)));
    }
    return 0;
}

// --------------------------------------------------------------- specialfn --
int run_specialfn(const OutputOptions& out, const std::string& op, double sigma, double j,
                  double T, double s, double x_re, double x_im) {
    tk::ordered_json payload;
    payload["op"] = op;
    std::string csv;
    if (op == "hj" || op == "hj-raw" || op == "hj-bound") {
        double v = 0;
        if (op == "hj") v = tk::h_j(sigma, j, T);
        else if (op == "hj-raw") v = tk::h_j_raw(sigma, j, T);
        else v = tk::h_j_bound(sigma, j, T);
        payload["sigma"] = sigma;
        payload["j"] = j;
        payload["t_window"] = T;
        payload["value"] = v;
        csv = "op,sigma,j,T,value\n" + op + ',' + fmt(sigma) + ',' + fmt(j) + ',' + fmt(T) + ',' +
              fmt(v) + '\n';
    } else if (op == "gj") {
        const double v = tk::g_j(sigma, j);
        payload["sigma"] = sigma;
        payload["j"] = j;
        payload["value"] = v;
        csv = "op,sigma,j,value\n" + op + ',' + fmt(sigma) + ',' + fmt(j) + ',' + fmt(v) + '\n';
    } else if (op == "gamma-upper") {
        const tk::complex_t v = tk::upper_incomplete_gamma(s, tk::complex_t(x_re, x_im));
        payload["s"] = s;
        payload["x_re"] = x_re;
        payload["x_im"] = x_im;
        payload["value_re"] = v.real();
        payload["value_im"] = v.imag();
        csv = "op,s,x_re,x_im,value_re,value_im\n" + op + ',' + fmt(s) + ',' + fmt(x_re) + ',' +
              fmt(x_im) + ',' + fmt(v.real()) + ',' + fmt(v.imag()) + '\n';
    } else {
        throw tk::invalid_input("specialfn: unknown op " + op);
    }
    if (out.format == "csv")
        emit(out, csv);
    else
        emit(out, json_text(tk::make_document("specialfn", payload)));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numeric toolkit for one-sided exponential-decay analysis"};
    app.require_subcommand(1);

    OutputOptions out;
    app.add_option("--format", out.format, "output format (json|csv)")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--out", out.out_path, "write output to file instead of stdout");

    // corpus
    auto* sc_corpus = app.add_subcommand("corpus", "list built-in exemplars");

    // verify-corpus
    auto* sc_verify = app.add_subcommand("verify-corpus", "cross-check exemplar closed forms");
    std::string verify_id;
    double verify_tol = 1e-8;
    sc_verify->add_option("--id", verify_id, "restrict to one exemplar");
    sc_verify->add_option("--tol", verify_tol, "relative tolerance")->capture_default_str();

    // analyze
    auto* sc_analyze = app.add_subcommand("analyze", "fit a decay law to CSV samples");
    std::string csv_path;
    double t_lo = 0, t_hi = 0, holdout = 0.10;
    sc_analyze->add_option("csv", csv_path, "input CSV with header t,phi")->required();
    sc_analyze->add_option("--t-lo", t_lo, "fit window start");
    sc_analyze->add_option("--t-hi", t_hi, "fit window end");
    sc_analyze->add_option("--holdout", holdout, "held-out final fraction")->capture_default_str();

    // check
    auto* sc_check = app.add_subcommand("check", "run boundary-condition checkers");
    std::string check_id, check_which = "all", sigma_seq;
    double check_T = 0, check_beta = 0.5;
    sc_check->add_option("--id", check_id, "exemplar id or loglim_counterexample")->required();
    sc_check->add_option("--check", check_which, "loglim|lipschitz|dk|bounded-h|all")
        ->check(CLI::IsMember({"loglim", "lipschitz", "dk", "bounded-h", "all"}))
        ->capture_default_str();
    sc_check->add_option("--sigma-seq", sigma_seq, "offset exponents k0:k1");
    sc_check->add_option("--T", check_T, "window half-height (default: model T_max)");
    sc_check->add_option("--beta", check_beta, "lipschitz probe depth as fraction of mu")
        ->capture_default_str();

    // eta-scan
    auto* sc_eta = app.add_subcommand("eta-scan", "tabulate the line-difference integral");
    std::string eta_id, eta_sigma_seq;
    double eta_T = 0, eta_a = 0;
    sc_eta->add_option("--id", eta_id, "exemplar id")->required();
    sc_eta->add_option("--sigma-seq", eta_sigma_seq, "offset exponents k0:k1");
    sc_eta->add_option("--T", eta_T, "integration half-height (default: model T_max)");
    sc_eta->add_option("--a", eta_a, "compensation offset override");

    // rho
    auto* sc_rho = app.add_subcommand("rho", "evaluate the optimized error functional");
    std::string rho_id, rho_times_text, t_grid_text;
    double rho_a = 0;
    sc_rho->add_option("--id", rho_id, "exemplar id")->required();
    sc_rho->add_option("--t", rho_times_text, "comma-separated times")->required();
    sc_rho->add_option("--T-grid", t_grid_text, "truncation search grid lo:hi:n");
    sc_rho->add_option("--a", rho_a, "compensation offset override");

    // specialfn
    auto* sc_fn = app.add_subcommand("specialfn", "evaluate special-function primitives");
    std::string fn_op;
    double fn_sigma = 0.1, fn_j = 1.0, fn_T = 1.0, fn_s = 1.0, fn_xre = 0.0, fn_xim = 0.0;
    sc_fn->add_option("--op", fn_op, "hj|hj-raw|hj-bound|gj|gamma-upper")->required();
    sc_fn->add_option("--sigma", fn_sigma, "offset")->capture_default_str();
    sc_fn->add_option("--j", fn_j, "shape parameter")->capture_default_str();
    sc_fn->add_option("--T", fn_T, "window half-height")->capture_default_str();
    sc_fn->add_option("--s", fn_s, "gamma shape")->capture_default_str();
    sc_fn->add_option("--x-re", fn_xre, "gamma lower limit, real part")->capture_default_str();
    sc_fn->add_option("--x-im", fn_xim, "gamma lower limit, imag part")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // CLI11's help path returns 0; everything else is a usage error.
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sc_corpus->parsed()) return run_corpus(out);
        if (sc_verify->parsed()) return run_verify_corpus(out, verify_id, verify_tol);
        if (sc_analyze->parsed()) return run_analyze(out, csv_path, t_lo, t_hi, holdout);
        if (sc_check->parsed()) {
            std::optional<std::pair<int, int>> kr;
            if (!sigma_seq.empty()) kr = parse_k_range(sigma_seq);
            return run_check(out, check_id, check_which, kr, check_T, check_beta);
        }
        if (sc_eta->parsed()) {
            std::optional<std::pair<int, int>> kr;
            if (!eta_sigma_seq.empty()) kr = parse_k_range(eta_sigma_seq);
            return run_eta_scan(out, eta_id, kr, eta_T, eta_a);
        }
        if (sc_rho->parsed()) {
            std::optional<TGridSpec> tg;
            if (!t_grid_text.empty()) tg = parse_t_grid(t_grid_text);
            return run_rho(out, rho_id, parse_double_list(rho_times_text, "--t"), tg, rho_a);
        }
        if (sc_fn->parsed())
            return run_specialfn(out, fn_op, fn_sigma, fn_j, fn_T, fn_s, fn_xre, fn_xim);
    } catch (const CLI::ParseError& e) {
        // Late-validated option values (k ranges, grids, time lists).
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const tk::invalid_input& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const tk::out_of_domain& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const tk::hypothesis_violation& e) {
        std::cerr << "hypothesis violation: " << e.what() << "\n";
        return 2;
    } catch (const tk::accuracy_failure& e) {
        std::cerr << "accuracy failure: " << e.what() << "\n";
        return 1;
    } catch (const tk::consistency_failure& e) {
        std::cerr << "consistency failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
