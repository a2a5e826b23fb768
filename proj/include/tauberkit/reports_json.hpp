#pragma once

// JSON views of the report types.  Key order is fixed (insertion order of an
// ordered_json), keys are snake_case, and every top-level document carries
// schema_version so downstream consumers can detect layout changes.

#include <json.hpp>

#include "tauberkit/engine.hpp"
#include "tauberkit/model.hpp"

namespace tauberkit {

using ordered_json = nlohmann::ordered_json;

inline constexpr int k_schema_version = 1;

inline ordered_json to_json_report(const AsymptoticLaw& law) {
    ordered_json j;
    j["mu"] = law.mu;
    j["j"] = law.j;
    j["d"] = law.D;
    return j;
}

inline ordered_json to_json_report(const ConditionReport& r) {
    ordered_json j;
    j["check_name"] = r.check_name;
    j["verdict"] = verdict_name(r.verdict);
    j["sigmas"] = r.sigmas;
    j["values"] = r.values;
    j["initial"] = r.initial;
    j["final"] = r.final;
    j["ratio"] = r.ratio;
    j["notes"] = r.notes;
    return j;
}

inline ordered_json to_json_report(const LipschitzReport& r) {
    ordered_json j;
    j["k"] = r.K;
    j["stable"] = r.stable;
    j["reclassify"] = r.reclassify;
    j["level_sigma"] = r.level_sigma;
    j["level_max"] = r.level_max;
    j["notes"] = r.notes;
    return j;
}

inline ordered_json to_json_report(const RhoResult& r) {
    ordered_json j;
    j["value"] = r.value;
    j["t_argmin"] = r.T_argmin;
    return j;
}

inline ordered_json to_json_report(const EnvelopeBand& b) {
    ordered_json j;
    j["t"] = b.t;
    j["lo"] = b.lo;
    j["hi"] = b.hi;
    j["center"] = b.center;
    j["half_width"] = b.half_width;
    return j;
}

inline ordered_json to_json_report(const FitResult& r) {
    ordered_json j;
    j["law"] = to_json_report(r.law);
    j["kappa"] = r.kappa;
    j["residual_rms"] = r.residual_rms;
    j["residual_max"] = r.residual_max;
    j["holdout_rms"] = r.holdout_rms;
    j["corr_span"] = r.corr_span;
    j["inconclusive"] = r.inconclusive;
    j["t_lo"] = r.t_lo;
    j["t_hi"] = r.t_hi;
    j["n_points"] = r.n_points;
    j["notes"] = r.notes;
    return j;
}

inline ordered_json to_json_report(const VerificationReport& r) {
    ordered_json j;
    j["subject"] = r.subject;
    j["tol"] = r.tol;
    j["pass"] = r.pass;
    j["worst_abs_dev"] = r.worst_abs_dev;
    ordered_json rows = ordered_json::array();
    for (const auto& row : r.rows) {
        ordered_json jr;
        jr["t"] = row.t;
        jr["actual"] = row.actual;
        jr["predicted"] = row.predicted;
        jr["ratio"] = row.ratio;
        rows.push_back(jr);
    }
    j["rows"] = rows;
    j["notes"] = r.notes;
    return j;
}

inline ordered_json to_json_report(const ABDiagnostics& d) {
    ordered_json j;
    j["a"] = d.A;
    j["b"] = d.B;
    j["sup_diff"] = d.sup_diff;
    j["sup_boundary"] = d.sup_boundary;
    j["c1"] = d.C1;
    j["i_j"] = d.I_j;
    j["bound_a"] = d.bound_A;
    j["bound_b"] = d.bound_B;
    return j;
}

inline ordered_json to_json_report(const MonotonicityReport& r) {
    ordered_json j;
    j["ok"] = r.ok;
    j["worst_increase"] = r.worst_increase;
    j["worst_t"] = r.worst_t;
    j["points_checked"] = r.points_checked;
    return j;
}

// Wraps a payload into the versioned document envelope the CLI emits.
inline ordered_json make_document(const std::string& kind, ordered_json payload) {
    ordered_json doc;
    doc["schema_version"] = k_schema_version;
    doc["kind"] = kind;
    doc["payload"] = std::move(payload);
    return doc;
}

}  // namespace tauberkit
