#include "acmpc/acmpc.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <optional>
#include <string>

#include "envelope.hpp"
#include "error.hpp"
#include "forecast.hpp"
#include "gpr.hpp"
#include "mpc.hpp"
#include "pipeline.hpp"
#include "psychro.hpp"

namespace {

thread_local std::string g_last_error;

acmpc_status status_from(acmpc::ErrorKind kind) {
    using acmpc::ErrorKind;
    switch (kind) {
        case ErrorKind::InvalidArgument: return ACMPC_ERR_INVALID_ARGUMENT;
        case ErrorKind::Data: return ACMPC_ERR_DATA;
        case ErrorKind::Numeric: return ACMPC_ERR_NUMERIC;
        case ErrorKind::Infeasible: return ACMPC_ERR_INFEASIBLE;
        case ErrorKind::Io: return ACMPC_ERR_IO;
    }
    return ACMPC_ERR_INTERNAL;
}

template <typename Fn>
acmpc_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return ACMPC_OK;
    } catch (const acmpc::Error& e) {
        g_last_error = e.what();
        return status_from(e.kind());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return ACMPC_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return ACMPC_ERR_INTERNAL;
    }
}

acmpc_status require(bool ok, const char* what) {
    if (ok) return ACMPC_OK;
    g_last_error = what;
    return ACMPC_ERR_INVALID_ARGUMENT;
}

acmpc::pipeline::IdentifyOptions to_identify_options(const acmpc_identify_options* opts) {
    acmpc::pipeline::IdentifyOptions o;
    if (!opts) return o;
    if (opts->use_frozen) {
        o.frozen_alpha = opts->frozen_alpha;
        o.frozen_r = opts->frozen_r_c_per_kw;
    }
    if (opts->use_frozen_qe) o.frozen_qe = opts->frozen_qe_kw;
    o.t_m = opts->t_m_c;
    o.validation_fraction = opts->validation_fraction;
    return o;
}

}  // namespace

struct acmpc_envelope {
    acmpc::envelope::EnvelopeFit fit;
};

struct acmpc_gpr {
    acmpc::gpr::GprModel model;
};

extern "C" {

const char* acmpc_version(void) { return "0.1.0"; }

const char* acmpc_last_error(void) { return g_last_error.c_str(); }

acmpc_status acmpc_wet_bulb(double t_db_c, double rh, double* out_c) {
    if (auto s = require(out_c != nullptr, "out_c is null")) return s;
    return guarded([&] { *out_c = acmpc::psychro::wet_bulb(t_db_c, rh); });
}

acmpc_status acmpc_pmv(const acmpc_comfort_inputs* in, double* out_pmv) {
    if (auto s = require(in != nullptr && out_pmv != nullptr, "null argument")) return s;
    return guarded([&] {
        acmpc::psychro::ComfortInputs ci;
        ci.t_db = in->t_db_c;
        ci.t_r = in->t_r_c;
        ci.rh = in->rh;
        ci.v_air = in->v_air_m_s;
        ci.met = in->met;
        ci.clo = in->clo;
        *out_pmv = acmpc::psychro::pmv(ci);
    });
}

acmpc_status acmpc_ppd(double pmv, double* out_pct) {
    if (auto s = require(out_pct != nullptr, "out_pct is null")) return s;
    return guarded([&] { *out_pct = acmpc::psychro::ppd(pmv); });
}

acmpc_status acmpc_envelope_step(double alpha, double r_eff_c_per_kw, double t_k_c, double t_eq_c,
                                 double q_cool_kw, double q_e_kw, double* out_c) {
    if (auto s = require(out_c != nullptr, "out_c is null")) return s;
    return guarded([&] {
        const auto p = acmpc::envelope::ThermalCircuitParams::from_effective(
            alpha, r_eff_c_per_kw, 1.0, 20.0);
        *out_c = acmpc::envelope::step(p, t_k_c, t_eq_c, q_cool_kw, q_e_kw);
    });
}

void acmpc_identify_options_init(acmpc_identify_options* opts) {
    if (!opts) return;
    std::memset(opts, 0, sizeof(*opts));
    opts->t_m_c = 20.0;
    opts->validation_fraction = 0.25;
}

acmpc_status acmpc_identify_csv(const char* telemetry_csv, const acmpc_identify_options* opts,
                                acmpc_envelope** out) {
    if (auto s = require(telemetry_csv != nullptr && out != nullptr, "null argument")) return s;
    return guarded([&] {
        auto log = acmpc::read_telemetry_csv(telemetry_csv);
        if (log.dt_hours < 1.0 - 1e-9) log = acmpc::hourly_downsample(log);
        const auto o = to_identify_options(opts);
        acmpc::envelope::IdentifySpec spec;
        spec.t_m = o.t_m;
        spec.validation_fraction = o.validation_fraction;
        if (o.frozen_alpha) {
            spec.frozen_params = acmpc::envelope::ThermalCircuitParams::from_effective(
                *o.frozen_alpha, *o.frozen_r, 1.0, o.t_m);
            spec.frozen_qe = o.frozen_qe;
        }
        *out = new acmpc_envelope{acmpc::envelope::identify(log, spec)};
    });
}

acmpc_status acmpc_envelope_get_params(const acmpc_envelope* model, acmpc_envelope_params* out) {
    if (auto s = require(model != nullptr && out != nullptr, "null argument")) return s;
    const auto& p = model->fit.params;
    out->alpha = p.alpha;
    out->r_eff_c_per_kw = p.r_eff;
    out->r_out_c_per_kw = p.r_out;
    out->r_m_c_per_kw = std::isinf(p.r_m) ? -1.0 : p.r_m;
    out->t_m_c = p.t_m;
    out->qe_mean_kw = model->fit.qe_mean;
    out->rmse_temp_c = model->fit.rmse_temp;
    out->rmse_cool_kw = model->fit.rmse_cool;
    return ACMPC_OK;
}

void acmpc_envelope_free(acmpc_envelope* model) { delete model; }

acmpc_status acmpc_gpr_fit(const double* features, const double* targets_c, size_t n,
                           acmpc_gpr** out) {
    if (auto s = require(features != nullptr && targets_c != nullptr && out != nullptr,
                         "null argument"))
        return s;
    return guarded([&] {
        std::vector<acmpc::gpr::Features> f(n);
        std::vector<double> y(targets_c, targets_c + n);
        for (size_t i = 0; i < n; ++i)
            for (size_t d = 0; d < acmpc::gpr::kRawFeatures; ++d)
                f[i][d] = features[i * acmpc::gpr::kRawFeatures + d];
        *out = new acmpc_gpr{acmpc::gpr::GprModel::fit(f, y)};
    });
}

acmpc_status acmpc_gpr_predict(const acmpc_gpr* model, const double features[5],
                               double* out_mean_c, double* out_variance) {
    if (auto s = require(model != nullptr && features != nullptr && out_mean_c != nullptr,
                         "null argument"))
        return s;
    return guarded([&] {
        acmpc::gpr::Features f;
        for (size_t d = 0; d < acmpc::gpr::kRawFeatures; ++d) f[d] = features[d];
        const auto p = model->model.predict(f);
        *out_mean_c = p.mean;
        if (out_variance) *out_variance = p.variance;
    });
}

void acmpc_gpr_free(acmpc_gpr* model) { delete model; }

acmpc_status acmpc_power_limit(int hour, double limit_kw, int start_hour, int end_hour,
                               double* out_kw) {
    if (auto s = require(out_kw != nullptr, "out_kw is null")) return s;
    return guarded(
        [&] { *out_kw = acmpc::mpc::power_limit_schedule(hour, limit_kw, start_hour, end_hour); });
}

acmpc_status acmpc_run_identify(const char* telemetry_csv, const acmpc_identify_options* opts,
                                const char* out_dir) {
    if (auto s = require(telemetry_csv != nullptr && out_dir != nullptr, "null argument"))
        return s;
    return guarded(
        [&] { acmpc::pipeline::cmd_identify(telemetry_csv, to_identify_options(opts), out_dir); });
}

acmpc_status acmpc_run_simulate(const char* manifest_path, const char* out_dir,
                                const char* formulation_override, const char* mode_override,
                                const uint64_t* seed_override) {
    if (auto s = require(manifest_path != nullptr && out_dir != nullptr, "null argument"))
        return s;
    return guarded([&] {
        acmpc::pipeline::SimulateOverrides o;
        if (formulation_override) o.formulation = std::string(formulation_override);
        if (mode_override) o.mode = std::string(mode_override);
        if (seed_override) o.seed = *seed_override;
        if (o.formulation && *o.formulation != "sensible" && *o.formulation != "latent")
            acmpc::throw_invalid("formulation override must be 'sensible' or 'latent'");
        if (o.mode && *o.mode != "cost" && *o.mode != "limit")
            acmpc::throw_invalid("mode override must be 'cost' or 'limit'");
        acmpc::pipeline::cmd_simulate(manifest_path, out_dir, o);
    });
}

acmpc_status acmpc_run_report(const char* results_dir, const char* out_dir, int paper_constants) {
    if (auto s = require(results_dir != nullptr && out_dir != nullptr, "null argument")) return s;
    return guarded([&] {
        acmpc::pipeline::ReportOptions o;
        o.paper_constants = paper_constants != 0;
        acmpc::pipeline::cmd_report(results_dir, out_dir, o);
    });
}

acmpc_status acmpc_write_default_manifest(const char* path) {
    if (auto s = require(path != nullptr, "path is null")) return s;
    return guarded([&] {
        std::ofstream f(path);
        if (!f) acmpc::throw_io(std::string("cannot open '") + path + "' for writing");
        f << acmpc::pipeline::default_manifest_text();
    });
}

}  // extern "C"
