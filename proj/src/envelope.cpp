#include "envelope.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "error.hpp"
#include "linalg.hpp"

namespace acmpc::envelope {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ThermalCircuitParams ThermalCircuitParams::from_branches(double alpha, double r_out, double r_m,
                                                         double t_m) {
    ThermalCircuitParams p;
    p.alpha = alpha;
    p.r_out = r_out;
    p.r_m = r_m;
    p.t_m = t_m;
    p.r_eff = std::isinf(r_m) ? r_out : r_out * r_m / (r_out + r_m);
    p.validate();
    return p;
}

ThermalCircuitParams ThermalCircuitParams::from_effective(double alpha, double r_eff, double w_out,
                                                          double t_m) {
    if (!(w_out > 0.0 && w_out <= 1.0))
        throw_invalid("ThermalCircuitParams: w_out must be in (0, 1]");
    ThermalCircuitParams p;
    p.alpha = alpha;
    p.r_eff = r_eff;
    p.r_out = r_eff / w_out;
    p.r_m = w_out >= 1.0 ? kInf : r_eff / (1.0 - w_out);
    p.t_m = t_m;
    p.validate();
    return p;
}

void ThermalCircuitParams::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw_invalid("ThermalCircuitParams: alpha=" + std::to_string(alpha) +
                      " outside (0, 1)");
    if (!(r_eff > 0.0) || !(r_out > 0.0) || !(r_m > 0.0))
        throw_invalid("ThermalCircuitParams: resistances must be positive");
    const double parallel = std::isinf(r_m) ? r_out : r_out * r_m / (r_out + r_m);
    if (std::fabs(parallel - r_eff) > 1e-9 * std::max(1.0, std::fabs(r_eff)))
        throw_invalid("ThermalCircuitParams: r_eff is not the parallel combination of r_out, r_m");
}

double equivalent_boundary(double t_out, const ThermalCircuitParams& p) {
    const double g_out = 1.0 / p.r_out;
    const double g_m = std::isinf(p.r_m) ? 0.0 : 1.0 / p.r_m;
    return (g_out * t_out + g_m * p.t_m) / (g_out + g_m);
}

double step(const ThermalCircuitParams& p, double t_k, double t_eq, double q_cool, double q_e) {
    return p.alpha * t_k + (1.0 - p.alpha) * (t_eq + p.r_eff * (q_e - q_cool));
}

namespace {

struct Series {
    std::vector<double> t_in, t_out, q_cool;
};

Series extract(const TelemetryLog& log) {
    Series s;
    s.t_in.reserve(log.size());
    for (const auto& r : log.records) {
        s.t_in.push_back(r.t_in);
        s.t_out.push_back(r.t_out);
        s.q_cool.push_back(r.q_cool_kw);
    }
    return s;
}

// One-step temperature prediction and implied-cooling-rate errors over
// [begin, end), using the mean disturbance for unseen steps.
void validation_errors(const ThermalCircuitParams& p, double qe_mean, const Series& s,
                       std::size_t begin, std::size_t end, double& rmse_temp,
                       double& rmse_cool) {
    double se_t = 0.0, se_q = 0.0;
    std::size_t n = 0;
    const double gain = (1.0 - p.alpha) * p.r_eff;
    for (std::size_t k = begin; k + 1 < end; ++k) {
        const double t_eq = equivalent_boundary(s.t_out[k], p);
        const double t_pred = step(p, s.t_in[k], t_eq, s.q_cool[k], qe_mean);
        se_t += (t_pred - s.t_in[k + 1]) * (t_pred - s.t_in[k + 1]);
        // Cooling rate implied by the measured temperature change.
        const double q_pred =
            qe_mean + (p.alpha * s.t_in[k] + (1.0 - p.alpha) * t_eq - s.t_in[k + 1]) / gain;
        se_q += (q_pred - s.q_cool[k]) * (q_pred - s.q_cool[k]);
        ++n;
    }
    rmse_temp = n ? std::sqrt(se_t / static_cast<double>(n)) : 0.0;
    rmse_cool = n ? std::sqrt(se_q / static_cast<double>(n)) : 0.0;
}

}  // namespace

EnvelopeFit identify(const TelemetryLog& telemetry, const IdentifySpec& spec) {
    if (std::fabs(telemetry.dt_hours - 1.0) > 1e-9)
        throw_invalid("identify: telemetry must be hourly (got dt=" +
                      std::to_string(telemetry.dt_hours) + " h); downsample first");
    if (telemetry.size() < 48)
        throw_data("identify: need at least 48 hourly records, got " +
                   std::to_string(telemetry.size()));

    const Series s = extract(telemetry);
    const std::size_t n = s.t_in.size();
    std::size_t n_valid = static_cast<std::size_t>(std::floor(spec.validation_fraction *
                                                              static_cast<double>(n)));
    if (n_valid + 24 > n) n_valid = n > 24 ? n - 24 : 0;
    const std::size_t n_train = n - n_valid;

    EnvelopeFit fit;
    fit.n_train = n_train;
    fit.n_valid = n_valid;

    if (spec.frozen_params) {
        fit.params = *spec.frozen_params;
        fit.params.validate();
    } else {
        // T[k+1] = a T[k] + b T_out[k] + c q_cool[k] + d
        linalg::Matrix x(n_train - 1, 4);
        std::vector<double> y(n_train - 1);
        for (std::size_t k = 0; k + 1 < n_train; ++k) {
            x.at(k, 0) = s.t_in[k];
            x.at(k, 1) = s.t_out[k];
            x.at(k, 2) = s.q_cool[k];
            x.at(k, 3) = 1.0;
            y[k] = s.t_in[k + 1];
        }
        auto ls = linalg::least_squares(x, y, 1e-8);
        if (ls.rank < 4) {
            static const char* names[4] = {"t_in", "t_out", "q_cool", "intercept"};
            std::string cols;
            for (auto j : ls.dependent_columns) {
                if (!cols.empty()) cols += ", ";
                cols += names[j];
            }
            throw_data("identify: regressor matrix is rank-deficient (collinear columns: " + cols +
                       ")");
        }
        const double a = ls.coeffs[0], b = ls.coeffs[1], c = ls.coeffs[2];
        if (!(a > 0.0 && a < 1.0))
            throw_numeric("identify: fitted alpha=" + std::to_string(a) +
                          " outside (0, 1); data do not support the model");
        const double r_eff = -c / (1.0 - a);
        if (!(r_eff > 0.0))
            throw_numeric("identify: fitted resistance is non-positive (r=" +
                          std::to_string(r_eff) + " degC/kW)");
        double w_out = b / (1.0 - a);
        // An outdoor weight outside (0, 1] means the mass branch is not
        // identifiable from this record; fall back to a single resistance.
        if (!(w_out > 0.0) || w_out > 1.0) w_out = 1.0;
        fit.params = ThermalCircuitParams::from_effective(a, r_eff, w_out, spec.t_m);
    }

    // Disturbance series from the one-step inversion on the training window.
    const auto& p = fit.params;
    const double gain = (1.0 - p.alpha) * p.r_eff;
    fit.qe_series.reserve(n_train - 1);
    double qe_sum = 0.0;
    for (std::size_t k = 0; k + 1 < n_train; ++k) {
        const double t_eq = equivalent_boundary(s.t_out[k], p);
        const double qe =
            s.q_cool[k] + (s.t_in[k + 1] - p.alpha * s.t_in[k] - (1.0 - p.alpha) * t_eq) / gain;
        fit.qe_series.push_back(qe);
        qe_sum += qe;
    }
    fit.qe_mean = spec.frozen_qe ? *spec.frozen_qe
                                 : qe_sum / static_cast<double>(fit.qe_series.size());
    if (spec.frozen_qe) {
        fit.qe_series.assign(fit.qe_series.size(), *spec.frozen_qe);
    }

    if (n_valid >= 2) {
        validation_errors(p, fit.qe_mean, s, n_train, n, fit.rmse_temp, fit.rmse_cool);
    } else {
        validation_errors(p, fit.qe_mean, s, 0, n_train, fit.rmse_temp, fit.rmse_cool);
    }
    return fit;
}

}  // namespace acmpc::envelope
