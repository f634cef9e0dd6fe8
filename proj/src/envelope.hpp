#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "telemetry.hpp"

namespace acmpc::envelope {

// Discrete-time 2R1C indoor-air dynamics:
//   T[k+1] = alpha T[k] + (1 - alpha) (T_eq[k] + r_eff (q_e[k] - q_cool[k]))
// with the boundary temperature T_eq the resistance-weighted mix of the
// outdoor air and a fixed deep-mass node. q_cool >= 0 is heat extraction,
// so cooling lowers temperature.
struct ThermalCircuitParams {
    double alpha = 0.86;   // dimensionless, in (0, 1)
    double r_eff = 1.04;   // effective resistance, degC/kW
    double r_out = 0;      // indoor-outdoor resistance, degC/kW
    double r_m = 0;        // air-mass resistance, degC/kW (may be +inf)
    double t_m = 20.0;     // mass boundary temperature, degC

    // Build from the two branch resistances; r_eff becomes their parallel
    // combination. r_m may be +inf to disable the mass branch.
    static ThermalCircuitParams from_branches(double alpha, double r_out, double r_m, double t_m);
    // Build from the lumped resistance and the outdoor weight
    // w_out = r_eff / r_out in (0, 1].
    static ThermalCircuitParams from_effective(double alpha, double r_eff, double w_out,
                                               double t_m);

    void validate() const;
};

double equivalent_boundary(double t_out, const ThermalCircuitParams& p);

double step(const ThermalCircuitParams& p, double t_k, double t_eq, double q_cool, double q_e);

struct IdentifySpec {
    double t_m = 20.0;                 // configured deep-mass temperature
    double validation_fraction = 0.25; // held-out tail of the record
    // Frozen mode: skip the regression and evaluate the supplied parameters
    // (manual recalibration path). frozen_qe, when set, replaces the
    // residual-implied disturbance with a constant.
    std::optional<ThermalCircuitParams> frozen_params;
    std::optional<double> frozen_qe;
};

struct EnvelopeFit {
    ThermalCircuitParams params;
    std::vector<double> qe_series;  // exogenous thermal power per training step, kW
    double qe_mean = 0;             // kW
    double rmse_temp = 0;           // one-step-ahead temperature RMSE on validation, degC
    double rmse_cool = 0;           // implied-cooling-rate RMSE on validation, kW
    std::size_t n_train = 0;
    std::size_t n_valid = 0;
};

// Least-squares identification from hourly telemetry. Regresses T[k+1] on
// (T[k], T_out[k], q_cool[k], 1); the exogenous power series comes out of
// the residuals. Requires at least 48 consecutive hourly records.
EnvelopeFit identify(const TelemetryLog& telemetry, const IdentifySpec& spec = {});

}  // namespace acmpc::envelope
