#pragma once

#include <vector>

#include "telemetry.hpp"

namespace acmpc::psychro {

// Saturation vapor pressure over liquid water, kPa (Magnus form).
double saturation_pressure_kpa(double t_c);

// Humidity ratio (kg water / kg dry air) at standard pressure 101.325 kPa.
double humidity_ratio(double t_c, double rh);

// Relative humidity (fraction) from dry-bulb and humidity ratio.
double relative_humidity(double t_c, double w);

// Dew point, degC.
double dew_point(double t_c, double rh);

// Wet-bulb temperature from dry-bulb (degC) and relative humidity
// (fraction), Stull (2011) regression at standard atmospheric pressure.
// Accurate to about +-0.35 degC for -20..50 degC, rh >= 5%.
double wet_bulb(double t_db, double rh);

// Inverse of wet_bulb in rh by bisection; result clamped to [0.05, 1].
double rh_from_wet_bulb(double t_db, double t_wb);

struct MoistAirState {
    double t_db = 0;  // degC
    double rh = 0;    // fraction 0..1
    double t_wb = 0;  // degC, derived

    static MoistAirState from_rh(double t_db, double rh);
};

struct ComfortInputs {
    double t_db = 24;   // air temperature, degC
    double t_r = 24;    // mean radiant temperature, degC
    double rh = 0.5;    // fraction
    double v_air = 0.1; // m/s
    double met = 1.1;   // metabolic rate
    double clo = 0.5;   // clothing insulation

    void validate() const;
};

struct ComfortResult {
    double pmv = 0;
    double ppd = 5;
};

// Fanger predicted mean vote. Solves the clothing-surface-temperature
// fixed point by damped iteration (tolerance 1e-5 degC, at most 150
// iterations).
double pmv(const ComfortInputs& in);

// Predicted percentage dissatisfied from PMV, closed form:
// 100 - 95 exp(-(0.03353 pmv^4 + 0.2179 pmv^2)). Requires |pmv| <= 4.
double ppd(double pmv_value);

ComfortResult evaluate(const ComfortInputs& in);

// Fixed occupant assumptions used when walking a telemetry log. Radiant
// temperature is taken equal to the air temperature unless overridden.
struct ComfortAssumptions {
    double v_air = 0.1;
    double met = 1.1;
    double clo = 0.5;
    double fallback_rh = 0.5;  // used when the log lacks a humidity channel
};

struct ComfortSeries {
    std::vector<ComfortResult> steps;
    double mean_ppd = 0;             // time-average PPD, %
    double hours_above_threshold = 0;  // hours with PPD > 10%
    bool used_rh_fallback = false;
};

ComfortSeries comfort_series(const TelemetryLog& log, const ComfortAssumptions& assumptions);

// Same walk over bare arrays, used by the price tuner on planned
// trajectories before any telemetry exists.
ComfortSeries comfort_series(const std::vector<double>& t_db, const std::vector<double>& rh,
                             double dt_hours, const ComfortAssumptions& assumptions);

}  // namespace acmpc::psychro
