#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "envelope.hpp"
#include "equipment.hpp"
#include "forecast.hpp"
#include "gpr.hpp"
#include "mpc.hpp"
#include "telemetry.hpp"

namespace acmpc::sim {

// Truth plant: a two-node RC thermal model plus a single-zone moisture
// balance, stepped at a finer cadence than the controller and with
// parameters the controller never sees. The mismatch is the point.
struct PlantParams {
    double c_air = 7.0;          // air-node capacitance, kWh/degC
    double r_out_air = 1.1;      // air <-> outdoor resistance, degC/kW
    double r_mass = 2.0;         // air <-> mass resistance, degC/kW
    double c_mass = 40.0;        // mass capacitance, kWh/degC
    double r_mass_ground = 8.0;  // mass <-> ground resistance, degC/kW
    double t_ground = 18.0;      // degC
    double solar_aperture = 3.0; // kW of gain per kW/m2 of irradiance

    double volume_m3 = 540.0;
    double infiltration_ach = 0.5;

    double k_p = 25.0;           // tracker gain, kW/degC (tight variable-speed tracking)
    double deadband = 0.1;       // degC
    double step_minutes = 5.0;
};

// Occupant moisture generation, kg/h, with morning and evening peaks.
struct MoistureSchedule {
    double base_kg_h = 0.25;
    double morning_kg_h = 0.6;
    double morning_hour = 7.0;
    double evening_kg_h = 0.9;
    double evening_hour = 19.0;
    double peak_width_h = 1.5;

    double rate(double hour) const;
};

// Occupant/appliance sensible gains, kW, same two-peak shape.
struct InternalGains {
    double base_kw = 0.25;
    double peak_kw = 0.5;

    double rate(double hour) const;
};

struct PlantState {
    double t_in = 23.0;    // degC
    double w_in = 0.0095;  // humidity ratio, kg/kg
    double t_mass = 22.0;  // degC
};

struct PlantStepEvents {
    int clamped = 0;  // moisture clamps hit during the step
};

// One moisture/thermal step. q_cool_kw is the sensible extraction; the
// latent extraction follows from the realized SHR with h_fg = 2257 kJ/kg.
PlantState plant_step(const PlantParams& plant, const PlantState& state,
                      const WeatherRecord& weather, double q_cool_kw, double shr_realized,
                      double dt_hours, double gains_kw, double moisture_gen_kg_h,
                      PlantStepEvents* events = nullptr);

// Proportional set-point tracking with a deadband and saturation.
double device_tracker(double t_in, double setpoint, double k_p, double deadband,
                      double capacity_kw);

struct WeatherProfile {
    std::string name = "custom";
    double t_mean = 24.0;
    double t_amp = 5.0;       // diurnal half-swing, degC
    double peak_hour = 15.0;  // hour of the daily maximum
    double day_amp = 1.2;     // slow day-to-day drift, degC
    double rh_mean = 0.6;
    double rh_amp = 0.15;     // in anti-phase with temperature
    double solar_peak = 0.85; // kW/m2
    double wind_mean = 3.0;
    double t_noise = 0.8;     // AR(1) noise scale, degC
    double rh_noise = 0.04;

    static WeatherProfile hot_humid();
    static WeatherProfile mild_dry();
};

// Deterministic synthetic weather at hourly cadence.
std::vector<WeatherRecord> weather_synth(const WeatherProfile& profile, int days,
                                         std::uint64_t seed,
                                         TimePoint start = TimePoint{1688169600});  // 2023-07-01

enum class ControllerKind { Benchmark, MpcSensible, MpcLatent };

ControllerKind controller_from_string(const std::string& s);
std::string to_string(ControllerKind c);

// Models the supervisory controller runs on (fitted offline).
struct ControllerModels {
    envelope::ThermalCircuitParams params;
    forecast::EquipmentModels equipment;
    std::shared_ptr<const gpr::GprModel> wet_bulb;    // latent formulation only
    std::shared_ptr<const forecast::QePredictor> qe;
};

// Equipment truth used by the plant: realized SHR from the linear model at
// the true return-air wet-bulb, realized COP from the latent map.
struct PlantEquipment {
    equipment::ShrModel shr;
    equipment::CopMap cop_map;
    double p_hp_max = 4.5;
};

struct Scenario {
    std::string label = "scenario";
    ControllerKind controller = ControllerKind::Benchmark;
    mpc::Mode mode = mpc::Mode::Cost;
    int duration_days = 1;
    double benchmark_setpoint = 23.0;
    // Optional hourly set-point pattern for the benchmark controller
    // (indexed by simulation hour, repeating). Used by training scenarios to
    // excite the identification data the way occupant schedule changes do.
    std::vector<double> benchmark_schedule;
    // The supervisory controller plans against the utility limit minus this
    // margin, absorbing prediction error; violation metrics always use the
    // utility limit itself.
    double controller_limit_margin_kw = 0.3;
    forecast::LimitSchedule limit;  // applied in power-limit mode and in metrics
    mpc::MpcConfig mpc_config;
    mpc::TuneConfig tune;
    int retune_period_hours = 12;
    PlantParams plant;
    MoistureSchedule moisture;
    InternalGains gains;
    PlantState initial_state;
    std::uint64_t seed = 0;  // recorded in outputs; the loop itself is deterministic
};

// Closed loop: hourly supervisory cadence over sub-hourly plant steps.
// `weather` must be hourly and cover duration_days plus one horizon beyond.
// `models` may be null for the benchmark controller.
TelemetryLog run_closed_loop(const Scenario& scenario, const std::vector<WeatherRecord>& weather,
                             const ControllerModels* models, const PlantEquipment& plant_equipment);

}  // namespace acmpc::sim
