#pragma once

#include <cstdint>
#include <vector>

#include "equipment.hpp"
#include "forecast.hpp"
#include "simkit.hpp"
#include "telemetry.hpp"

namespace acmpc::fixtures {

// Manufacturer-like performance table for a 14 kW (rated) unit with
// a seasonal cooling COP of 5.3 at mild conditions. Generated from a fixed
// quadratic surface with a small deterministic measurement perturbation so
// the bundled fits are exercised but reproducible.
equipment::PerformanceTable reference_performance_table();

// The quadratic the table is generated from, exposed for round-trip tests.
double reference_cop(double t_wb, double t_out);
double reference_total_kw(double t_wb, double t_out);
double reference_shr(double t_wb);

// Training-month weather profile (warm, moderately humid).
sim::WeatherProfile july_profile();

inline constexpr std::uint64_t kJulySeed = 20230701;
inline constexpr std::uint64_t kEvalSeed = 20230801;

std::vector<WeatherRecord> july_weather(int days = 21);

// Occupant-style set-point pattern used for identification data: steps
// around the base plus one free-float day in five.
std::vector<double> training_setpoint_schedule(double base);

// Benchmark month under the training schedule on the July weather; the
// repository's bundled telemetry fixture.
TelemetryLog july_telemetry(int days = 14);

// Plant truth and controller equipment fitted from the reference table.
struct EquipmentFixture {
    sim::PlantEquipment plant;
    forecast::EquipmentModels controller;
    equipment::ShrFit shr_fit;
    double latent_r2 = 0;
};

EquipmentFixture fit_reference_equipment(double p_hp_max = 4.5);

}  // namespace acmpc::fixtures
