#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "forecast.hpp"
#include "telemetry.hpp"

namespace acmpc::metrics {

struct DailySummary {
    std::string date;  // YYYY-MM-DD
    std::string controller;
    double energy_kwh = 0;                  // heat pump electrical energy
    double delta_t = 0;                     // mean outdoor-indoor difference, degC
    double violation_minutes = 0;           // within the limit window
    double violation_magnitude_mean_kw = 0; // conditional mean excess
    bool any_violation = false;
};

std::vector<DailySummary> summarize_daily(const TelemetryLog& log,
                                          const forecast::LimitSchedule& schedule);

// Cumulative energy over cumulative temperature difference, kWh/degC.
double weather_normalized_energy(std::span<const DailySummary> days);

struct SlopeFit {
    double mean = 0;    // kWh/degC
    double std = 0;     // standard error of the slope
    double offset = 0;  // shared x-offset, degC
};

// Through-origin regression of daily energy on (delta_t + offset) for each
// arm. The shared offset makes the savings ratio collapse to 1 - m1/m2.
std::pair<SlopeFit, SlopeFit> fit_savings_slopes(std::span<const DailySummary> mpc_days,
                                                 std::span<const DailySummary> baseline_days,
                                                 double offset = 6.2);

struct SavingsCi {
    double mean_pct = 0;
    double lo_pct = 0;   // 2.5th percentile
    double hi_pct = 0;   // 97.5th percentile
    int rejected = 0;    // near-zero denominator draws discarded
};

// Monte Carlo over the two slope distributions of 1 - m1/m2.
SavingsCi savings_ci(const SlopeFit& m1, const SlopeFit& m2, std::size_t samples,
                     std::uint64_t seed);

struct ViolationStats {
    double minutes_per_day = 0;
    double mean_excess_kw = 0;  // conditional on violation; 0 with any=false
    bool any = false;
};

ViolationStats violation_stats(const TelemetryLog& log, const forecast::LimitSchedule& schedule);

struct AnnualProjection {
    double mean_usd = 0;
    double lo_usd = 0;
    double hi_usd = 0;
    std::vector<double> cumulative_mean;  // running expected savings, $ per day index
};

// Integrate the two temperature-normalized cost models over a year of daily
// temperature differences, with Monte Carlo over the slope uncertainty.
AnnualProjection annual_cost_projection(const SlopeFit& m1, const SlopeFit& m2,
                                        std::span<const double> year_delta_t, double price_per_kwh,
                                        std::size_t samples, std::uint64_t seed);

}  // namespace acmpc::metrics
