#include "simkit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <span>

#include "error.hpp"
#include "psychro.hpp"

namespace acmpc::sim {

namespace {

constexpr double kHfgKjPerKg = 2257.0;  // latent heat of vaporization
constexpr double kAirDensity = 1.2;     // kg/m3
constexpr double kMinHumidityRatio = 5e-5;

// Portable deterministic uniforms/normals on top of the standardized
// mt19937_64 bit stream (library distributions vary across toolchains).
struct Rng {
    std::mt19937_64 engine;
    explicit Rng(std::uint64_t seed) : engine(seed) {}
    double uniform() { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }
    double normal() {
        double u1 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }
};

double bump(double hour, double center, double width) {
    double d = std::fabs(hour - center);
    d = std::min(d, 24.0 - d);  // wrap around midnight
    return std::exp(-0.5 * (d / width) * (d / width));
}

WeatherRecord interpolate(const std::vector<WeatherRecord>& hourly, TimePoint t) {
    if (hourly.empty()) throw_invalid("weather series is empty");
    const double h = static_cast<double>(t.epoch_seconds - hourly.front().t.epoch_seconds) / 3600.0;
    if (h <= 0) return hourly.front();
    const std::size_t i = static_cast<std::size_t>(h);
    if (i + 1 >= hourly.size()) return hourly.back();
    const double f = h - static_cast<double>(i);
    const auto& a = hourly[i];
    const auto& b = hourly[i + 1];
    WeatherRecord w;
    w.t = t;
    w.t_out_c = a.t_out_c + f * (b.t_out_c - a.t_out_c);
    w.rh_out = a.rh_out + f * (b.rh_out - a.rh_out);
    w.ghi_kw_m2 = a.ghi_kw_m2 + f * (b.ghi_kw_m2 - a.ghi_kw_m2);
    w.wind_m_s = a.wind_m_s + f * (b.wind_m_s - a.wind_m_s);
    return w;
}

}  // namespace

double MoistureSchedule::rate(double hour) const {
    return base_kg_h + morning_kg_h * bump(hour, morning_hour, peak_width_h) +
           evening_kg_h * bump(hour, evening_hour, peak_width_h);
}

double InternalGains::rate(double hour) const {
    return base_kw + peak_kw * (bump(hour, 7.0, 1.5) + bump(hour, 19.0, 2.0));
}

PlantState plant_step(const PlantParams& plant, const PlantState& state,
                      const WeatherRecord& weather, double q_cool_kw, double shr_realized,
                      double dt_hours, double gains_kw, double moisture_gen_kg_h,
                      PlantStepEvents* events) {
    if (!(q_cool_kw >= 0)) throw_invalid("plant_step: q_cool must be nonnegative");
    if (!(dt_hours > 0)) throw_invalid("plant_step: dt must be positive");

    PlantState next = state;

    // Thermal balance on the air node and the slow mass node.
    const double q_air = (weather.t_out_c - state.t_in) / plant.r_out_air +
                         (state.t_mass - state.t_in) / plant.r_mass +
                         plant.solar_aperture * weather.ghi_kw_m2 + gains_kw - q_cool_kw;
    next.t_in = state.t_in + q_air / plant.c_air * dt_hours;
    const double q_mass = (state.t_in - state.t_mass) / plant.r_mass +
                          (plant.t_ground - state.t_mass) / plant.r_mass_ground;
    next.t_mass = state.t_mass + q_mass / plant.c_mass * dt_hours;

    // Moisture balance. Latent extraction follows the realized SHR.
    const double m_air = plant.volume_m3 * kAirDensity;  // kg of indoor air
    const double w_out =
        psychro::humidity_ratio(weather.t_out_c, std::clamp(weather.rh_out, 0.0, 1.0));
    const double infil_kg_h = plant.infiltration_ach * m_air * (w_out - state.w_in);
    const double latent_kw = shr_realized > 0 ? q_cool_kw * (1.0 / shr_realized - 1.0) : 0.0;
    double latent_kg_h = latent_kw * 3600.0 / kHfgKjPerKg;
    const double removable_kg_h = std::max(0.0, (state.w_in - kMinHumidityRatio) * m_air / dt_hours);
    if (latent_kg_h > removable_kg_h) {
        latent_kg_h = removable_kg_h;
        if (events) ++events->clamped;
    }
    next.w_in = state.w_in + (moisture_gen_kg_h + infil_kg_h - latent_kg_h) * dt_hours / m_air;
    if (next.w_in < kMinHumidityRatio) {
        next.w_in = kMinHumidityRatio;
        if (events) ++events->clamped;
    }
    const double w_sat = psychro::humidity_ratio(next.t_in, 1.0);
    if (next.w_in > w_sat) {
        next.w_in = w_sat;  // condensation cap
        if (events) ++events->clamped;
    }
    return next;
}

double device_tracker(double t_in, double setpoint, double k_p, double deadband,
                      double capacity_kw) {
    if (!(capacity_kw >= 0)) throw_invalid("device_tracker: capacity must be nonnegative");
    const double err = t_in - setpoint;
    if (err <= deadband) return 0.0;
    return std::clamp(k_p * err, 0.0, capacity_kw);
}

WeatherProfile WeatherProfile::hot_humid() {
    WeatherProfile p;
    p.name = "hot_humid";
    p.t_mean = 29.5;
    p.t_amp = 5.5;
    p.peak_hour = 16.5;
    p.day_amp = 0.5;
    p.t_noise = 0.5;
    p.rh_mean = 0.72;
    p.rh_amp = 0.14;
    p.solar_peak = 0.85;
    p.wind_mean = 2.5;
    return p;
}

WeatherProfile WeatherProfile::mild_dry() {
    WeatherProfile p;
    p.name = "mild_dry";
    p.t_mean = 22.5;
    p.t_amp = 4.5;
    p.rh_mean = 0.50;
    p.rh_amp = 0.14;
    p.solar_peak = 0.80;
    p.wind_mean = 3.5;
    return p;
}

std::vector<WeatherRecord> weather_synth(const WeatherProfile& profile, int days,
                                         std::uint64_t seed, TimePoint start) {
    if (days < 1) throw_invalid("weather_synth: days must be at least 1");
    Rng rng(seed);
    std::vector<WeatherRecord> out;
    out.reserve(static_cast<std::size_t>(days) * 24);
    double t_ar = 0.0, rh_ar = 0.0;
    const double phi = 0.9;
    const double scale = std::sqrt(1.0 - phi * phi);
    for (int d = 0; d < days; ++d) {
        const double drift = profile.day_amp * std::sin(2.0 * std::numbers::pi * d / 6.0);
        for (int h = 0; h < 24; ++h) {
            t_ar = phi * t_ar + profile.t_noise * scale * rng.normal();
            rh_ar = phi * rh_ar + profile.rh_noise * scale * rng.normal();
            const double phase = 2.0 * std::numbers::pi * (h - profile.peak_hour) / 24.0;
            WeatherRecord w;
            w.t = add_hours(start, d * 24.0 + h);
            w.t_out_c = profile.t_mean + drift + profile.t_amp * std::cos(phase) + t_ar;
            w.rh_out = std::clamp(profile.rh_mean - profile.rh_amp * std::cos(phase) + rh_ar,
                                  0.15, 0.98);
            const double sun = std::sin(std::numbers::pi * (h - 6.0) / 12.0);
            const double cloud = 1.0 - 0.25 * std::fabs(rng.normal()) * 0.5;
            w.ghi_kw_m2 = h >= 6 && h <= 18 ? std::max(0.0, profile.solar_peak * sun * cloud) : 0.0;
            w.wind_m_s = std::max(0.0, profile.wind_mean * (1.0 + 0.3 * rng.normal()));
            out.push_back(w);
        }
    }
    return out;
}

ControllerKind controller_from_string(const std::string& s) {
    if (s == "benchmark") return ControllerKind::Benchmark;
    if (s == "mpc_sensible") return ControllerKind::MpcSensible;
    if (s == "mpc_latent") return ControllerKind::MpcLatent;
    throw_data("unknown controller '" + s + "' (expected benchmark|mpc_sensible|mpc_latent)");
}

std::string to_string(ControllerKind c) {
    switch (c) {
        case ControllerKind::Benchmark: return "benchmark";
        case ControllerKind::MpcSensible: return "mpc_sensible";
        case ControllerKind::MpcLatent: return "mpc_latent";
    }
    return "unknown";
}

TelemetryLog run_closed_loop(const Scenario& scenario, const std::vector<WeatherRecord>& weather,
                             const ControllerModels* models,
                             const PlantEquipment& plant_equipment) {
    const bool is_mpc = scenario.controller != ControllerKind::Benchmark;
    if (is_mpc && models == nullptr)
        throw_invalid("run_closed_loop: MPC controller requires fitted models");
    if (scenario.duration_days < 1) throw_invalid("run_closed_loop: duration must be >= 1 day");

    const int total_hours = scenario.duration_days * 24;
    const int horizon = scenario.mpc_config.horizon;
    if (static_cast<int>(weather.size()) < total_hours + (is_mpc ? horizon : 0))
        throw_invalid("run_closed_loop: weather series too short for the scenario horizon");

    const int steps_per_hour = static_cast<int>(std::lround(60.0 / scenario.plant.step_minutes));
    const double dt = 1.0 / steps_per_hour;
    const TimePoint start = weather.front().t;

    const forecast::Formulation formulation = scenario.controller == ControllerKind::MpcLatent
                                                  ? forecast::Formulation::Latent
                                                  : forecast::Formulation::Sensible;

    TelemetryLog log;
    log.dt_hours = dt;
    log.label = scenario.label;

    PlantState state = scenario.initial_state;
    mpc::MpcConfig cfg = scenario.mpc_config;
    double setpoint = is_mpc ? cfg.t_pref : scenario.benchmark_setpoint;

    forecast::LimitSchedule planner_limit = scenario.limit;
    planner_limit.limit_kw =
        std::max(0.5, planner_limit.limit_kw - scenario.controller_limit_margin_kw);

    for (int hour = 0; hour < total_hours; ++hour) {
        if (!is_mpc && !scenario.benchmark_schedule.empty())
            setpoint = scenario.benchmark_schedule[hour % scenario.benchmark_schedule.size()];
        if (is_mpc) {
            const std::span<const WeatherRecord> slice(weather.data() + hour,
                                                       static_cast<std::size_t>(horizon));
            try {
                const auto bundle = forecast::assemble_bundle(
                    slice, models->params, models->equipment,
                    formulation == forecast::Formulation::Latent ? models->wet_bulb.get() : nullptr,
                    formulation, *models->qe, planner_limit, cfg.dt_hours);

                if (hour % scenario.retune_period_hours == 0) {
                    try {
                        const auto tuned = mpc::tune_discomfort_price(cfg, bundle, state.t_in,
                                                                      scenario.mode, scenario.tune);
                        cfg.pi_t = tuned.pi_t;
                    } catch (const Error&) {
                        ++log.controller_errors;  // keep the previous price
                    }
                }

                const auto p = mpc::plan(cfg, bundle, state.t_in, scenario.mode, setpoint);
                if (p.status != mpc::PlanStatus::Optimal) ++log.controller_errors;
                setpoint = p.next_setpoint;
            } catch (const Error&) {
                ++log.controller_errors;  // hold the previous set-point
            }
        }

        for (int s = 0; s < steps_per_hour; ++s) {
            const TimePoint now = add_hours(start, hour + s * dt);
            const WeatherRecord w = interpolate(weather, now);
            const double hour_frac = hour_of_day(now);

            const double rh_in =
                std::clamp(psychro::relative_humidity(state.t_in, state.w_in), 0.05, 1.0);
            const double t_wb_true = psychro::wet_bulb(state.t_in, rh_in);
            const double shr_real = equipment::shr(plant_equipment.shr, t_wb_true);
            const double cop_real = equipment::cop(plant_equipment.cop_map, w.t_out_c, t_wb_true);
            const double capacity = plant_equipment.p_hp_max * shr_real * cop_real;

            const double q_cool = device_tracker(state.t_in, setpoint, scenario.plant.k_p,
                                                 scenario.plant.deadband, capacity);
            const double p_elec = q_cool > 0 ? q_cool / (shr_real * cop_real) : 0.0;
            const double q_latent = q_cool * (1.0 / shr_real - 1.0);

            TelemetryRecord rec;
            rec.t = now;
            rec.t_in = state.t_in;
            rec.t_out = w.t_out_c;
            rec.q_cool_kw = q_cool;
            rec.p_kw = p_elec;
            rec.rh_in = rh_in;
            rec.rh_out = w.rh_out;
            rec.t_wb_return = t_wb_true;
            rec.setpoint = setpoint;
            rec.q_latent_kw = q_latent;
            rec.shr_realized = shr_real;
            log.records.push_back(rec);

            const double gains = scenario.gains.rate(hour_frac);
            const double moisture = scenario.moisture.rate(hour_frac);
            state = plant_step(scenario.plant, state, w, q_cool, shr_real, dt, gains, moisture);
        }
    }
    return log;
}

}  // namespace acmpc::sim
