#include "fixtures.hpp"

#include <cmath>
#include <random>

#include "psychro.hpp"

namespace acmpc::fixtures {

double reference_cop(double t_wb, double t_out) {
    const double u = 28.0 - t_out;
    const double v = t_wb - 18.0;
    return 5.3 + 0.28 * u + 0.002 * u * u + 0.022 * v + 0.0009 * u * v - 0.0012 * v * v;
}

double reference_total_kw(double t_wb, double t_out) {
    return 14.0 * (1.0 + 0.012 * (t_wb - 19.0) - 0.005 * (t_out - 35.0));
}

double reference_shr(double t_wb) { return -0.03 * t_wb + 1.385; }

equipment::PerformanceTable reference_performance_table() {
    std::mt19937_64 rng(0x5eed1401u);
    auto jitter = [&rng](double scale) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        return 1.0 + scale * (2.0 * u - 1.0);
    };
    equipment::PerformanceTable table;
    for (double wb : {14.0, 16.0, 18.0, 20.0, 22.0, 24.0}) {
        for (double to : {20.0, 24.0, 28.0, 32.0, 36.0, 40.0}) {
            equipment::PerformanceRow r;
            r.t_wb_c = wb;
            r.t_out_c = to;
            const double total = reference_total_kw(wb, to) * jitter(0.004);
            const double shr = reference_shr(wb) * jitter(0.003);
            r.total_kw = total;
            r.sensible_kw = std::min(total, shr * total);
            r.power_kw = total / (reference_cop(wb, to) * jitter(0.004));
            table.push_back(r);
        }
    }
    return table;
}

sim::WeatherProfile july_profile() {
    sim::WeatherProfile p;
    p.name = "july";
    p.t_mean = 27.0;
    p.t_amp = 5.0;
    p.day_amp = 2.2;
    p.rh_mean = 0.68;
    p.rh_amp = 0.15;
    p.solar_peak = 0.85;
    p.wind_mean = 3.0;
    return p;
}

std::vector<WeatherRecord> july_weather(int days) {
    return sim::weather_synth(july_profile(), days, kJulySeed);
}

std::vector<double> training_setpoint_schedule(double base) {
    std::vector<double> schedule;
    auto block = [&](double sp, int hours) {
        for (int i = 0; i < hours; ++i) schedule.push_back(sp);
    };
    block(base, 8); block(base + 1.5, 8); block(base, 8);         // day 1
    block(base - 0.5, 12); block(base + 2.0, 12);                 // day 2
    block(base, 24);                                              // day 3
    block(base + 3.0, 6); block(base, 8); block(base + 1.0, 10);  // day 4
    block(base + 6.0, 24);                                        // day 5: free float
    return schedule;
}

TelemetryLog july_telemetry(int days) {
    const auto weather = july_weather(days + 1);
    sim::Scenario s;
    s.label = "july_benchmark";
    s.controller = sim::ControllerKind::Benchmark;
    s.duration_days = days;
    s.benchmark_schedule = training_setpoint_schedule(23.0);
    s.initial_state.t_in = 23.0;
    s.initial_state.t_mass = 23.0;
    s.initial_state.w_in = psychro::humidity_ratio(23.0, 0.55);
    const auto equipment = fit_reference_equipment();
    return sim::run_closed_loop(s, weather, nullptr, equipment.plant);
}

EquipmentFixture fit_reference_equipment(double p_hp_max) {
    const auto table = reference_performance_table();
    EquipmentFixture fx;
    fx.shr_fit = equipment::fit_shr(table);
    const auto latent = equipment::fit_cop(table, equipment::CopForm::Latent);
    const auto sensible = equipment::fit_cop(table, equipment::CopForm::Sensible);
    fx.latent_r2 = std::get<equipment::CopMapLatent>(latent).r2;

    fx.controller.sensible_map = sensible;
    fx.controller.latent_map = latent;
    fx.controller.shr_constant = equipment::ShrModel::constant(0.86);
    fx.controller.shr_linear = fx.shr_fit.model;

    fx.plant.shr = fx.shr_fit.model;
    fx.plant.cop_map = latent;
    fx.plant.p_hp_max = p_hp_max;
    return fx;
}

}  // namespace acmpc::fixtures
