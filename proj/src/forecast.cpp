#include "forecast.hpp"

#include <cmath>
#include <string>

#include "error.hpp"

namespace acmpc::forecast {

double power_limit_at(const LimitSchedule& schedule, int hour) {
    if (hour < 0 || hour > 23) throw_invalid("power_limit_at: hour must be in 0..23");
    if (!schedule.enabled) return kUnbounded;
    if (hour >= schedule.start_hour && hour < schedule.end_hour) return schedule.limit_kw;
    return kUnbounded;
}

gpr::Features wet_bulb_features(const WeatherRecord& w, double hour) {
    return {w.rh_out, w.t_out_c, hour, w.ghi_kw_m2, w.wind_m_s};
}

GprQe GprQe::train(std::span<const WeatherRecord> weather, std::span<const double> qe_series,
                   const gpr::FitConfig& config) {
    if (weather.size() < qe_series.size())
        throw_invalid("GprQe::train: weather series shorter than the disturbance series");
    std::vector<gpr::Features> feats;
    std::vector<double> targets;
    feats.reserve(qe_series.size());
    for (std::size_t i = 0; i < qe_series.size(); ++i) {
        feats.push_back(wet_bulb_features(weather[i], hour_of_day(weather[i].t)));
        targets.push_back(qe_series[i]);
    }
    return GprQe(gpr::GprModel::fit(feats, targets, config));
}

double GprQe::predict(const WeatherRecord& weather, double hour) const {
    return model_.predict(wet_bulb_features(weather, hour)).mean;
}

ForecastBundle assemble_bundle(std::span<const WeatherRecord> horizon,
                               const envelope::ThermalCircuitParams& params,
                               const EquipmentModels& equipment,
                               const gpr::GprModel* wet_bulb_model, Formulation formulation,
                               const QePredictor& qe, const LimitSchedule& schedule,
                               double dt_hours) {
    if (horizon.empty()) throw_invalid("assemble_bundle: empty weather horizon");
    if (formulation == Formulation::Latent && wet_bulb_model == nullptr)
        throw_invalid("assemble_bundle: latent formulation requires a wet-bulb model");

    ForecastBundle b;
    b.dt_hours = dt_hours;
    b.start_hour = hour_of_day(horizon[0].t);
    b.alpha = params.alpha;
    b.r_eff = params.r_eff;
    const std::size_t n = horizon.size();
    b.t_eq.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto& w = horizon[k];
        const double hour = hour_of_day(w.t);
        try {
            b.hour.push_back(hour);
            b.t_eq.push_back(equivalent_boundary(w.t_out_c, params));
            b.q_e.push_back(qe.predict(w, hour));
            if (formulation == Formulation::Latent) {
                const double wb = wet_bulb_model->predict(wet_bulb_features(w, hour)).mean;
                b.t_wb.push_back(wb);
                b.shr.push_back(equipment::shr(equipment.shr_linear, wb));
                b.cop.push_back(equipment::cop(equipment.latent_map, w.t_out_c, wb));
            } else {
                b.shr.push_back(equipment::shr(equipment.shr_constant, 0.0));
                b.cop.push_back(equipment::cop(equipment.sensible_map, w.t_out_c));
            }
            b.p_lim.push_back(power_limit_at(schedule, static_cast<int>(hour)));
        } catch (const Error& e) {
            throw Error(e.kind(), "assemble_bundle: step " + std::to_string(k) + ": " + e.what());
        }
    }
    return b;
}

}  // namespace acmpc::forecast
