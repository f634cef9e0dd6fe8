#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "envelope.hpp"
#include "equipment.hpp"
#include "gpr.hpp"
#include "telemetry.hpp"

namespace acmpc::forecast {

enum class Formulation { Sensible, Latent };

// Demand-response power limit: limit_kw inside [start_hour, end_hour),
// unbounded otherwise. Disabled schedules are unbounded everywhere.
struct LimitSchedule {
    bool enabled = false;
    double limit_kw = 2.5;
    int start_hour = 16;
    int end_hour = 20;
};

constexpr double kUnbounded = std::numeric_limits<double>::infinity();

double power_limit_at(const LimitSchedule& schedule, int hour);

// Per-step optimizer inputs over the prediction horizon, together with the
// discrete dynamics parameters they were assembled under.
struct ForecastBundle {
    double dt_hours = 1.0;
    double start_hour = 0;         // hour of day of step 0
    double alpha = 0.86;           // discrete dynamics parameter
    double r_eff = 1.04;           // effective resistance, degC/kW
    std::vector<double> t_eq;      // equivalent boundary temperature, degC
    std::vector<double> q_e;       // exogenous thermal power, kW
    std::vector<double> cop;       // total-cooling COP
    std::vector<double> shr;       // sensible heat ratio, (0, 1]
    std::vector<double> p_lim;     // electrical limit, kW (may be +inf)
    std::vector<double> t_wb;      // forecast indoor wet-bulb (latent only, else empty)
    std::vector<double> hour;      // hour of day per step

    std::size_t size() const { return t_eq.size(); }
};

// Exogenous thermal power predictor interface. The default implementations
// are a GP on the wet-bulb feature set and a constant fallback.
class QePredictor {
public:
    virtual ~QePredictor() = default;
    virtual double predict(const WeatherRecord& weather, double hour) const = 0;
};

class ConstantQe : public QePredictor {
public:
    explicit ConstantQe(double value_kw = 3.4) : value_(value_kw) {}
    double predict(const WeatherRecord&, double) const override { return value_; }

private:
    double value_;
};

class GprQe : public QePredictor {
public:
    explicit GprQe(gpr::GprModel model) : model_(std::move(model)) {}

    static GprQe train(std::span<const WeatherRecord> weather, std::span<const double> qe_series,
                       const gpr::FitConfig& config = {});

    double predict(const WeatherRecord& weather, double hour) const override;
    const gpr::GprModel& model() const { return model_; }

private:
    gpr::GprModel model_;
};

struct EquipmentModels {
    equipment::CopMap sensible_map;
    equipment::CopMap latent_map;
    equipment::ShrModel shr_constant = equipment::ShrModel::constant(0.86);
    equipment::ShrModel shr_linear;
};

gpr::Features wet_bulb_features(const WeatherRecord& w, double hour);

// Assemble the optimizer inputs for one horizon. The latent formulation
// routes the wet-bulb prediction through the GP and evaluates the bivariate
// COP map; the sensible formulation uses the constant SHR and the
// outdoor-only COP map. wet_bulb_model may be null for the sensible case.
ForecastBundle assemble_bundle(std::span<const WeatherRecord> horizon,
                               const envelope::ThermalCircuitParams& params,
                               const EquipmentModels& equipment,
                               const gpr::GprModel* wet_bulb_model, Formulation formulation,
                               const QePredictor& qe, const LimitSchedule& schedule,
                               double dt_hours = 1.0);

}  // namespace acmpc::forecast
