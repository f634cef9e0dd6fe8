#pragma once

#include <string>
#include <vector>

#include "forecast.hpp"
#include "lp.hpp"
#include "psychro.hpp"

namespace acmpc::mpc {

struct MpcConfig {
    double dt_hours = 1.0;
    int horizon = 24;
    double pi_e = 0.14;    // energy price, $/kWh
    double pi_d = 0.8;     // peak demand price, $/kW
    double pi_t = 0.1;     // discomfort price, $/degC h (auto-tuned in operation)
    double pi_peak = 1.4;  // limit-violation price, $/kWh
    double t_pref = 23.0;  // preference temperature, degC
    double delta = 3.0;    // hard comfort band half-width, degC
    double p_hp_max = 4.5; // heat pump electrical capacity, kW

    void validate() const;
};

enum class Mode { Cost, PowerLimit };

// Variable layout of the open-loop problem, exposed for tests and
// documentation. For a horizon of L steps:
//   T_k  (k=1..L)  indoor temperature, bounds [t_pref-delta, t_pref+delta]
//   Q_k  (k=0..L-1) sensible cooling rate, bounds [0, p_hp_max cop_k]
//   P_k  (k=0..L-1) electrical power, bounds [0, p_hp_max]
//   D_k  (k=1..L)  |T_pref - T_k| epigraph
//   M              peak-power epigraph
//   H_k  (k=0..L-1) limit-violation hinge (power-limit mode only)
struct LpLayout {
    int horizon = 0;
    bool has_hinge = false;
    int t(int k) const { return k - 1; }              // k in 1..L
    int q(int k) const { return horizon + k; }        // k in 0..L-1
    int p(int k) const { return 2 * horizon + k; }    // k in 0..L-1
    int d(int k) const { return 3 * horizon + k - 1; } // k in 1..L
    int m() const { return 4 * horizon; }
    int h(int k) const { return 4 * horizon + 1 + k; } // k in 0..L-1
    int num_vars() const { return has_hinge ? 5 * horizon + 1 : 4 * horizon + 1; }
};

lp::LinearProgram build_lp(const MpcConfig& config, const forecast::ForecastBundle& bundle,
                           double t_initial, Mode mode, LpLayout* layout = nullptr);

struct ObjectiveBreakdown {
    double energy = 0;      // $
    double peak = 0;
    double discomfort = 0;
    double violation = 0;
    double total() const { return energy + peak + discomfort + violation; }
};

enum class PlanStatus { Optimal, Fallback };

struct MpcPlan {
    PlanStatus status = PlanStatus::Fallback;
    std::vector<double> t_traj;   // L+1 temperatures, t_traj[0] = t_initial
    std::vector<double> q_cool;   // L cooling rates, kW
    std::vector<double> p_elec;   // L electrical powers, kW
    ObjectiveBreakdown cost;
    double next_setpoint = 0;     // first planned temperature (or the fallback)
    double lp_objective = 0;
    double dynamics_residual = 0; // max |dynamics violation|, degC
    double constraint_slack = 0;  // most negative inequality slack
    std::string note;
};

// Build and solve the open-loop problem. Infeasible or numerically failed
// solves return a Fallback plan carrying previous_setpoint.
MpcPlan plan(const MpcConfig& config, const forecast::ForecastBundle& bundle, double t_initial,
             Mode mode, double previous_setpoint);

// Eq-style demand-response limit lookup (half-open window, defaults
// 2.5 kW over hours 16..20).
double power_limit_schedule(int hour, double limit_kw = 2.5, int start_hour = 16,
                            int end_hour = 20);

struct TuneConfig {
    std::vector<double> grid;           // ascending candidate prices (empty = default log grid)
    psychro::ComfortAssumptions comfort;
    double ppd_threshold = 10.0;        // % time-average PPD
    double safety_factor = 1.1;
    // The device-level tracker holds the zone slightly above the planned
    // temperature under load; the comfort walk evaluates the plan at this
    // offset so the realized PPD lands under the threshold too.
    double tracking_margin_c = 0.6;
};

std::vector<double> default_price_grid();  // log-spaced 0.001..10 $/degC h, 15 points

struct TuneResult {
    double pi_t = 0;                 // selected price after the safety factor
    double selected_grid_value = 0;  // grid value before the factor
    double mean_ppd = 0;             // of the selected plan
    bool grid_exhausted = false;     // no grid value met the threshold
    int infeasible_candidates = 0;
};

// Sweep the price grid, plan at each candidate, walk the planned
// temperatures and forecast humidity through the comfort model, and pick
// the smallest price whose time-average PPD meets the threshold.
TuneResult tune_discomfort_price(const MpcConfig& config, const forecast::ForecastBundle& bundle,
                                 double t_initial, Mode mode, const TuneConfig& tune = {});

}  // namespace acmpc::mpc
