#include "mpc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"

namespace acmpc::mpc {

void MpcConfig::validate() const {
    if (!(dt_hours > 0)) throw_invalid("MpcConfig: dt_hours must be positive");
    if (horizon < 1) throw_invalid("MpcConfig: horizon must be at least 1");
    if (pi_e < 0 || pi_d < 0 || pi_t < 0 || pi_peak < 0)
        throw_invalid("MpcConfig: prices must be nonnegative");
    if (!(delta > 0)) throw_invalid("MpcConfig: delta must be positive");
    if (!(p_hp_max > 0)) throw_invalid("MpcConfig: p_hp_max must be positive");
}

double power_limit_schedule(int hour, double limit_kw, int start_hour, int end_hour) {
    forecast::LimitSchedule s;
    s.enabled = true;
    s.limit_kw = limit_kw;
    s.start_hour = start_hour;
    s.end_hour = end_hour;
    return forecast::power_limit_at(s, hour);
}

lp::LinearProgram build_lp(const MpcConfig& config, const forecast::ForecastBundle& bundle,
                           double t_initial, Mode mode, LpLayout* layout_out) {
    config.validate();
    const int L = config.horizon;
    if (static_cast<int>(bundle.size()) != L)
        throw_invalid("build_lp: bundle horizon " + std::to_string(bundle.size()) +
                      " does not match config horizon " + std::to_string(L));

    LpLayout layout;
    layout.horizon = L;
    layout.has_hinge = mode == Mode::PowerLimit;

    lp::LinearProgram lp;
    const double dt = config.dt_hours;
    const double t_lo = config.t_pref - config.delta;
    const double t_hi = config.t_pref + config.delta;
    for (int k = 1; k <= L; ++k) lp.add_variable(0.0, t_lo, t_hi);                 // T_k
    for (int k = 0; k < L; ++k)
        lp.add_variable(0.0, 0.0, config.p_hp_max * bundle.cop[k]);               // Q_k
    for (int k = 0; k < L; ++k) lp.add_variable(config.pi_e * dt, 0.0, config.p_hp_max);  // P_k
    for (int k = 1; k <= L; ++k)
        lp.add_variable(config.pi_t * dt, 0.0, forecast::kUnbounded);             // D_k
    lp.add_variable(config.pi_d, 0.0, forecast::kUnbounded);                      // M
    if (layout.has_hinge)
        for (int k = 0; k < L; ++k)
            lp.add_variable(config.pi_peak * dt, 0.0, forecast::kUnbounded);      // H_k

    const double alpha = bundle.alpha;
    const double gain = (1.0 - alpha) * bundle.r_eff;

    // Dynamics: T_{k+1} - alpha T_k + gain Q_k = (1-alpha) t_eq_k + gain q_e_k,
    // with the measured T_0 folded into the first right-hand side. Cooling
    // enters negatively (the paper constrains Q_c >= 0, so heat extraction
    // must lower temperature).
    for (int k = 0; k < L; ++k) {
        const double rhs0 = (1.0 - alpha) * bundle.t_eq[k] + gain * bundle.q_e[k];
        if (k == 0) {
            lp.add_eq({{layout.t(1), 1.0}, {layout.q(0), gain}}, rhs0 + alpha * t_initial);
        } else {
            lp.add_eq({{layout.t(k + 1), 1.0}, {layout.t(k), -alpha}, {layout.q(k), gain}}, rhs0);
        }
    }

    // Electrical power coupling: P_k = Q_k / (SHR_k COP_k).
    for (int k = 0; k < L; ++k) {
        const double inv_sc = 1.0 / (bundle.shr[k] * bundle.cop[k]);
        lp.add_eq({{layout.p(k), 1.0}, {layout.q(k), -inv_sc}}, 0.0);
    }

    // Comfort deviation epigraph: D_k >= |T_pref - T_k|.
    for (int k = 1; k <= L; ++k) {
        lp.add_le({{layout.t(k), 1.0}, {layout.d(k), -1.0}}, config.t_pref);
        lp.add_le({{layout.t(k), -1.0}, {layout.d(k), -1.0}}, -config.t_pref);
    }

    // Peak epigraph: M >= P_k.
    for (int k = 0; k < L; ++k) lp.add_le({{layout.p(k), 1.0}, {layout.m(), -1.0}}, 0.0);

    // Limit-violation hinge: H_k >= P_k - P_lim_k and H_k >= 0. Unbounded
    // steps use the machine capacity, which makes the row vacuous.
    if (layout.has_hinge) {
        for (int k = 0; k < L; ++k) {
            const double lim = std::min(bundle.p_lim[k], config.p_hp_max);
            lp.add_le({{layout.p(k), 1.0}, {layout.h(k), -1.0}}, lim);
            lp.add_le({{layout.h(k), -1.0}}, 0.0);
        }
    }

    if (layout_out) *layout_out = layout;
    return lp;
}

namespace {

MpcPlan fallback_plan(double previous_setpoint, std::string note) {
    MpcPlan p;
    p.status = PlanStatus::Fallback;
    p.next_setpoint = previous_setpoint;
    p.note = std::move(note);
    return p;
}

}  // namespace

MpcPlan plan(const MpcConfig& config, const forecast::ForecastBundle& bundle, double t_initial,
             Mode mode, double previous_setpoint) {
    LpLayout layout;
    const auto lp_problem = build_lp(config, bundle, t_initial, mode, &layout);

    lp::Solution sol;
    try {
        sol = lp::solve(lp_problem);
    } catch (const Error& e) {
        return fallback_plan(previous_setpoint, std::string("solver failure: ") + e.what());
    }
    if (sol.status == lp::SolveStatus::Infeasible)
        return fallback_plan(previous_setpoint, "infeasible horizon");
    if (sol.status != lp::SolveStatus::Optimal)
        return fallback_plan(previous_setpoint, "solver did not reach optimality");

    const int L = config.horizon;
    MpcPlan p;
    p.status = PlanStatus::Optimal;
    p.t_traj.resize(L + 1);
    p.t_traj[0] = t_initial;
    p.q_cool.resize(L);
    p.p_elec.resize(L);
    for (int k = 1; k <= L; ++k) p.t_traj[k] = sol.x[layout.t(k)];
    for (int k = 0; k < L; ++k) {
        p.q_cool[k] = sol.x[layout.q(k)];
        p.p_elec[k] = sol.x[layout.p(k)];
    }
    const double dt = config.dt_hours;
    for (int k = 0; k < L; ++k) {
        p.cost.energy += config.pi_e * dt * p.p_elec[k];
        p.cost.discomfort += config.pi_t * dt * sol.x[layout.d(k + 1)];
        if (layout.has_hinge) p.cost.violation += config.pi_peak * dt * sol.x[layout.h(k)];
    }
    p.cost.peak = config.pi_d * sol.x[layout.m()];
    p.lp_objective = sol.objective;

    // Feasibility report: dynamics residual and worst inequality slack.
    const double gain = (1.0 - bundle.alpha) * bundle.r_eff;
    double resid = 0.0;
    for (int k = 0; k < L; ++k) {
        const double pred = bundle.alpha * p.t_traj[k] +
                            (1.0 - bundle.alpha) * bundle.t_eq[k] +
                            gain * (bundle.q_e[k] - p.q_cool[k]);
        resid = std::max(resid, std::fabs(p.t_traj[k + 1] - pred));
    }
    p.dynamics_residual = resid;
    double slack = 0.0;
    for (int k = 0; k < L; ++k) {
        slack = std::min(slack, p.p_elec[k]);
        slack = std::min(slack, config.p_hp_max - p.p_elec[k]);
        slack = std::min(slack, p.q_cool[k]);
        slack = std::min(slack, config.p_hp_max * bundle.cop[k] - p.q_cool[k]);
        slack = std::min(slack, config.delta - std::fabs(config.t_pref - p.t_traj[k + 1]));
    }
    p.constraint_slack = slack;

    p.next_setpoint = p.t_traj[1];
    return p;
}

std::vector<double> default_price_grid() {
    // 15 log-spaced candidates over 0.001 .. 10 $/degC h.
    std::vector<double> grid;
    const int n = 15;
    for (int i = 0; i < n; ++i)
        grid.push_back(std::pow(10.0, -3.0 + 4.0 * static_cast<double>(i) / (n - 1)));
    return grid;
}

TuneResult tune_discomfort_price(const MpcConfig& config, const forecast::ForecastBundle& bundle,
                                 double t_initial, Mode mode, const TuneConfig& tune) {
    std::vector<double> grid = tune.grid.empty() ? default_price_grid() : tune.grid;
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw_invalid("tune_discomfort_price: price grid must be ascending");

    TuneResult result;
    const int L = config.horizon;
    bool any_feasible = false;
    double last_ppd = 0.0;
    for (double candidate : grid) {
        MpcConfig c = config;
        c.pi_t = candidate;
        const MpcPlan p = plan(c, bundle, t_initial, mode, config.t_pref);
        if (p.status != PlanStatus::Optimal) {
            ++result.infeasible_candidates;
            continue;
        }
        any_feasible = true;

        // Planned temperatures (plus the tracking margin) against forecast
        // humidity. The latent bundle carries a wet-bulb forecast; otherwise
        // fall back to the configured constant humidity.
        std::vector<double> t(p.t_traj.begin() + 1, p.t_traj.end());
        for (double& tv : t) tv += tune.tracking_margin_c;
        std::vector<double> rh(L, tune.comfort.fallback_rh);
        if (!bundle.t_wb.empty())
            for (int k = 0; k < L; ++k)
                rh[k] = psychro::rh_from_wet_bulb(t[k], std::min(bundle.t_wb[k], t[k]));
        const auto comfort = psychro::comfort_series(t, rh, config.dt_hours, tune.comfort);
        last_ppd = comfort.mean_ppd;
        if (comfort.mean_ppd <= tune.ppd_threshold) {
            result.pi_t = tune.safety_factor * candidate;
            result.selected_grid_value = candidate;
            result.mean_ppd = comfort.mean_ppd;
            return result;
        }
    }
    if (!any_feasible)
        throw Error(ErrorKind::Infeasible,
                    "tune_discomfort_price: every candidate plan was infeasible");
    result.grid_exhausted = true;
    result.selected_grid_value = grid.back();
    result.pi_t = tune.safety_factor * grid.back();
    result.mean_ppd = last_ppd;
    return result;
}

}  // namespace acmpc::mpc
