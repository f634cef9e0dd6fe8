#include "psychro.hpp"

#include <cmath>
#include <string>

#include "error.hpp"

namespace acmpc::psychro {

namespace {
constexpr double kStandardPressureKpa = 101.325;
}

double saturation_pressure_kpa(double t_c) {
    // Magnus coefficients (Alduchov-Eskridge), good to ~0.4% over -40..50 degC.
    return 0.61094 * std::exp(17.625 * t_c / (t_c + 243.04));
}

double humidity_ratio(double t_c, double rh) {
    const double pv = rh * saturation_pressure_kpa(t_c);
    return 0.622 * pv / (kStandardPressureKpa - pv);
}

double relative_humidity(double t_c, double w) {
    const double pv = kStandardPressureKpa * w / (0.622 + w);
    return pv / saturation_pressure_kpa(t_c);
}

double dew_point(double t_c, double rh) {
    const double pv = rh * saturation_pressure_kpa(t_c);
    const double x = std::log(pv / 0.61094);
    return 243.04 * x / (17.625 - x);
}

double wet_bulb(double t_db, double rh) {
    if (!(t_db >= -20.0 && t_db <= 50.0))
        throw_invalid("wet_bulb: t_db=" + std::to_string(t_db) + " outside [-20, 50] degC");
    if (!(rh >= 0.05 && rh <= 1.0))
        throw_invalid("wet_bulb: rh=" + std::to_string(rh) + " outside [0.05, 1]");
    const double rhp = rh * 100.0;  // Stull's fit takes percent
    return t_db * std::atan(0.151977 * std::sqrt(rhp + 8.313659)) + std::atan(t_db + rhp) -
           std::atan(rhp - 1.676331) + 0.00391838 * std::pow(rhp, 1.5) * std::atan(0.023101 * rhp) -
           4.686035;
}

double rh_from_wet_bulb(double t_db, double t_wb) {
    double lo = 0.05, hi = 1.0;
    if (t_wb <= wet_bulb(t_db, lo)) return lo;
    if (t_wb >= wet_bulb(t_db, hi)) return hi;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (wet_bulb(t_db, mid) < t_wb)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

MoistAirState MoistAirState::from_rh(double t_db, double rh) {
    MoistAirState s;
    s.t_db = t_db;
    s.rh = rh;
    s.t_wb = wet_bulb(t_db, rh);
    return s;
}

void ComfortInputs::validate() const {
    if (!(v_air >= 0)) throw_invalid("ComfortInputs: v_air must be >= 0");
    if (!(met > 0)) throw_invalid("ComfortInputs: met must be > 0");
    if (!(clo >= 0)) throw_invalid("ComfortInputs: clo must be >= 0");
    if (!(rh >= 0.0 && rh <= 1.0)) throw_invalid("ComfortInputs: rh must be in [0, 1]");
}

double pmv(const ComfortInputs& in) {
    in.validate();

    const double pa = in.rh * 100.0 * 10.0 * std::exp(16.6536 - 4030.183 / (in.t_db + 235.0));
    const double icl = 0.155 * in.clo;  // m2K/W
    const double m = in.met * 58.15;    // W/m2
    const double mw = m;                // no external work
    const double fcl = icl > 0.078 ? 1.05 + 0.645 * icl : 1.0 + 1.29 * icl;
    const double hcf = 12.1 * std::sqrt(in.v_air);
    const double taa = in.t_db + 273.0;
    const double tra = in.t_r + 273.0;

    // Clothing surface temperature fixed point, damped (successive halving).
    const double p1 = icl * fcl;
    const double p2 = p1 * 3.96;
    const double p3 = p1 * 100.0;
    const double p4 = p1 * taa;
    const double p5 = 308.7 - 0.028 * mw + p2 * std::pow(tra / 100.0, 4);
    double xn = (taa + (35.5 - in.t_db) / (3.5 * icl + 0.1)) / 100.0;
    double xf = 2.0 * xn;
    double hc = hcf;
    int iter = 0;
    while (std::fabs(xn - xf) > 1e-7) {  // 1e-7 on tcl/100 == 1e-5 degC
        xf = 0.5 * (xf + xn);
        const double hcn = 2.38 * std::pow(std::fabs(100.0 * xf - taa), 0.25);
        hc = std::max(hcf, hcn);
        xn = (p5 + p4 * hc - p2 * std::pow(xf, 4)) / (100.0 + p3 * hc);
        if (++iter > 150)
            throw_numeric("pmv: clothing surface temperature iteration did not converge");
    }
    const double tcl = 100.0 * xn - 273.0;

    const double hl1 = 3.05e-3 * (5733.0 - 6.99 * mw - pa);        // skin diffusion
    const double hl2 = mw > 58.15 ? 0.42 * (mw - 58.15) : 0.0;     // sweating
    const double hl3 = 1.7e-5 * m * (5867.0 - pa);                 // latent respiration
    const double hl4 = 0.0014 * m * (34.0 - in.t_db);              // dry respiration
    const double hl5 = 3.96 * fcl * (std::pow(xn, 4) - std::pow(tra / 100.0, 4));  // radiation
    const double hl6 = fcl * hc * (tcl - in.t_db);                 // convection

    const double ts = 0.303 * std::exp(-0.036 * m) + 0.028;
    return ts * (mw - hl1 - hl2 - hl3 - hl4 - hl5 - hl6);
}

double ppd(double pmv_value) {
    if (!(std::fabs(pmv_value) <= 4.0))
        throw_invalid("ppd: |pmv|=" + std::to_string(std::fabs(pmv_value)) + " exceeds 4");
    const double p2 = pmv_value * pmv_value;
    return 100.0 - 95.0 * std::exp(-(0.03353 * p2 * p2 + 0.2179 * p2));
}

ComfortResult evaluate(const ComfortInputs& in) {
    ComfortResult r;
    r.pmv = pmv(in);
    r.ppd = ppd(r.pmv);
    return r;
}

ComfortSeries comfort_series(const std::vector<double>& t_db, const std::vector<double>& rh,
                             double dt_hours, const ComfortAssumptions& assumptions) {
    if (t_db.empty()) throw_invalid("comfort_series: empty temperature series");
    ComfortSeries out;
    out.steps.reserve(t_db.size());
    double ppd_sum = 0.0;
    for (std::size_t i = 0; i < t_db.size(); ++i) {
        double r = i < rh.size() ? rh[i] : std::nan("");
        if (!std::isfinite(r)) {
            r = assumptions.fallback_rh;
            out.used_rh_fallback = true;
        }
        ComfortInputs in;
        in.t_db = t_db[i];
        in.t_r = t_db[i];
        in.rh = std::clamp(r, 0.0, 1.0);
        in.v_air = assumptions.v_air;
        in.met = assumptions.met;
        in.clo = assumptions.clo;
        const ComfortResult c = evaluate(in);
        out.steps.push_back(c);
        ppd_sum += c.ppd;
        if (c.ppd > 10.0) out.hours_above_threshold += dt_hours;
    }
    out.mean_ppd = ppd_sum / static_cast<double>(t_db.size());
    return out;
}

ComfortSeries comfort_series(const TelemetryLog& log, const ComfortAssumptions& assumptions) {
    if (log.empty()) throw_invalid("comfort_series: empty telemetry log");
    std::vector<double> t, rh;
    t.reserve(log.size());
    rh.reserve(log.size());
    for (const auto& r : log.records) {
        t.push_back(r.t_in);
        rh.push_back(r.rh_in);
    }
    return comfort_series(t, rh, log.dt_hours, assumptions);
}

}  // namespace acmpc::psychro
