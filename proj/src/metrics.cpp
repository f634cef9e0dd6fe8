#include "metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "error.hpp"

namespace acmpc::metrics {

namespace {

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

std::string date_string(TimePoint t) { return to_iso8601(t).substr(0, 10); }

double percentile(std::vector<double>& sorted_values, double q) {
    const double idx = q * static_cast<double>(sorted_values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(idx);
    const std::size_t hi = std::min(lo + 1, sorted_values.size() - 1);
    const double f = idx - static_cast<double>(lo);
    return sorted_values[lo] * (1.0 - f) + sorted_values[hi] * f;
}

SlopeFit fit_one_arm(std::span<const DailySummary> days, double offset) {
    if (days.size() < 5)
        throw_data("fit_savings_slopes: need at least 5 daily summaries per arm, got " +
                   std::to_string(days.size()));
    double lo = days[0].delta_t, hi = days[0].delta_t;
    double sxx = 0, sxy = 0;
    for (const auto& d : days) {
        lo = std::min(lo, d.delta_t);
        hi = std::max(hi, d.delta_t);
        const double x = d.delta_t + offset;
        sxx += x * x;
        sxy += x * d.energy_kwh;
    }
    if (hi - lo < 1e-9)
        throw_data("fit_savings_slopes: degenerate temperature-difference spread");
    if (sxx <= 0) throw_data("fit_savings_slopes: zero regressor norm");
    SlopeFit fit;
    fit.offset = offset;
    fit.mean = sxy / sxx;
    double rss = 0;
    for (const auto& d : days) {
        const double r = d.energy_kwh - fit.mean * (d.delta_t + offset);
        rss += r * r;
    }
    const double dof = static_cast<double>(days.size()) - 1.0;
    fit.std = std::sqrt(rss / dof / sxx);
    return fit;
}

}  // namespace

std::vector<DailySummary> summarize_daily(const TelemetryLog& log,
                                          const forecast::LimitSchedule& schedule) {
    if (log.empty()) throw_invalid("summarize_daily: empty log");
    std::map<std::int64_t, DailySummary> byday;
    std::map<std::int64_t, std::pair<double, int>> dt_acc;
    std::map<std::int64_t, std::pair<double, int>> excess_acc;
    for (const auto& r : log.records) {
        const auto day = day_index(r.t);
        auto& s = byday[day];
        if (s.date.empty()) {
            s.date = date_string(r.t);
            s.controller = log.label;
        }
        s.energy_kwh += r.p_kw * log.dt_hours;
        auto& [dt_sum, dt_n] = dt_acc[day];
        dt_sum += r.t_out - r.t_in;
        ++dt_n;
        const int hh = static_cast<int>(hour_of_day(r.t));
        const double limit = forecast::power_limit_at(schedule, hh);
        if (r.p_kw > limit) {
            s.violation_minutes += log.dt_hours * 60.0;
            auto& [ex_sum, ex_n] = excess_acc[day];
            ex_sum += r.p_kw - limit;
            ++ex_n;
            s.any_violation = true;
        }
    }
    std::vector<DailySummary> out;
    for (auto& [day, s] : byday) {
        const auto& [dt_sum, dt_n] = dt_acc[day];
        s.delta_t = dt_sum / dt_n;
        if (auto it = excess_acc.find(day); it != excess_acc.end())
            s.violation_magnitude_mean_kw = it->second.first / it->second.second;
        out.push_back(std::move(s));
    }
    return out;
}

double weather_normalized_energy(std::span<const DailySummary> days) {
    if (days.empty()) throw_invalid("weather_normalized_energy: no daily summaries");
    double e = 0, dt = 0;
    for (const auto& d : days) {
        e += d.energy_kwh;
        dt += d.delta_t;
    }
    if (std::fabs(dt) < 1e-12)
        throw_data("weather_normalized_energy: temperature differences sum to zero");
    return e / dt;
}

std::pair<SlopeFit, SlopeFit> fit_savings_slopes(std::span<const DailySummary> mpc_days,
                                                 std::span<const DailySummary> baseline_days,
                                                 double offset) {
    return {fit_one_arm(mpc_days, offset), fit_one_arm(baseline_days, offset)};
}

SavingsCi savings_ci(const SlopeFit& m1, const SlopeFit& m2, std::size_t samples,
                     std::uint64_t seed) {
    if (samples < 100000)
        throw_invalid("savings_ci: need at least 1e5 samples for stable percentiles");
    Rng rng(seed);
    std::vector<double> s;
    s.reserve(samples);
    SavingsCi out;
    const double guard = 1e-6 * std::max(1.0, std::fabs(m2.mean));
    double sum = 0;
    while (s.size() < samples) {
        const double a = m1.mean + m1.std * rng.normal();
        const double b = m2.mean + m2.std * rng.normal();
        if (std::fabs(b) < guard) {
            ++out.rejected;
            continue;
        }
        const double v = 1.0 - a / b;
        s.push_back(v);
        sum += v;
    }
    out.mean_pct = 100.0 * sum / static_cast<double>(samples);
    std::sort(s.begin(), s.end());
    out.lo_pct = 100.0 * percentile(s, 0.025);
    out.hi_pct = 100.0 * percentile(s, 0.975);
    return out;
}

ViolationStats violation_stats(const TelemetryLog& log,
                               const forecast::LimitSchedule& schedule) {
    if (log.empty()) throw_invalid("violation_stats: empty log");
    const auto days = summarize_daily(log, schedule);
    ViolationStats out;
    double minutes = 0, excess_weighted = 0, excess_minutes = 0;
    for (const auto& d : days) {
        minutes += d.violation_minutes;
        excess_weighted += d.violation_magnitude_mean_kw * d.violation_minutes;
        excess_minutes += d.violation_minutes;
        out.any = out.any || d.any_violation;
    }
    out.minutes_per_day = minutes / static_cast<double>(days.size());
    out.mean_excess_kw = excess_minutes > 0 ? excess_weighted / excess_minutes : 0.0;
    return out;
}

AnnualProjection annual_cost_projection(const SlopeFit& m1, const SlopeFit& m2,
                                        std::span<const double> year_delta_t,
                                        double price_per_kwh, std::size_t samples,
                                        std::uint64_t seed) {
    if (year_delta_t.empty())
        throw_invalid("annual_cost_projection: no daily temperature differences supplied");
    // Daily savings are linear in (m2 - m1), so sampling the slope pair and
    // scaling by the deterministic weather sum is exact.
    double x_sum = 0;
    std::vector<double> x_cum;
    x_cum.reserve(year_delta_t.size());
    for (double dt : year_delta_t) {
        x_sum += std::max(0.0, dt + m1.offset);
        x_cum.push_back(x_sum);
    }
    Rng rng(seed);
    std::vector<double> diff;
    diff.reserve(samples);
    double sum = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double a = m1.mean + m1.std * rng.normal();
        const double b = m2.mean + m2.std * rng.normal();
        const double v = b - a;
        diff.push_back(v);
        sum += v;
    }
    const double mean_diff = sum / static_cast<double>(samples);
    std::sort(diff.begin(), diff.end());
    AnnualProjection out;
    out.mean_usd = price_per_kwh * mean_diff * x_sum;
    out.lo_usd = price_per_kwh * percentile(diff, 0.025) * x_sum;
    out.hi_usd = price_per_kwh * percentile(diff, 0.975) * x_sum;
    out.cumulative_mean.reserve(x_cum.size());
    for (double xc : x_cum) out.cumulative_mean.push_back(price_per_kwh * mean_diff * xc);
    return out;
}

}  // namespace acmpc::metrics
