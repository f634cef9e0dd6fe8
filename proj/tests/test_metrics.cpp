#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "error.hpp"
#include "metrics.hpp"

using namespace acmpc;
using namespace acmpc::metrics;

namespace {

// Published field reference values (weather-normalized energy, kWh/degC and
// the power-limit violation table); used for ordering context only.
constexpr double kRefNormalizedSensible = 2.32;
constexpr double kRefNormalizedLatent = 2.34;
constexpr double kRefNormalizedBenchmark = 3.14;
constexpr double kRefViolationMinutesSensible = 54.0;
constexpr double kRefViolationMinutesLatent = 11.0;

forecast::LimitSchedule window() {
    forecast::LimitSchedule s;
    s.enabled = true;
    return s;
}

TelemetryLog log_with_power(const std::vector<std::pair<int, double>>& hour_power_pairs,
                            double dt_hours) {
    TelemetryLog log;
    log.dt_hours = dt_hours;
    const int steps = static_cast<int>(std::lround(24.0 / dt_hours));
    for (int i = 0; i < steps; ++i) {
        TelemetryRecord r;
        r.t = TimePoint{static_cast<std::int64_t>(i * dt_hours * 3600)};
        r.t_in = 23.0;
        r.t_out = 31.0;
        r.p_kw = 0.5;
        for (auto [step, p] : hour_power_pairs)
            if (step == i) r.p_kw = p;
        log.records.push_back(r);
    }
    return log;
}

}  // namespace

TEST_CASE("daily summaries and the hand-built violation example") {
    // Two violating 5-minute steps inside the window, +0.4 and +0.8 kW.
    const int h17 = 17 * 12;
    auto log = log_with_power({{h17, 2.9}, {h17 + 1, 3.3}}, 1.0 / 12.0);
    const auto days = summarize_daily(log, window());
    REQUIRE(days.size() == 1);
    CHECK(days[0].violation_minutes == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(days[0].violation_magnitude_mean_kw == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(days[0].delta_t == doctest::Approx(8.0).epsilon(1e-12));

    const auto stats = violation_stats(log, window());
    CHECK(stats.minutes_per_day == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(stats.mean_excess_kw == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(stats.any);

    SUBCASE("no violations reports zeros with the flag down") {
        auto quiet = log_with_power({}, 1.0 / 12.0);
        const auto s = violation_stats(quiet, window());
        CHECK(s.minutes_per_day == 0.0);
        CHECK(s.mean_excess_kw == 0.0);
        CHECK_FALSE(s.any);
    }

    SUBCASE("violations outside the window do not count") {
        auto outside = log_with_power({{10 * 12, 4.4}}, 1.0 / 12.0);
        const auto s = violation_stats(outside, window());
        CHECK(s.minutes_per_day == 0.0);
    }
}

TEST_CASE("violation stats are invariant to step refinement") {
    // The same piecewise-constant power trace sampled at 10 and 5 minutes.
    auto coarse = log_with_power({{17 * 6, 3.3}, {17 * 6 + 1, 3.3}}, 1.0 / 6.0);
    auto fine = log_with_power({{17 * 12, 3.3}, {17 * 12 + 1, 3.3}, {17 * 12 + 2, 3.3},
                                {17 * 12 + 3, 3.3}},
                               1.0 / 12.0);
    const auto a = violation_stats(coarse, window());
    const auto b = violation_stats(fine, window());
    CHECK(a.minutes_per_day == doctest::Approx(b.minutes_per_day).epsilon(1e-12));
    CHECK(a.mean_excess_kw == doctest::Approx(b.mean_excess_kw).epsilon(1e-12));
}

TEST_CASE("weather normalized energy") {
    DailySummary d;
    d.energy_kwh = 24.0;
    d.delta_t = 8.0;
    std::vector<DailySummary> days{d};
    CHECK(weather_normalized_energy(days) == doctest::Approx(3.0).epsilon(1e-12));

    d.energy_kwh = 0.0;
    days = {d, d};
    CHECK(weather_normalized_energy(days) == 0.0);

    d.delta_t = 0.0;
    days = {d};
    CHECK_THROWS_AS(weather_normalized_energy(days), Error);

    // Published reference ordering: MPC modes beat the benchmark.
    CHECK(kRefNormalizedSensible < kRefNormalizedBenchmark);
    CHECK(kRefNormalizedLatent < kRefNormalizedBenchmark);
    CHECK(std::fabs(kRefNormalizedSensible - kRefNormalizedLatent) < 0.1);
    CHECK(kRefViolationMinutesLatent < kRefViolationMinutesSensible);
}

TEST_CASE("savings slopes") {
    std::mt19937_64 rng(3);
    auto normal = [&rng] {
        const double u1 = std::max(static_cast<double>(rng() >> 11) * 0x1.0p-53, 1e-12);
        const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979 * u2);
    };

    SUBCASE("round-trips known slopes within 3 standard errors") {
        const double m1_true = 2.6, m2_true = 3.1;
        std::vector<DailySummary> a, b;
        for (int i = 0; i < 20; ++i) {
            DailySummary d;
            d.delta_t = 2.0 + 0.6 * i;
            d.energy_kwh = m1_true * (d.delta_t + 6.2) + 0.8 * normal();
            a.push_back(d);
            d.energy_kwh = m2_true * (d.delta_t + 6.2) + 0.8 * normal();
            b.push_back(d);
        }
        const auto [m1, m2] = fit_savings_slopes(a, b);
        CHECK(std::fabs(m1.mean - m1_true) < 3.0 * m1.std);
        CHECK(std::fabs(m2.mean - m2_true) < 3.0 * m2.std);
        CHECK(m1.offset == 6.2);
    }

    SUBCASE("identical arms give identical slopes") {
        std::vector<DailySummary> a;
        for (int i = 0; i < 8; ++i) {
            DailySummary d;
            d.delta_t = 3.0 + i;
            d.energy_kwh = 2.9 * (d.delta_t + 6.2);
            a.push_back(d);
        }
        const auto [m1, m2] = fit_savings_slopes(a, a);
        CHECK(m1.mean == doctest::Approx(m2.mean).epsilon(1e-12));
        CHECK(m1.std == doctest::Approx(m2.std).epsilon(1e-12));
    }

    SUBCASE("degenerate spread is rejected") {
        std::vector<DailySummary> a(6);
        for (auto& d : a) {
            d.delta_t = 5.0;
            d.energy_kwh = 12.0;
        }
        CHECK_THROWS_AS(fit_savings_slopes(a, a), Error);
    }

    SUBCASE("too few days are rejected") {
        std::vector<DailySummary> a(3);
        CHECK_THROWS_AS(fit_savings_slopes(a, a), Error);
    }
}

TEST_CASE("monte carlo savings") {
    SUBCASE("zero variance is the point estimate") {
        const auto ci = savings_ci({2.62, 0.0, 6.2}, {3.04, 0.0, 6.2}, 100000, 1);
        const double expected = 100.0 * (1.0 - 2.62 / 3.04);
        CHECK(ci.mean_pct == doctest::Approx(expected).epsilon(1e-9));
        CHECK(ci.lo_pct == doctest::Approx(expected).epsilon(1e-9));
        CHECK(ci.hi_pct == doctest::Approx(expected).epsilon(1e-9));
    }

    SUBCASE("equal means, zero variance: zero savings") {
        const auto ci = savings_ci({3.0, 0.0, 6.2}, {3.0, 0.0, 6.2}, 100000, 1);
        CHECK(ci.mean_pct == 0.0);
    }

    SUBCASE("deterministic per seed") {
        const auto a = savings_ci({2.62, 0.096, 6.2}, {3.04, 0.049, 6.2}, 200000, 9);
        const auto b = savings_ci({2.62, 0.096, 6.2}, {3.04, 0.049, 6.2}, 200000, 9);
        CHECK(a.mean_pct == b.mean_pct);
        CHECK(a.lo_pct == b.lo_pct);
        CHECK(a.hi_pct == b.hi_pct);
    }

    SUBCASE("mean converges to the analytic value when the denominator is fixed") {
        // With var(m2) = 0 the expectation is exactly 1 - mu1/mu2.
        const std::size_t n = 1000000;
        const auto ci = savings_ci({2.62, 0.096, 6.2}, {3.04, 0.0, 6.2}, n, 5);
        const double analytic = 100.0 * (1.0 - 2.62 / 3.04);
        const double sigma_mean = 100.0 * (0.096 / 3.04) / std::sqrt(static_cast<double>(n));
        CHECK(std::fabs(ci.mean_pct - analytic) < 3.0 * sigma_mean);
    }

    SUBCASE("sample floor is enforced") {
        CHECK_THROWS_AS(savings_ci({2.6, 0.1, 6.2}, {3.0, 0.05, 6.2}, 1000, 1), Error);
    }
}

TEST_CASE("annual cost projection") {
    std::vector<double> year;
    for (int d = 0; d < 365; ++d) year.push_back(4.0 + 3.0 * std::sin(d / 58.0));

    SUBCASE("zero savings models project zero dollars") {
        const auto p = annual_cost_projection({3.0, 0.0, 6.2}, {3.0, 0.0, 6.2}, year, 0.14,
                                              200000, 3);
        CHECK(p.mean_usd == doctest::Approx(0.0).epsilon(1e-12));
    }

    SUBCASE("zero-variance slopes match the closed form") {
        const double m1 = 2.62, m2 = 3.04, price = 0.14;
        const auto p = annual_cost_projection({m1, 0.0, 6.2}, {m2, 0.0, 6.2}, year, price,
                                              200000, 3);
        double x_sum = 0;
        for (double dt : year) x_sum += dt + 6.2;
        const double analytic = price * (m2 - m1) * x_sum;
        CHECK(p.mean_usd == doctest::Approx(analytic).epsilon(5e-3));
        REQUIRE(p.cumulative_mean.size() == year.size());
        CHECK(p.cumulative_mean.back() == doctest::Approx(p.mean_usd).epsilon(1e-9));
        for (std::size_t i = 1; i < p.cumulative_mean.size(); ++i)
            CHECK(p.cumulative_mean[i] >= p.cumulative_mean[i - 1]);
    }

    SUBCASE("missing year data is an error") {
        std::vector<double> empty;
        CHECK_THROWS_AS(annual_cost_projection({2.6, 0.1, 6.2}, {3.0, 0.05, 6.2}, empty, 0.14,
                                               200000, 3),
                        Error);
    }
}
