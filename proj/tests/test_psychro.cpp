#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "error.hpp"
#include "psychro.hpp"

using namespace acmpc;
using namespace acmpc::psychro;

namespace {

// Bisect the air temperature (t_r = t_db) where the heat balance is neutral.
double neutral_temperature(double rh, double v, double met, double clo) {
    double lo = 15.0, hi = 32.0;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        ComfortInputs in{mid, mid, rh, v, met, clo};
        (pmv(in) < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("wet bulb matches the published regression") {
    // Saturated air: wet-bulb equals dry-bulb within the formula slack.
    CHECK(std::fabs(wet_bulb(20.0, 1.0) - 20.0) < 0.4);
    CHECK(wet_bulb(20.0, 1.0) <= 20.0 + 0.4);

    // Frozen one-off evaluations of the regression.
    CHECK(wet_bulb(20.0, 0.5) == doctest::Approx(13.699341969).epsilon(1e-8));
    CHECK(wet_bulb(24.0, 0.5) == doctest::Approx(17.138396661).epsilon(1e-8));
    CHECK(wet_bulb(24.0, 0.5) < wet_bulb(24.0, 1.0));
}

TEST_CASE("wet bulb rejects out-of-range inputs by name") {
    CHECK_THROWS_WITH_AS(wet_bulb(60.0, 0.5), doctest::Contains("t_db"), Error);
    CHECK_THROWS_WITH_AS(wet_bulb(20.0, 0.01), doctest::Contains("rh"), Error);
}

TEST_CASE("wet bulb is monotone in both arguments") {
    // Grid over the above-freezing region; the regression's published
    // validity region excludes dry sub-freezing air, where it wiggles.
    for (double t = 5.0; t <= 45.0; t += 2.5) {
        double prev = wet_bulb(t, 0.05);
        for (double rh = 0.1; rh <= 1.0; rh += 0.05) {
            const double w = wet_bulb(t, rh);
            CHECK(w >= prev - 1e-12);
            prev = w;
        }
    }
    for (double rh = 0.1; rh <= 1.0; rh += 0.1) {
        double prev = wet_bulb(5.0, rh);
        for (double t = 7.5; t <= 45.0; t += 2.5) {
            const double w = wet_bulb(t, rh);
            CHECK(w >= prev - 1e-12);
            prev = w;
        }
    }
}

TEST_CASE("rh_from_wet_bulb inverts wet_bulb") {
    for (double t : {20.0, 24.0, 28.0}) {
        for (double rh : {0.3, 0.55, 0.8}) {
            const double wb = wet_bulb(t, rh);
            CHECK(rh_from_wet_bulb(t, wb) == doctest::Approx(rh).epsilon(1e-6));
        }
    }
}

TEST_CASE("pmv reproduces the standard's validation rows") {
    // Tabulated (ta, tr, rh, v, met, clo) -> PMV rows from the comfort
    // standard; tolerance +-0.1 on the tabulated value.
    struct Row {
        ComfortInputs in;
        double tabulated;
        double frozen;  // from an independent one-off evaluation
    };
    const Row rows[] = {
        {{22.0, 22.0, 0.60, 0.10, 1.2, 0.5}, -0.75, -0.7523},
        {{27.0, 27.0, 0.60, 0.10, 1.2, 0.5}, 0.77, 0.7654},
        {{27.0, 27.0, 0.60, 0.30, 1.2, 0.5}, 0.44, 0.4338},
    };
    for (const auto& row : rows) {
        const double v = pmv(row.in);
        CHECK(std::fabs(v - row.tabulated) < 0.1);
        CHECK(v == doctest::Approx(row.frozen).epsilon(5e-3));
    }
}

TEST_CASE("pmv is zero at the neutral balance and increases with temperature") {
    const double tn = neutral_temperature(0.5, 0.1, 1.1, 0.5);
    ComfortInputs in{tn, tn, 0.5, 0.1, 1.1, 0.5};
    CHECK(std::fabs(pmv(in)) < 1e-6);

    double prev = -10;
    for (double t = tn - 6.0; t <= tn + 6.0; t += 0.5) {
        ComfortInputs probe{t, t, 0.5, 0.1, 1.1, 0.5};
        const double v = pmv(probe);
        CHECK(v > prev);
        prev = v;
    }

    // Sign flips symmetrically far from neutral.
    ComfortInputs warm{tn + 5.0, tn + 5.0, 0.5, 0.1, 1.1, 0.5};
    ComfortInputs cool{tn - 5.0, tn - 5.0, 0.5, 0.1, 1.1, 0.5};
    CHECK(pmv(warm) > 0.0);
    CHECK(pmv(cool) < 0.0);
}

TEST_CASE("pmv validates inputs") {
    ComfortInputs bad{24, 24, 0.5, -0.1, 1.1, 0.5};
    CHECK_THROWS_AS(pmv(bad), Error);
    bad = {24, 24, 0.5, 0.1, 0.0, 0.5};
    CHECK_THROWS_AS(pmv(bad), Error);
}

TEST_CASE("ppd closed form") {
    CHECK(ppd(0.0) == 5.0);
    CHECK(ppd(1.0) == doctest::Approx(26.119650083580567).epsilon(1e-11));
    for (double v = 0.0; v <= 4.0; v += 0.125) {
        CHECK(std::fabs(ppd(v) - ppd(-v)) < 1e-12);
        CHECK(ppd(v) >= 5.0);
        CHECK(ppd(v) <= 100.0);
    }
    CHECK_THROWS_AS(ppd(4.5), Error);
}

TEST_CASE("comfort series averages per-step PPD") {
    ComfortAssumptions assume;
    const double tn = neutral_temperature(assume.fallback_rh, assume.v_air, assume.met,
                                          assume.clo);

    SUBCASE("constant neutral conditions give 5%") {
        TelemetryLog log;
        log.dt_hours = 1.0;
        for (int i = 0; i < 24; ++i) {
            TelemetryRecord r;
            r.t = TimePoint{i * 3600};
            r.t_in = tn;
            r.rh_in = assume.fallback_rh;
            log.records.push_back(r);
        }
        const auto s = comfort_series(log, assume);
        CHECK(s.mean_ppd == doctest::Approx(5.0).epsilon(1e-6));
        CHECK(s.hours_above_threshold == 0.0);
        CHECK_FALSE(s.used_rh_fallback);
    }

    SUBCASE("two-step log equals the mean of the per-step oracle") {
        TelemetryLog log;
        log.dt_hours = 1.0;
        TelemetryRecord a, b;
        a.t = TimePoint{0};
        a.t_in = 26.5;
        a.rh_in = 0.6;
        b.t = TimePoint{3600};
        b.t_in = 21.0;
        b.rh_in = 0.4;
        log.records = {a, b};
        const double p1 = ppd(pmv({26.5, 26.5, 0.6, assume.v_air, assume.met, assume.clo}));
        const double p2 = ppd(pmv({21.0, 21.0, 0.4, assume.v_air, assume.met, assume.clo}));
        const auto s = comfort_series(log, assume);
        CHECK(s.mean_ppd == doctest::Approx(0.5 * (p1 + p2)).epsilon(1e-12));
    }

    SUBCASE("missing humidity falls back and is flagged") {
        TelemetryLog log;
        log.dt_hours = 1.0;
        TelemetryRecord r;
        r.t = TimePoint{0};
        r.t_in = tn;
        r.rh_in = std::nan("");
        log.records = {r};
        const auto s = comfort_series(log, assume);
        CHECK(s.used_rh_fallback);
        CHECK(s.mean_ppd == doctest::Approx(5.0).epsilon(1e-6));
    }

    SUBCASE("empty log is rejected") {
        TelemetryLog log;
        CHECK_THROWS_AS(comfort_series(log, assume), Error);
    }
}
