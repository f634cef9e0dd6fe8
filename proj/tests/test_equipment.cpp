#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "equipment.hpp"
#include "error.hpp"
#include "fixtures.hpp"

using namespace acmpc;
using namespace acmpc::equipment;

namespace {

// Table generated exactly from the reference quadratic, no perturbation.
PerformanceTable exact_table() {
    PerformanceTable t;
    for (double wb : {14.0, 16.0, 18.0, 20.0, 22.0, 24.0}) {
        for (double to : {20.0, 24.0, 28.0, 32.0, 36.0, 40.0}) {
            PerformanceRow r;
            r.t_wb_c = wb;
            r.t_out_c = to;
            r.total_kw = fixtures::reference_total_kw(wb, to);
            r.sensible_kw = fixtures::reference_shr(wb) * r.total_kw;
            r.power_kw = r.total_kw / fixtures::reference_cop(wb, to);
            t.push_back(r);
        }
    }
    return t;
}

}  // namespace

TEST_CASE("latent fit recovers exact quadratic coefficients") {
    const auto map = fit_cop(exact_table(), CopForm::Latent);
    const auto& l = std::get<CopMapLatent>(map);
    // Monomial expansion of the centered reference surface.
    CHECK(l.coeff[0] == doctest::Approx(13.4696).epsilon(1e-9));
    CHECK(l.coeff[1] == doctest::Approx(0.0904).epsilon(1e-9));
    CHECK(l.coeff[2] == doctest::Approx(-0.3758).epsilon(1e-9));
    CHECK(l.coeff[3] == doctest::Approx(-0.0012).epsilon(1e-9));
    CHECK(l.coeff[4] == doctest::Approx(-0.0009).epsilon(1e-9));
    CHECK(l.coeff[5] == doctest::Approx(0.002).epsilon(1e-9));
    CHECK(l.r2 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("bundled fixture table fits with the advertised quality") {
    const auto table = fixtures::reference_performance_table();
    const auto latent = fit_cop(table, CopForm::Latent);
    CHECK(std::get<CopMapLatent>(latent).r2 >= 0.99);

    const auto shr_fit = fit_shr(table);
    CHECK(shr_fit.r2 >= 0.97);
    CHECK(shr_fit.model.a < 0.0);  // more latent load at higher wet-bulb

    // Rated COP at mild conditions comes out near the seasonal value.
    CHECK(cop(latent, 28.0, 18.0) == doctest::Approx(5.3).epsilon(0.02));
    const auto sensible = fit_cop(table, CopForm::Sensible);
    CHECK(cop(sensible, 28.0) == doctest::Approx(5.3).epsilon(0.06));
}

TEST_CASE("underdetermined or malformed tables are rejected") {
    auto t = exact_table();
    t.resize(3);
    CHECK_THROWS_AS(fit_cop(t, CopForm::Latent), Error);

    auto bad = exact_table();
    bad[4].sensible_kw = bad[4].total_kw + 1.0;
    CHECK_THROWS_AS(fit_shr(bad), Error);

    PerformanceTable single;
    for (double to : {20.0, 24.0, 28.0, 32.0, 36.0}) {
        PerformanceRow r;
        r.t_wb_c = 18.0;
        r.t_out_c = to;
        r.total_kw = 14.0;
        r.sensible_kw = 12.0;
        r.power_kw = 3.0;
        single.push_back(r);
    }
    CHECK_THROWS_WITH_AS(fit_shr(single), doctest::Contains("wet-bulb"), Error);
}

TEST_CASE("cop evaluation clamps to the fitted range") {
    const auto map = fit_cop(exact_table(), CopForm::Latent);
    const auto at_edge = cop_eval(map, 40.0, 20.0);
    const auto beyond = cop_eval(map, 45.0, 20.0);
    CHECK_FALSE(at_edge.clamped);
    CHECK(beyond.clamped);
    CHECK(beyond.value == doctest::Approx(at_edge.value).epsilon(1e-12));

    CHECK_THROWS_AS(cop(map, 30.0), Error);  // latent map needs a wet-bulb
}

TEST_CASE("latent cop decreases with outdoor temperature along wet-bulb slices") {
    const auto map = fit_cop(fixtures::reference_performance_table(), CopForm::Latent);
    for (double wb = 14.0; wb <= 24.0; wb += 1.0) {
        double prev = cop(map, 20.0, wb);
        for (double to = 21.0; to <= 40.0; to += 0.5) {
            const double c = cop(map, to, wb);
            CHECK(c < prev);
            CHECK(c > 0.0);
            prev = c;
        }
    }
}

TEST_CASE("shr model semantics") {
    const auto constant = ShrModel::constant(0.86);
    CHECK(shr(constant, 5.0) == 0.86);
    CHECK(shr(constant, 25.0) == 0.86);

    const auto linear = ShrModel::linear(-0.03, 1.40);
    CHECK(shr(linear, 5.0) == 1.0);  // clamped at the top
    CHECK(shr(linear, 18.0) == doctest::Approx(0.86).epsilon(1e-12));
    CHECK(shr(linear, 200.0) > 0.0);  // clamped at the floor

    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const double wb = -10.0 + 50.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const double v = shr(linear, wb);
        CHECK(v > 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("lower SHR strictly raises electrical power at fixed load") {
    std::mt19937_64 rng(13);
    auto u = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    for (int i = 0; i < 100; ++i) {
        const double q = 1.0 + 10.0 * u();
        const double cop_v = 3.0 + 3.0 * u();
        const double s_hi = 0.7 + 0.29 * u();
        const double s_lo = s_hi - 0.2 * u() * 0.5 - 1e-3;
        const double p_hi = q / (s_hi * cop_v);
        const double p_lo = q / (s_lo * cop_v);
        CHECK(p_lo > p_hi);
    }
}

TEST_CASE("exact linear shr rows round-trip") {
    PerformanceTable t;
    for (double wb : {13.0, 15.5, 17.0, 19.5, 21.0, 23.5}) {
        PerformanceRow r;
        r.t_wb_c = wb;
        r.t_out_c = 30.0;
        r.total_kw = 14.0;
        r.sensible_kw = (-0.0275 * wb + 1.33) * r.total_kw;
        r.power_kw = 3.0;
        t.push_back(r);
    }
    const auto fit = fit_shr(t);
    CHECK(fit.model.a == doctest::Approx(-0.0275).epsilon(1e-9));
    CHECK(fit.model.b == doctest::Approx(1.33).epsilon(1e-9));
    CHECK(fit.rmse < 1e-12);
}

TEST_CASE("performance table round-trips through CSV") {
    const auto table = fixtures::reference_performance_table();
    const std::string path = "/tmp/acmpc_test_perf.csv";
    write_performance_csv(table, path);
    const auto back = read_performance_csv(path);
    REQUIRE(back.size() == table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        CHECK(back[i].t_wb_c == doctest::Approx(table[i].t_wb_c).epsilon(1e-9));
        CHECK(back[i].total_kw == doctest::Approx(table[i].total_kw).epsilon(1e-4));
    }
}
