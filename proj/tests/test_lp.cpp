#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "error.hpp"
#include "lp.hpp"
#include "oracles.hpp"

using namespace acmpc;
using acmpc::lp::LinearProgram;
using acmpc::lp::SolveStatus;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("one-variable basics") {
    SUBCASE("min x subject to x >= 3, via a row") {
        LinearProgram p;
        p.add_variable(1.0, -kInf, kInf);
        p.add_le({{0, -1.0}}, -3.0);  // -x <= -3
        const auto s = lp::solve(p);
        REQUIRE(s.status == SolveStatus::Optimal);
        CHECK(s.x[0] == doctest::Approx(3.0).epsilon(1e-9));
        CHECK(s.objective == doctest::Approx(3.0).epsilon(1e-9));
        CHECK(s.max_primal_residual <= 1e-7);
        CHECK(s.duality_gap <= 1e-7);
    }
    SUBCASE("negative cost runs to the upper bound (bound flip)") {
        LinearProgram p;
        p.add_variable(-2.0, 0.0, 5.0);
        const auto s = lp::solve(p);
        REQUIRE(s.status == SolveStatus::Optimal);
        CHECK(s.x[0] == doctest::Approx(5.0));
        CHECK(s.objective == doctest::Approx(-10.0));
    }
    SUBCASE("unbounded below is detected") {
        LinearProgram p;
        p.add_variable(-1.0, 0.0, kInf);
        const auto s = lp::solve(p);
        CHECK(s.status == SolveStatus::Unbounded);
    }
    SUBCASE("contradictory rows are infeasible with a certificate") {
        LinearProgram p;
        p.add_variable(1.0, 0.0, kInf);
        p.add_le({{0, 1.0}}, 1.0);
        p.add_le({{0, -1.0}}, -2.0);  // x >= 2 contradicts x <= 1
        const auto s = lp::solve(p);
        CHECK(s.status == SolveStatus::Infeasible);
        CHECK(s.infeasible_row >= 0);
    }
}

TEST_CASE("small equality system") {
    // min x + y  s.t.  x + y = 2, x - y <= 0, 0 <= x,y <= 3
    LinearProgram p;
    p.add_variable(1.0, 0.0, 3.0);
    p.add_variable(1.0, 0.0, 3.0);
    p.add_eq({{0, 1.0}, {1, 1.0}}, 2.0);
    p.add_le({{0, 1.0}, {1, -1.0}}, 0.0);
    const auto s = lp::solve(p);
    REQUIRE(s.status == SolveStatus::Optimal);
    CHECK(s.objective == doctest::Approx(2.0).epsilon(1e-9));
    const auto oracle = oracles::enumerate_vertices(p);
    REQUIRE(oracle.feasible);
    CHECK(s.objective == doctest::Approx(oracle.objective).epsilon(1e-9));
}

TEST_CASE("random bounded LPs match vertex enumeration") {
    std::mt19937_64 rng(101);
    auto u = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    int checked = 0, infeasible = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(u() * 5.0);  // 2..6
        LinearProgram p;
        for (int j = 0; j < n; ++j) {
            const double lo = -1.0 - 2.0 * u();
            const double hi = lo + 0.5 + 3.0 * u();
            p.add_variable(-1.0 + 2.0 * u(), lo, hi);
        }
        const int rows = 1 + static_cast<int>(u() * 5.0);
        for (int r = 0; r < rows; ++r) {
            std::vector<std::pair<int, double>> terms;
            for (int j = 0; j < n; ++j)
                if (u() < 0.7) terms.push_back({j, -1.0 + 2.0 * u()});
            if (terms.empty()) terms.push_back({0, 1.0});
            p.add_le(std::move(terms), -1.0 + 4.0 * u());
        }
        if (u() < 0.4) {
            std::vector<std::pair<int, double>> terms;
            for (int j = 0; j < n; ++j) terms.push_back({j, -1.0 + 2.0 * u()});
            p.add_eq(std::move(terms), -0.5 + u());
        }

        const auto oracle = oracles::enumerate_vertices(p, 1e-9);
        lp::Solution s;
        try {
            s = lp::solve(p, 1e-8);
        } catch (const Error&) {
            // Certification failure would be a solver bug; surface it.
            FAIL("solver threw on trial ", trial);
            continue;
        }
        if (oracle.feasible) {
            REQUIRE_MESSAGE(s.status == SolveStatus::Optimal, "trial ", trial);
            CHECK_MESSAGE(
                std::fabs(s.objective - oracle.objective) <=
                    1e-6 * (1.0 + std::fabs(oracle.objective)),
                "trial ", trial, ": solver ", s.objective, " oracle ", oracle.objective);
            ++checked;
        } else {
            CHECK_MESSAGE(s.status == SolveStatus::Infeasible, "trial ", trial);
            ++infeasible;
        }
    }
    CHECK(checked >= 50);  // the generator must mostly produce feasible programs
    CHECK(checked + infeasible == 100);
}

TEST_CASE("duality gap and residual certification on a degenerate program") {
    // Multiple optimal vertices; the certificate must still close the gap.
    LinearProgram p;
    p.add_variable(1.0, 0.0, 10.0);
    p.add_variable(1.0, 0.0, 10.0);
    p.add_le({{0, -1.0}, {1, -1.0}}, -4.0);  // x + y >= 4
    p.add_le({{0, 1.0}, {1, 1.0}}, 8.0);
    const auto s = lp::solve(p);
    REQUIRE(s.status == SolveStatus::Optimal);
    CHECK(s.objective == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(s.duality_gap <= 1e-7);
    double dot = 0;
    for (int j = 0; j < p.num_vars(); ++j) dot += p.objective[j] * s.x[j];
    CHECK(s.objective == doctest::Approx(dot).epsilon(1e-12));
}

TEST_CASE("validation rejects malformed programs") {
    LinearProgram p;
    p.add_variable(1.0, 0.0, 1.0);
    p.add_le({{3, 1.0}}, 1.0);  // unknown variable
    CHECK_THROWS_AS(lp::solve(p), Error);

    LinearProgram q;
    q.add_variable(std::nan(""), 0.0, 1.0);
    CHECK_THROWS_AS(lp::solve(q), Error);

    LinearProgram r;
    r.add_variable(1.0, 2.0, 1.0);  // empty interval
    CHECK_THROWS_AS(lp::solve(r), Error);
}
