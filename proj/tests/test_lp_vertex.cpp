// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "nfbeam/lp_vertex.hpp"

using namespace nfbeam::lp;

namespace {

// minimize -x - y  s.t.  x + 2y <= 4, 3x + y <= 6, x >= 0, y >= 0.
LinearProgram small_program() {
    LinearProgram lp;
    lp.dim = 2;
    lp.G = {{1.0, 2.0}, {3.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    lp.h = {4.0, 6.0, 0.0, 0.0};
    lp.c = {-1.0, -1.0};
    lp.names = {"a", "b", "x_nonneg", "y_nonneg"};
    return lp;
}

}  // namespace

TEST_CASE("vertex enumeration finds the optimum of a 2D program") {
    const auto lp = small_program();
    const auto sol = solve_by_vertices(lp);
    REQUIRE(sol.status == Status::optimal);
    CHECK(sol.z[0] == doctest::Approx(1.6));
    CHECK(sol.z[1] == doctest::Approx(1.2));
    CHECK(sol.objective == doctest::Approx(-2.8));
    CHECK(sol.multipliers[0] == doctest::Approx(0.4));
    CHECK(sol.multipliers[1] == doctest::Approx(0.2));
    CHECK(sol.multipliers[2] == 0.0);
    CHECK(sol.multipliers[3] == 0.0);
}

TEST_CASE("KKT certificate accepts optima and rejects other vertices") {
    const auto lp = small_program();
    const std::vector<double> opt{1.6, 1.2};
    const auto good = kkt_check(lp, opt);
    CHECK(good.valid);
    CHECK(good.stationarity_residual < 1e-12);

    const std::vector<double> origin{0.0, 0.0};
    CHECK_FALSE(kkt_check(lp, origin).valid);

    const std::vector<double> outside{3.0, 3.0};
    CHECK_FALSE(lp.feasible(outside));
    CHECK_FALSE(kkt_check(lp, outside).valid);
    std::size_t row = 99;
    CHECK(lp.max_violation(outside, &row) > 0.0);
    CHECK(row == 0);
}

TEST_CASE("degenerate vertex with redundant active constraints") {
    // Three constraints meet at (1, 1); only two are needed for the certificate.
    LinearProgram lp;
    lp.dim = 2;
    lp.G = {{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}};
    lp.h = {1.0, 1.0, 2.0};
    lp.c = {-1.0, -2.0};
    const auto sol = solve_by_vertices(lp);
    REQUIRE(sol.status == Status::optimal);
    CHECK(sol.z[0] == doctest::Approx(1.0));
    CHECK(sol.z[1] == doctest::Approx(1.0));
    const auto cert = kkt_check(lp, sol.z);
    CHECK(cert.valid);
    for (double m : cert.multipliers) CHECK(m >= -1e-12);
}

TEST_CASE("infeasible and unbounded programs") {
    LinearProgram inf;
    inf.dim = 1;
    inf.G = {{1.0}, {-1.0}};
    inf.h = {0.0, -1.0};  // x <= 0 and x >= 1
    inf.c = {1.0};
    CHECK(solve_by_vertices(inf).status == Status::infeasible);

    LinearProgram unb;
    unb.dim = 2;
    unb.G = {{-1.0, 0.0}, {0.0, -1.0}};
    unb.h = {0.0, 0.0};
    unb.c = {-1.0, 0.0};
    CHECK(solve_by_vertices(unb).status == Status::unbounded);
}

TEST_CASE("pinning a variable") {
    const auto lp = small_program();
    const auto pinned = pin_variable(lp, 0, 1.0);
    CHECK(pinned.dim == 1);
    CHECK(pinned.rows() == lp.rows());
    const auto sol = solve_by_vertices(pinned);
    REQUIRE(sol.status == Status::optimal);
    CHECK(sol.z[0] == doctest::Approx(1.5));
    CHECK(sol.objective == doctest::Approx(-1.5));  // constant term dropped
    CHECK_THROWS(pin_variable(lp, 2, 0.0));
}

TEST_CASE("random bounded programs agree with a dense scan") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    int solved = 0;
    for (int trial = 0; trial < 60; ++trial) {
        LinearProgram lp;
        lp.dim = 2;
        // Box [-1, 1]^2 plus three random cuts through a disc around the origin.
        lp.G = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
        lp.h = {1, 1, 1, 1};
        for (int k = 0; k < 3; ++k) {
            lp.G.push_back({g(rng), g(rng)});
            lp.h.push_back(0.2 + std::abs(g(rng)));
        }
        lp.c = {g(rng), g(rng)};
        const auto sol = solve_by_vertices(lp);
        REQUIRE(sol.status == Status::optimal);
        double best = std::numeric_limits<double>::infinity();
        const int n = 801;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const std::vector<double> z{-1.0 + 2.0 * i / (n - 1), -1.0 + 2.0 * j / (n - 1)};
                if (lp.feasible(z, 0.0)) best = std::min(best, lp.objective(z));
            }
        }
        const double cell = (std::abs(lp.c[0]) + std::abs(lp.c[1])) * 2.0 / (n - 1);
        CHECK(sol.objective <= best + 1e-12);
        CHECK(best - sol.objective <= 2.0 * cell);
        ++solved;
    }
    CHECK(solved == 60);
}
