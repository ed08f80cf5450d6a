// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "nfbeam/curving.hpp"
#include "oracles/lp_grid_oracle.hpp"

using namespace nfbeam;

namespace {

const UlaConfig& reference_array() {
    static const UlaConfig cfg = UlaConfig::half_wavelength(1024, 140e9);
    return cfg;
}

AvoidanceScenario centred_cuboid_case(double w = 1.0) {
    return {{-0.1, 1.0}, RectObstacle(0.14, -0.14, 0.10, 0.57), reference_array(), w};
}

oracle::CurvingProblem to_oracle(const AvoidanceScenario& s) {
    return {s.user.x, s.user.y, s.obstacle.y_n, s.obstacle.y_f, s.obstacle.x_r2, s.cfg.half_aperture(), s.weight_w};
}

// Ray direction (radians from +y towards +x) implied by neighbouring phases.
double ray_angle_from_phases(const UlaConfig& cfg, const Excitation& e, std::size_t i) {
    const double dphi = e.phase[i + 1] - e.phase[i];
    return std::asin(-dphi / (cfg.wavenumber() * cfg.spacing()));
}

double tangent_angle(const ParabolicTrajectory& t, double x_t) {
    const double s = trajectory_slope(t, tangent_y(t, x_t));
    return std::atan(s);
}

}  // namespace

TEST_CASE("trajectory helpers") {
    const Point2 user{-0.1, 1.0};
    const auto t = trajectory_through(0.5, 0.4, user);
    CHECK(trajectory_eval(t, user.y) == doctest::Approx(user.x).epsilon(1e-15));
    CHECK(trajectory_slope(t, 0.4) == 0.0);
    // The tangent line from (x_t, 0) touches the parabola at tangent_y.
    for (double x_t : {-0.5, -0.3, -0.2}) {
        const double y = tangent_y(t, x_t);
        const double x_line = x_t + trajectory_slope(t, y) * y;
        CHECK(x_line == doctest::Approx(trajectory_eval(t, y)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(tangent_y(t, 1.0), InvalidInput);
    CHECK_THROWS_AS(tangent_y(ParabolicTrajectory{0.0, 0.0, 0.0}, 0.0), InvalidInput);
}

TEST_CASE("candidate table and selection for the centred cuboid") {
    const auto s = centred_cuboid_case();
    const auto cands = kkt_candidates(s);
    REQUIRE(cands.size() == static_cast<std::size_t>(kCandidateCount));
    int certified = 0;
    for (const auto& c : cands) {
        if (c.finite && c.feasible && c.kkt) ++certified;
    }
    CHECK(certified == 1);
    const auto& row3 = cands[2];
    CHECK(row3.kkt);
    CHECK(row3.point.beta == doctest::Approx(0.44801348).epsilon(1e-7));
    CHECK(row3.point.p_tilde == doctest::Approx(0.22418519).epsilon(1e-7));
    CHECK(row3.point.x_adj == doctest::Approx(-0.0996431).epsilon(1e-6));
    // Rows 6 and 7 reuse the curvature of rows 2 and 3 at the far end of the array.
    CHECK(cands[5].point.beta == cands[1].point.beta);
    CHECK(cands[6].point.p_tilde == cands[2].point.p_tilde);
    CHECK(cands[6].point.x_adj == s.cfg.half_aperture());

    const auto r = optimize_positive(s);
    REQUIRE(r.status == OptStatus::solved);
    CHECK(r.relaxed_candidate.value() == 3);
    const auto& sol = *r.solution;
    CHECK(sol.kkt_candidate_index.value() == 3);
    CHECK(sol.x_t_star <= sol.x_adj_star + 1e-9);
    CHECK(sol.x_adj_star - sol.x_t_star < s.cfg.spacing());
    CHECK(sol.active_elements.first == 0);
    CHECK(s.cfg.element_x(sol.active_elements.last) == sol.x_t_star);
    CHECK(trajectory_eval(sol.trajectory, s.user.y) == doctest::Approx(s.user.x).epsilon(1e-12));
    CHECK(trajectory_eval(sol.trajectory, s.obstacle.y_n) <= s.obstacle.x_r2 + 1e-9);
    CHECK(trajectory_eval(sol.trajectory, s.obstacle.y_f) <= s.obstacle.x_r2 + 1e-9);
    CHECK(f_para(s, {sol.trajectory.beta, sol.p_tilde, sol.x_t_star}) ==
          doctest::Approx(sol.objective_value).epsilon(1e-12));
}

TEST_CASE("negative curvature is the mirror image") {
    const auto s = centred_cuboid_case();
    AvoidanceScenario m = s;
    m.user = mirror(s.user);
    m.obstacle = mirror(s.obstacle);
    const auto pos = optimize_positive(s);
    const auto neg = optimize_negative(m);
    REQUIRE(pos.status == OptStatus::solved);
    REQUIRE(neg.status == OptStatus::solved);
    const auto& a = *pos.solution;
    const auto& b = *neg.solution;
    CHECK(b.curvature_sign == CurvatureSign::negative);
    CHECK(b.trajectory.beta == doctest::Approx(-a.trajectory.beta).epsilon(1e-12));
    CHECK(b.trajectory.p == doctest::Approx(a.trajectory.p).epsilon(1e-12));
    CHECK(b.trajectory.q == doctest::Approx(-a.trajectory.q).epsilon(1e-12));
    CHECK(b.x_t_star == doctest::Approx(-a.x_t_star).epsilon(1e-12));
    const std::size_t last = s.cfg.n_elements() - 1;
    CHECK(b.active_elements.first == last - a.active_elements.last);
    CHECK(b.active_elements.last == last - a.active_elements.first);
    CHECK(trajectory_eval(b.trajectory, m.obstacle.y_n) >= m.obstacle.x_r1 - 1e-9);

    // Mirrored elements receive identical phases.
    const Excitation ea = curving_phases(s.cfg, a.trajectory, a.active_elements);
    const Excitation eb = curving_phases(s.cfg, b.trajectory, b.active_elements);
    for (std::size_t i = a.active_elements.first; i <= a.active_elements.last; ++i) {
        CHECK(eb.phase[last - i] == doctest::Approx(ea.phase[i]).epsilon(1e-12));
    }
}

TEST_CASE("phases bend rays along the tangent lines") {
    const auto s = centred_cuboid_case();
    const auto r = optimize_positive(s);
    REQUIRE(r.solution);
    const auto& sol = *r.solution;
    const Excitation e = curving_phases(s.cfg, sol.trajectory, sol.active_elements);
    CHECK(e.active_count() == sol.active_elements.size());
    double worst = 0.0;
    double worst_interior = 0.0;
    for (std::size_t i = sol.active_elements.first; i < sol.active_elements.last; ++i) {
        const double mid = 0.5 * (s.cfg.element_x(i) + s.cfg.element_x(i + 1));
        const double err = std::abs(ray_angle_from_phases(s.cfg, e, i) - tangent_angle(sol.trajectory, mid));
        worst = std::max(worst, err);
        // Next to the sqrt_domain edge the tangent point approaches y = 0 and
        // the two-element difference loses accuracy.
        if (i + 10 < sol.active_elements.last) worst_interior = std::max(worst_interior, err);
    }
    CHECK(worst < 1e-2);
    CHECK(worst_interior < 1e-4);
    CHECK_THROWS_AS(curving_phases(s.cfg, sol.trajectory, {0, s.cfg.n_elements()}), InvalidInput);
}

TEST_CASE("weight w trades robustness for aperture") {
    std::size_t prev = 0;
    for (double w : {0.05, 0.2, 1.0, 5.0}) {
        const auto r = optimize_positive(centred_cuboid_case(w));
        if (r.status != OptStatus::solved) continue;
        CHECK(r.solution->active_elements.size() >= prev);
        prev = r.solution->active_elements.size();
    }
    CHECK(prev > 0);
}

TEST_CASE("fallback fills the unused aperture with reverse curvature") {
    const auto s = centred_cuboid_case();
    const auto plan = plan_with_fallback(s);
    REQUIRE(plan.status == OptStatus::solved);
    REQUIRE(plan.primary);
    REQUIRE(plan.secondary);
    CHECK(plan.primary->curvature_sign == CurvatureSign::positive);
    CHECK(plan.secondary->curvature_sign == CurvatureSign::negative);
    CHECK(plan.secondary->active_elements.first > plan.primary->active_elements.last);
    const Excitation e = plan_excitation(s.cfg, plan, 1024.0);
    CHECK(e.power() == doctest::Approx(1024.0).epsilon(1e-12));
    CHECK(e.active_count() == plan.primary->active_elements.size() + plan.secondary->active_elements.size());
}

TEST_CASE("obstacle on the wrong side forces negative curvature") {
    // The user sits far to the right of an obstacle hugging the -R edge, so the
    // parabola cannot pass on the -x side.
    const AvoidanceScenario s{{0.4, 0.8}, RectObstacle(0.3, -0.6, 0.05, 0.5), reference_array(), 1.0};
    const auto pos = optimize_positive(s);
    CHECK(pos.status == OptStatus::infeasible);
    CHECK_FALSE(pos.violated_constraint.empty());
    const auto plan = plan_with_fallback(s);
    REQUIRE(plan.negative);
    CHECK(plan.status != OptStatus::infeasible);
    if (plan.status == OptStatus::solved) {
        CHECK(plan.primary->curvature_sign == CurvatureSign::negative);
        CHECK(trajectory_eval(plan.primary->trajectory, s.obstacle.y_n) >= s.obstacle.x_r1 - 1e-9);
        CHECK(trajectory_eval(plan.primary->trajectory, s.obstacle.y_f) >= s.obstacle.x_r1 - 1e-9);
    }
}

TEST_CASE("validation") {
    auto s = centred_cuboid_case();
    s.weight_w = 0.0;
    CHECK_THROWS_AS(optimize_positive(s), InvalidInput);
    s = centred_cuboid_case();
    s.user.y = 0.0;
    CHECK_THROWS_AS(optimize_positive(s), InvalidInput);
}

TEST_CASE("relaxed optimum agrees with a lattice search") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const UlaConfig cfg(256, 0.002, 140e9);
    int compared = 0;
    for (int trial = 0; trial < 200 && compared < 20; ++trial) {
        const double yn = 0.05 + 0.3 * u(rng);
        const double yf = yn + 0.05 + 0.4 * u(rng);
        const double yu = yf + 0.1 + 0.8 * u(rng);
        const double x2 = -0.2 + 0.3 * u(rng);
        const double x1 = x2 + 0.05 + 0.2 * u(rng);
        const double xu = -0.3 + 0.5 * u(rng);
        const AvoidanceScenario s{{xu, yu}, RectObstacle(x1, x2, yn, yf), cfg, 0.2 + 2.0 * u(rng)};
        const auto r = optimize_positive(s);
        if (!r.relaxed || !r.relaxed_objective) continue;
        if (r.relaxed->beta <= 1e-12 || r.relaxed->x_adj <= -cfg.half_aperture() + 1e-9) continue;
        const auto q = to_oracle(s);
        const auto g = oracle::grid_search(q, 200);
        REQUIRE(g.feasible);
        CHECK(g.objective >= *r.relaxed_objective - 1e-9);
        CHECK(g.objective - *r.relaxed_objective <= 2.0 * oracle::cell_tolerance(q, g));
        ++compared;
    }
    CHECK(compared >= 10);
}
