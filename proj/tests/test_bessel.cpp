// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "nfbeam/bessel.hpp"
#include "oracles/wavefront_oracle.hpp"

using namespace nfbeam;

namespace {

constexpr double kPi = std::numbers::pi;
double rad(double deg) { return deg * kPi / 180.0; }

const UlaConfig& reference_array() {
    static const UlaConfig cfg = UlaConfig::half_wavelength(1024, 140e9);
    return cfg;
}

// Obstacle placements inferred from target self-healing distances.
const RectObstacle kCentredCuboid(0.14, -0.14, 0.10, 0.57);
const RectObstacle kOffsetCuboid(0.1393, -0.1407, 0.10, 0.5694);
const CircleObstacle kCylinder({0.0, 0.24}, 0.14);

}  // namespace

TEST_CASE("wavefront values") {
    const auto d30 = BesselDesign::from_degrees(0.0, 30.0);
    CHECK(wavefront(1.0, d30) == doctest::Approx(0.57735).epsilon(1e-5));
    CHECK(wavefront(-1.0, d30) == doctest::Approx(0.57735).epsilon(1e-5));
    CHECK(wavefront(1.0, BesselDesign::from_degrees(15.0, 20.0)) == doctest::Approx(0.08749).epsilon(1e-4));
    CHECK_THROWS_AS(wavefront(1.0, BesselDesign::from_degrees(45.0, 50.0)), InvalidInput);
}

TEST_CASE("wavefront is the locus equidistant in phase") {
    // Every wavefront point is reached by exactly one element ray, at the
    // distance the element phase encodes.
    const auto d = BesselDesign::from_degrees(15.0, 20.0);
    const auto samples = oracle::sample_wavefront(d.theta_a(), d.alpha(), 4.0, 100000);
    for (double x : {-0.3, -0.01, 0.01, 0.2}) {
        const double dist = oracle::min_distance(samples, x);
        const double s = x >= 0.0 ? std::abs(std::sin(d.alpha() - d.theta_a())) : std::abs(std::sin(d.alpha() + d.theta_a()));
        CHECK(dist == doctest::Approx(s * std::abs(x)).epsilon(1e-9));
    }
}

TEST_CASE("steering condition is exact") {
    for (double t : {0.0, rad(5.0), rad(15.0), rad(-30.0), rad(40.0)}) {
        const double at = std::abs(t);
        if (at > 0.0) {
            CHECK_FALSE(BesselDesign(t, at - 1e-12).steerable());
        }
        CHECK(BesselDesign(t, std::max(at, 1e-12)).steerable() == (at > 0.0 || 1e-12 < kPi / 2.0));
        CHECK(BesselDesign(t, kPi / 2.0 - at - 1e-12).steerable());
        if (kPi / 2.0 - at < kPi / 2.0) {
            CHECK_FALSE(BesselDesign(t, kPi / 2.0 - at).steerable());
        }
    }
    const auto fail = BesselDesign::from_degrees(15.0, 10.0);
    CHECK_FALSE(fail.steerable());
    CHECK(fail.steering_violation().value() == "alpha < |theta|");
    const auto wide = BesselDesign::from_degrees(30.0, 65.0);
    CHECK(wide.steering_violation().value() == "alpha >= 90deg - |theta|");
    CHECK(BesselDesign(rad(10.0), rad(10.0)).boundary_warning());
    CHECK_THROWS_AS(BesselDesign(0.0, 0.0), InvalidInput);
    CHECK_THROWS_AS(BesselDesign(kPi / 2.0, 0.1), InvalidInput);
}

TEST_CASE("Bessel phases") {
    const UlaConfig& cfg = reference_array();
    const double k = cfg.wavenumber();

    const Excitation e30 = bessel_phases(cfg, BesselDesign::from_degrees(0.0, 30.0));
    for (std::size_t i = 0; i < cfg.n_elements(); ++i) {
        CHECK(e30.phase[i] == doctest::Approx(0.5 * k * std::abs(cfg.element_x(i))).epsilon(1e-12));
        CHECK(e30.magnitude[i] == 1.0);
        CHECK(e30.active[i] == 1);
    }

    const auto d = BesselDesign::from_degrees(15.0, 20.0);
    const UlaConfig one(3, 0.01, 140e9);  // element at x = +0.01
    const Excitation e = bessel_phases(one, d);
    const auto samples = oracle::sample_wavefront(d.theta_a(), d.alpha(), 4.0 * 0.01, 100000);
    CHECK(e.phase[2] == doctest::Approx(k * std::sin(rad(5.0)) * 0.01).epsilon(1e-12));
    CHECK(e.phase[2] / k == doctest::Approx(oracle::min_distance(samples, 0.01)).epsilon(1e-6));

    const Excitation flat = bessel_phases(cfg, BesselDesign(rad(12.0), rad(12.0)));
    for (std::size_t i = 0; i < cfg.n_elements(); ++i) {
        if (cfg.element_x(i) >= 0.0) {
            CHECK(flat.phase[i] == 0.0);
        }
    }

    CHECK_THROWS_AS(bessel_phases(cfg, BesselDesign::from_degrees(15.0, 10.0)), SteeringError);
}

TEST_CASE("direct rays are normal to the wavefront") {
    const auto d = BesselDesign::from_degrees(10.0, 25.0);
    CHECK(direct_ray(0.0, 0.3, d) == 0.3);
    CHECK(direct_ray(0.0, -0.3, d) == -0.3);
    CHECK(direct_ray(1.0, 1.0, BesselDesign(0.0, kPi / 4.0 - 1e-9)) == doctest::Approx(0.0).epsilon(1e-8));

    const double h = 1e-6;
    for (double x : {-0.4, -0.1, 0.1, 0.4}) {
        // Ray direction (dx/dy) and wavefront slope (dy/dx); perpendicular
        // lines satisfy (dy/dx)_wave * (dy/dx)_ray = -1.
        const double ray_dxdy = (direct_ray(1.0, x, d) - direct_ray(0.0, x, d));
        const double wave_dydx = (wavefront(x + h, d) - wavefront(x - h, d)) / (2.0 * h);
        CHECK(wave_dydx * (1.0 / ray_dxdy) == doctest::Approx(-1.0).epsilon(1e-6));
    }
}

TEST_CASE("propagation limits") {
    const UlaConfig& cfg = reference_array();
    const double R = cfg.half_aperture();
    const auto l20 = propagation_limits(cfg, BesselDesign::from_degrees(0.0, 20.0));
    CHECK(std::abs(l20.d_max - 1.5047) < 5e-4);
    CHECK(l20.d_max == doctest::Approx(l20.d_lim).epsilon(1e-14));
    CHECK(l20.d_max == doctest::Approx(R / std::tan(rad(20.0))).epsilon(1e-14));
    const auto l30 = propagation_limits(cfg, BesselDesign::from_degrees(0.0, 30.0));
    CHECK(std::abs(l30.d_max - 0.9486) < 5e-4);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> th(-0.7, 0.7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int checked = 0;
    while (checked < 200) {
        const double t = th(rng);
        const double lo = std::abs(t);
        const double hi = kPi / 2.0 - std::abs(t);
        if (hi <= lo) continue;
        const double a = lo + (hi - lo) * (0.01 + 0.98 * u(rng));
        const BesselDesign d(t, a);
        const auto lim = propagation_limits(cfg, d);
        const double np = std::hypot(lim.ref_point_pos.x, lim.ref_point_pos.y);
        const double nm = std::hypot(lim.ref_point_neg.x, lim.ref_point_neg.y);
        CHECK(lim.d_max == doctest::Approx(std::min(np, nm)).epsilon(1e-10));
        CHECK(lim.d_lim == doctest::Approx(std::max(np, nm)).epsilon(1e-10));
        CHECK(lim.d_max > 0.0);
        CHECK(lim.d_max <= lim.d_lim);
        if (t != 0.0) {
            CHECK(lim.d_max < lim.d_lim);
        }
        for (const Point2& p : {lim.ref_point_pos, lim.ref_point_neg}) {
            CHECK(p.x == doctest::Approx(p.y * std::tan(t)).epsilon(1e-9).scale(std::abs(p.y)));
        }
        ++checked;
    }
}

TEST_CASE("d_max decreases with alpha and with |theta|") {
    const UlaConfig& cfg = reference_array();
    for (double t : {0.0, rad(5.0), rad(-15.0)}) {
        double prev = std::numeric_limits<double>::infinity();
        for (double a = std::max(std::abs(t), rad(1.0)); a < kPi / 2.0 - std::abs(t) - 1e-3; a += rad(0.5)) {
            const double dm = propagation_limits(cfg, BesselDesign(t, a)).d_max;
            CHECK(dm < prev);
            prev = dm;
        }
    }
    const double a = rad(30.0);
    double prev = std::numeric_limits<double>::infinity();
    for (double t = 0.0; t <= rad(29.0); t += rad(0.5)) {
        const double dm = propagation_limits(cfg, BesselDesign(-t, a)).d_max;
        CHECK(dm < prev);
        prev = dm;
    }
}

TEST_CASE("element count and spacing bounds") {
    const auto d = BesselDesign::from_degrees(15.0, 20.0);
    const double half_lambda = 299792458.0 / 140e9 / 2.0;
    CHECK(min_elements(4.0, d, half_lambda) == 3121);
    CHECK(min_elements(4.0, d, 0.00186) == 1797);
    CHECK(min_elements(4.0, d, 0.00372) == 899);

    // Truncated to five significant figures the bound reads 0.0018666.
    const double ms = max_spacing(d, 2.0 * half_lambda);
    CHECK(std::floor(ms * 1e7) == 18666.0);
    CHECK(max_spacing(BesselDesign::from_degrees(0.0, 30.0), 2.0 * half_lambda) ==
          doctest::Approx(2.0 * half_lambda).epsilon(1e-14));
    CHECK(max_spacing(BesselDesign(0.0, kPi / 2.0 - 1e-9), 2.0 * half_lambda) ==
          doctest::Approx(half_lambda).epsilon(1e-12));

    const double s3121 = min_spacing_for_target(4.0, d, 3121);
    CHECK(s3121 <= half_lambda);
    CHECK(min_spacing_for_target(1e-12, d, 3121) < 1e-14);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double t = (u(rng) - 0.5) * 1.2;
        const double lo = std::abs(t);
        const double hi = kPi / 2.0 - std::abs(t);
        if (hi <= lo) continue;
        const BesselDesign di(t, lo + (hi - lo) * (0.01 + 0.98 * u(rng)));
        CHECK(max_spacing(di, 2.0 * half_lambda) > half_lambda);
        const double target = 0.2 + 5.0 * u(rng);
        const double spacing = 0.0005 + 0.002 * u(rng);
        const long long n = min_elements(target, di, spacing);
        const UlaConfig cfg(static_cast<std::size_t>(n), spacing, 140e9);
        CHECK(propagation_limits(cfg, di).d_max >= target * (1.0 - 1e-12));
        CHECK(min_spacing_for_target(target, di, n) <= spacing * (1.0 + 1e-12));
    }
}

TEST_CASE("self-healing distances for the inferred cuboid") {
    const UlaConfig& cfg = reference_array();
    const auto r30 = self_heal_rect(cfg, BesselDesign::from_degrees(0.0, 30.0), kCentredCuboid);
    REQUIRE(r30.d_h_pos);
    REQUIRE(r30.d_h_neg);
    CHECK(std::abs(*r30.d_h_pos - 0.8132) < 5e-5);
    CHECK(*r30.d_h_pos == doctest::Approx(*r30.d_h_neg).epsilon(1e-14));
    CHECK_FALSE(r30.pos_unblocked);
    CHECK_FALSE(r30.neg_unblocked);

    const auto r20 = self_heal_rect(cfg, BesselDesign::from_degrees(0.0, 20.0), kCentredCuboid);
    CHECK(std::abs(*r20.d_h_pos - 0.9575) < 5e-5);
    CHECK(std::abs(*r20.d_h_neg - 0.9575) < 5e-5);

    const double t = std::atan(-0.1 / 1.0);
    const BesselDesign steered(t, rad(20.0) + std::abs(t));
    const auto r4a = self_heal_rect(cfg, steered, kOffsetCuboid);
    CHECK(std::abs(*r4a.d_h_pos - 0.9593) < 5e-5);
    CHECK(std::abs(*r4a.d_h_neg - 0.7549) < 5e-5);

    const auto r4b = self_heal_circle(cfg, steered, kCylinder);
    CHECK(std::abs(*r4b.d_h_pos - 0.6118) < 5e-5);
    CHECK(std::abs(*r4b.d_h_neg - 0.5137) < 5e-5);
}

TEST_CASE("self-healing edge cases") {
    const UlaConfig& cfg = reference_array();
    const auto d = BesselDesign::from_degrees(0.0, 30.0);

    // Far to the left: every positive-side ray clears it, so x_p* is the first element.
    const auto left = self_heal_rect(cfg, d, RectObstacle(-3.0, -3.5, 0.1, 0.3));
    REQUIRE(left.x_p_star);
    CHECK(*left.x_p_star == cfg.element_x(0));
    CHECK(left.pos_unblocked);
    CHECK_FALSE(left.x_m_star);
    CHECK_FALSE(left.d_h_neg);

    // A tiny circle reduces to its centre point.
    const Point2 c{0.05, 0.4};
    const auto tiny = self_heal_circle(cfg, d, CircleObstacle(c, 1e-12));
    const auto pts = self_heal_from_points(cfg, d, c, c);
    CHECK(*tiny.x_p_star == *pts.x_p_star);
    CHECK(*tiny.x_m_star == *pts.x_m_star);

    const auto sym = self_heal_circle(cfg, d, CircleObstacle({0.0, 0.5}, 0.1));
    CHECK(*sym.x_p_star == -*sym.x_m_star);
    CHECK(*sym.d_h_pos == doctest::Approx(*sym.d_h_neg).epsilon(1e-14));
}

TEST_CASE("self-healing distance shrinks as alpha grows") {
    const UlaConfig& cfg = reference_array();
    double prev = std::numeric_limits<double>::infinity();
    int defined = 0;
    for (double a = rad(10.0); a < rad(60.0); a += rad(0.25)) {
        const auto rep = self_heal_rect(cfg, BesselDesign(0.0, a), kCentredCuboid);
        if (!rep.d_h_pos) continue;
        CHECK(*rep.d_h_pos <= prev);
        prev = *rep.d_h_pos;
        ++defined;
    }
    CHECK(defined > 50);
}
