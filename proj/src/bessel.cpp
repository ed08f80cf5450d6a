// SPDX-License-Identifier: Apache-2.0

#include "nfbeam/bessel.hpp"

#include <cmath>
#include <numbers>

namespace nfbeam {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void require_steerable(const BesselDesign& d) {
    if (auto why = d.steering_violation()) {
        throw SteeringError("Bessel design is not steerable: " + *why);
    }
}

double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }

}  // namespace

BesselDesign::BesselDesign(double theta_a, double alpha) : theta_a_(theta_a), alpha_(alpha) {
    if (!(std::abs(theta_a) < kHalfPi)) {
        throw InvalidInput("steering angle must satisfy |theta_a| < 90 deg");
    }
    if (!(alpha > 0.0 && alpha < kHalfPi)) {
        throw InvalidInput("cone angle must satisfy 0 < alpha < 90 deg");
    }
}

BesselDesign BesselDesign::from_degrees(double theta_deg, double alpha_deg) {
    return BesselDesign(deg2rad(theta_deg), deg2rad(alpha_deg));
}

bool BesselDesign::definable() const { return alpha_ + std::abs(theta_a_) < kHalfPi; }

bool BesselDesign::steerable() const {
    const double t = std::abs(theta_a_);
    return t <= alpha_ && alpha_ < kHalfPi - t;
}

bool BesselDesign::boundary_warning() const { return alpha_ == std::abs(theta_a_); }

std::optional<std::string> BesselDesign::steering_violation() const {
    const double t = std::abs(theta_a_);
    if (!(t <= alpha_)) {
        return std::string("alpha < |theta|");
    }
    if (!(alpha_ < kHalfPi - t)) {
        return std::string("alpha >= 90deg - |theta|");
    }
    return std::nullopt;
}

double wavefront(double x, const BesselDesign& d) {
    if (!d.definable()) {
        throw InvalidInput("wavefront undefined: alpha + |theta_a| must be below 90 deg");
    }
    if (x >= 0.0) {
        return std::tan(d.alpha() - d.theta_a()) * x;
    }
    return -std::tan(d.alpha() + d.theta_a()) * x;
}

Excitation bessel_phases(const UlaConfig& cfg, const BesselDesign& d) {
    require_steerable(d);
    const double k = cfg.wavenumber();
    const double s_pos = std::abs(std::sin(d.alpha() - d.theta_a()));
    const double s_neg = std::abs(std::sin(d.alpha() + d.theta_a()));
    Excitation exc = Excitation::uniform(cfg.n_elements());
    for (std::size_t i = 0; i < cfg.n_elements(); ++i) {
        const double x = cfg.element_x(i);
        exc.phase[i] = x >= 0.0 ? k * s_pos * x : -k * s_neg * x;
    }
    return exc;
}

double direct_ray(double y, double x_tn, const BesselDesign& d) {
    require_steerable(d);
    if (x_tn >= 0.0) {
        return -std::tan(d.alpha() - d.theta_a()) * y + x_tn;
    }
    return std::tan(d.alpha() + d.theta_a()) * y + x_tn;
}

BesselLimits propagation_limits(const UlaConfig& cfg, const BesselDesign& d) {
    require_steerable(d);
    const double R = cfg.half_aperture();
    const double th = d.theta_a();
    const double a = d.alpha();
    const double t = std::abs(th);

    BesselLimits lim{};
    const double den_p = std::tan(th) + std::tan(a - th);
    const double den_m = std::tan(th) - std::tan(a + th);
    lim.ref_point_pos = {R * std::tan(th) / den_p, R / den_p};
    lim.ref_point_neg = {-R * std::tan(th) / den_m, -R / den_m};
    lim.d_max = R * std::cos(a + t) / std::sin(a);
    lim.d_lim = R * std::cos(a - t) / std::sin(a);
    return lim;
}

long long min_elements(double d_target, const BesselDesign& d, double spacing) {
    require_steerable(d);
    if (!(d_target > 0.0) || !(spacing > 0.0)) {
        throw InvalidInput("target distance and spacing must be positive");
    }
    const double a = d.alpha();
    const double t = std::abs(d.theta_a());
    const double n = 2.0 * d_target * std::sin(a) / (spacing * std::cos(a + t)) + 1.0;
    return static_cast<long long>(std::ceil(n));
}

double max_spacing(const BesselDesign& d, double wavelength) {
    require_steerable(d);
    return (wavelength / 2.0) / std::sin(d.alpha() + std::abs(d.theta_a()));
}

double min_spacing_for_target(double d_target, const BesselDesign& d, long long n_elements) {
    if (n_elements < 2) {
        throw InvalidInput("element count must be at least 2");
    }
    const double a = d.alpha();
    const double t = std::abs(d.theta_a());
    return 2.0 * d_target * std::sin(a) /
           (static_cast<double>(n_elements - 1) * std::cos(a + t));
}

SelfHealReport self_heal_from_points(const UlaConfig& cfg, const BesselDesign& d,
                                     Point2 clear_pos, Point2 clear_neg) {
    require_steerable(d);
    const double a = d.alpha();
    const double th = d.theta_a();
    const double bound_p = clear_pos.x + std::tan(a - th) * clear_pos.y;
    const double bound_m = clear_neg.x - std::tan(a + th) * clear_neg.y;

    SelfHealReport rep;
    // Element x increases with the index, so the first element above bound_p
    // is the minimum of X_p and the last element below bound_m is the maximum of X_m.
    for (std::size_t i = 0; i < cfg.n_elements(); ++i) {
        if (cfg.element_x(i) > bound_p) {
            rep.x_p_star = cfg.element_x(i);
            break;
        }
    }
    for (std::size_t i = cfg.n_elements(); i-- > 0;) {
        if (cfg.element_x(i) < bound_m) {
            rep.x_m_star = cfg.element_x(i);
            break;
        }
    }
    if (rep.x_p_star) {
        rep.d_h_pos = std::abs(*rep.x_p_star) * std::cos(a - th) / std::sin(a);
        rep.pos_unblocked = *rep.x_p_star < 0.0;
    }
    if (rep.x_m_star) {
        rep.d_h_neg = std::abs(*rep.x_m_star) * std::cos(a + th) / std::sin(a);
        rep.neg_unblocked = *rep.x_m_star > 0.0;
    }
    return rep;
}

SelfHealReport self_heal_rect(const UlaConfig& cfg, const BesselDesign& d, const RectObstacle& obs) {
    return self_heal_from_points(cfg, d, {obs.x_r1, obs.y_f}, {obs.x_r2, obs.y_f});
}

SelfHealReport self_heal_circle(const UlaConfig& cfg, const BesselDesign& d, const CircleObstacle& obs) {
    const double a = d.alpha();
    const double th = d.theta_a();
    const double r = obs.radius;
    const Point2 c1{obs.center.x + r * std::cos(a - th), obs.center.y + r * std::sin(a - th)};
    const Point2 c2{obs.center.x - r * std::cos(a + th), obs.center.y + r * std::sin(a + th)};
    return self_heal_from_points(cfg, d, c1, c2);
}

}  // namespace nfbeam
