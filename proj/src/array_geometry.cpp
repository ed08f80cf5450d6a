// SPDX-License-Identifier: Apache-2.0

#include "nfbeam/array_geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace nfbeam {

double distance(const Point2& a, const Point2& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

UlaConfig::UlaConfig(std::size_t n_elements, double spacing, double carrier_freq)
    : n_(n_elements), spacing_(spacing), freq_(carrier_freq) {
    if (n_elements < 2) {
        throw InvalidInput("array needs at least 2 elements, got " + std::to_string(n_elements));
    }
    if (!(spacing > 0.0) || !std::isfinite(spacing)) {
        throw InvalidInput("element spacing must be positive and finite");
    }
    if (!(carrier_freq > 0.0) || !std::isfinite(carrier_freq)) {
        throw InvalidInput("carrier frequency must be positive and finite");
    }
}

UlaConfig UlaConfig::half_wavelength(std::size_t n_elements, double carrier_freq) {
    if (!(carrier_freq > 0.0)) {
        throw InvalidInput("carrier frequency must be positive");
    }
    return UlaConfig(n_elements, kSpeedOfLight / carrier_freq / 2.0, carrier_freq);
}

double UlaConfig::wavelength() const { return kSpeedOfLight / freq_; }

double UlaConfig::wavenumber() const { return 2.0 * std::numbers::pi / wavelength(); }

double UlaConfig::half_aperture() const {
    return static_cast<double>(n_ - 1) * spacing_ / 2.0;
}

double UlaConfig::element_x(std::size_t i) const {
    // The numerator is integer-valued, so element_x(N-1-i) == -element_x(i) exactly.
    const double numerator = 2.0 * static_cast<double>(i) - static_cast<double>(n_ - 1);
    return numerator * 0.5 * spacing_;
}

std::vector<Point2> element_positions(const UlaConfig& cfg) {
    std::vector<Point2> out;
    out.reserve(cfg.n_elements());
    for (std::size_t i = 0; i < cfg.n_elements(); ++i) {
        out.push_back({cfg.element_x(i), 0.0});
    }
    return out;
}

std::vector<double> element_xs(const UlaConfig& cfg) {
    std::vector<double> out(cfg.n_elements());
    for (std::size_t i = 0; i < cfg.n_elements(); ++i) {
        out[i] = cfg.element_x(i);
    }
    return out;
}

Point2 rotate(const Point2& p, double theta) {
    if (!(std::abs(theta) < std::numbers::pi / 2.0)) {
        throw InvalidInput("rotation angle must satisfy |theta| < pi/2");
    }
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {p.x * c - p.y * s, p.x * s + p.y * c};
}

RectObstacle::RectObstacle(double x_r1_, double x_r2_, double y_n_, double y_f_)
    : x_r1(x_r1_), x_r2(x_r2_), y_n(y_n_), y_f(y_f_) {
    if (!(x_r1 > x_r2)) {
        throw InvalidInput("rectangle obstacle needs x_r1 > x_r2");
    }
    if (!(y_n > 0.0) || !(y_f > y_n)) {
        throw InvalidInput("rectangle obstacle needs 0 < y_n < y_f");
    }
}

CircleObstacle::CircleObstacle(Point2 center_, double radius_) : center(center_), radius(radius_) {
    if (!(radius > 0.0)) {
        throw InvalidInput("circle obstacle needs a positive radius");
    }
    if (!(center.y - radius > 0.0)) {
        throw InvalidInput("circle obstacle must lie strictly in front of the array (y_c - r > 0)");
    }
}

RectObstacle circle_bounding_square(const CircleObstacle& obs) {
    const double r = obs.radius;
    return RectObstacle(obs.center.x + r, obs.center.x - r, obs.center.y - r, obs.center.y + r);
}

RectObstacle mirror(const RectObstacle& obs) {
    return RectObstacle(-obs.x_r2, -obs.x_r1, obs.y_n, obs.y_f);
}

Point2 mirror(const Point2& p) { return {-p.x, p.y}; }

}  // namespace nfbeam
