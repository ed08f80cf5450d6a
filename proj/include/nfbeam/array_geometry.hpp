// SPDX-License-Identifier: Apache-2.0
//
// Coordinate system and uniform linear array (ULA) layout.
//
// The array lies on the x-axis, centred at the origin, and radiates into the
// half-plane y > 0. Angles are measured from the y-axis (broadside) towards
// positive x. All lengths are in metres, frequencies in hertz and angles in
// radians.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace nfbeam {

/// Speed of light in vacuum [m/s] (exact SI value).
inline constexpr double kSpeedOfLight = 299792458.0;

/// Raised when an input violates a documented precondition.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

double distance(const Point2& a, const Point2& b);

/// Uniform linear array geometry.
class UlaConfig {
public:
    /// Throws InvalidInput unless n_elements >= 2, spacing > 0 and carrier_freq > 0.
    UlaConfig(std::size_t n_elements, double spacing, double carrier_freq);

    /// Array whose spacing is half the carrier wavelength.
    static UlaConfig half_wavelength(std::size_t n_elements, double carrier_freq);

    std::size_t n_elements() const { return n_; }
    double spacing() const { return spacing_; }
    double carrier_freq() const { return freq_; }

    double wavelength() const;
    double wavenumber() const;

    /// R = (N - 1) * spacing / 2; the aperture spans [-R, R].
    double half_aperture() const;

    /// x-coordinate of element i (0-based): (2i - (N - 1)) / 2 * spacing.
    double element_x(std::size_t i) const;

private:
    std::size_t n_;
    double spacing_;
    double freq_;
};

/// Element positions in index order (strictly increasing x, y = 0).
std::vector<Point2> element_positions(const UlaConfig& cfg);

/// x-coordinates of all elements in index order.
std::vector<double> element_xs(const UlaConfig& cfg);

/// Rotation of a point by theta (|theta| < pi/2):
/// [x cos(theta) - y sin(theta), x sin(theta) + y cos(theta)].
Point2 rotate(const Point2& p, double theta);

/// Axis-aligned rectangular obstacle. x_r1 is the right edge, x_r2 the left
/// edge, y_n the edge nearest to the array and y_f the farthest edge.
struct RectObstacle {
    double x_r1;
    double x_r2;
    double y_n;
    double y_f;

    /// Throws InvalidInput unless x_r1 > x_r2 and 0 < y_n < y_f.
    RectObstacle(double x_r1, double x_r2, double y_n, double y_f);
};

/// Circular obstacle (cross-section of a cylinder) strictly in front of the array.
struct CircleObstacle {
    Point2 center;
    double radius;

    /// Throws InvalidInput unless radius > 0 and center.y - radius > 0.
    CircleObstacle(Point2 center, double radius);
};

/// Smallest axis-aligned square containing the circle.
RectObstacle circle_bounding_square(const CircleObstacle& obs);

/// Mirror image about the y-axis (x -> -x).
RectObstacle mirror(const RectObstacle& obs);
Point2 mirror(const Point2& p);

}  // namespace nfbeam
