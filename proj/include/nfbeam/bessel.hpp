// SPDX-License-Identifier: Apache-2.0
//
// Bessel-beam synthesis for a ULA and the closed-form limits of the design:
// steering feasibility, propagation distances, element-count and spacing
// bounds, and self-healing onset distances behind an obstacle.
//
// A design is the pair (theta_a, alpha): theta_a is the steering angle of the
// beam axis and alpha the cone half-angle of the wavefront. The wavefront is
// the broken line y = tan(alpha - theta_a) x for x >= 0 and
// y = -tan(alpha + theta_a) x for x < 0. Element n radiates along the normal
// of the wavefront through its position, and its phase equals k times its
// distance to the wavefront.

#pragma once

#include <optional>
#include <string>

#include "nfbeam/array_geometry.hpp"
#include "nfbeam/excitation.hpp"

namespace nfbeam {

/// Raised when a Bessel design does not satisfy |theta_a| <= alpha < pi/2 - |theta_a|.
class SteeringError : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class BesselDesign {
public:
    /// Throws InvalidInput unless |theta_a| < pi/2 and 0 < alpha < pi/2.
    BesselDesign(double theta_a, double alpha);

    static BesselDesign from_degrees(double theta_deg, double alpha_deg);

    double theta_a() const { return theta_a_; }
    double alpha() const { return alpha_; }

    /// alpha + |theta_a| < pi/2: the wavefront function exists.
    bool definable() const;

    /// |theta_a| <= alpha < pi/2 - |theta_a|, compared without tolerance.
    bool steerable() const;

    /// Set on the boundary alpha == |theta_a|, where the positive-side cone
    /// is flat and the propagation distance is degraded.
    bool boundary_warning() const;

    /// Violated inequality of the steering condition, or nullopt when steerable.
    std::optional<std::string> steering_violation() const;

private:
    double theta_a_;
    double alpha_;
};

struct BesselLimits {
    double d_max;           ///< guaranteed quasi-non-diffracting distance [m]
    double d_lim;           ///< distance beyond which no Bessel structure remains [m]
    Point2 ref_point_pos;   ///< last crossing of the positive-side edge ray with the beam axis
    Point2 ref_point_neg;   ///< same for the negative-side edge ray
};

struct SelfHealReport {
    std::optional<double> d_h_pos;
    std::optional<double> d_h_neg;
    std::optional<double> x_p_star;  ///< first element whose ray clears the obstacle on the +x side
    std::optional<double> x_m_star;  ///< first element whose ray clears the obstacle on the -x side
    bool pos_unblocked = false;      ///< x_p_star < 0: the positive-side beam is not blocked
    bool neg_unblocked = false;      ///< x_m_star > 0: the negative-side beam is not blocked
};

/// Wavefront height at x. Throws InvalidInput when the design is not definable.
double wavefront(double x, const BesselDesign& d);

/// Phases k |sin(alpha - theta_a)| x for x >= 0 and -k |sin(alpha + theta_a)| x
/// otherwise, unit magnitudes, all elements active. Throws SteeringError for
/// designs that are not steerable.
Excitation bessel_phases(const UlaConfig& cfg, const BesselDesign& d);

/// x-coordinate at height y of the ray leaving the element at x_tn.
double direct_ray(double y, double x_tn, const BesselDesign& d);

/// Reference points and propagation distances of a steerable design.
BesselLimits propagation_limits(const UlaConfig& cfg, const BesselDesign& d);

/// Smallest element count whose aperture reaches d_target.
long long min_elements(double d_target, const BesselDesign& d, double spacing);

/// Largest spacing free of grating interference: (lambda / 2) / sin(alpha + |theta_a|).
double max_spacing(const BesselDesign& d, double wavelength);

/// Spacing at which n_elements reach d_target. The caller checks it against max_spacing.
double min_spacing_for_target(double d_target, const BesselDesign& d, long long n_elements);

SelfHealReport self_heal_rect(const UlaConfig& cfg, const BesselDesign& d, const RectObstacle& obs);

/// Same as self_heal_rect with the obstacle corners replaced by the tangent
/// points between the circle and the edge rays on each side.
SelfHealReport self_heal_circle(const UlaConfig& cfg, const BesselDesign& d, const CircleObstacle& obs);

/// Self-healing report from explicit clearance points: the positive side must
/// clear (x_pos, y_pos) and the negative side (x_neg, y_neg).
SelfHealReport self_heal_from_points(const UlaConfig& cfg, const BesselDesign& d,
                                     Point2 clear_pos, Point2 clear_neg);

}  // namespace nfbeam
