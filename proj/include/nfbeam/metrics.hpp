// SPDX-License-Identifier: Apache-2.0
//
// Intensity statistics used to compare beam families: amplitude at the
// nominal user position, mean amplitude over a box of possible positions, and
// the empirical CDF of sampled amplitudes.

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "nfbeam/array_geometry.hpp"
#include "nfbeam/excitation.hpp"
#include "nfbeam/field.hpp"

namespace nfbeam {

/// Uniform nx x ny sample grid over [cx - hx, cx + hx] x [cy - hy, cy + hy],
/// edges included.
struct ErrorBox {
    Point2 center;
    double half_width_x = 0.1;
    double half_width_y = 0.1;
    std::size_t nx = 21;
    std::size_t ny = 21;

    /// Throws InvalidInput unless half-widths > 0 and nx, ny >= 2.
    void validate() const;
    GridSpec grid() const;
};

double amplitude_at_user(const UlaConfig& cfg, const Excitation& exc, const Point2& user,
                         const OcclusionModel& occ = {});

/// Amplitudes of all box samples outside the obstacle, in grid order.
std::vector<double> box_amplitudes(const UlaConfig& cfg, const Excitation& exc, const ErrorBox& box,
                                   const OcclusionModel& occ = {});

/// Mean amplitude over the box samples outside the obstacle. Throws
/// InvalidInput when every sample lies inside the obstacle.
double area_average(const UlaConfig& cfg, const Excitation& exc, const ErrorBox& box,
                    const OcclusionModel& occ = {});

/// Fraction of values <= a.
double cdf_at(const std::vector<double>& values, double a);

/// Right-continuous empirical CDF at `levels` amplitudes spaced uniformly
/// over [0, max(values)]. Throws InvalidInput for empty input or levels < 2.
std::vector<std::pair<double, double>> empirical_cdf(const std::vector<double>& values, std::size_t levels);

}  // namespace nfbeam
