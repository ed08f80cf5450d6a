// SPDX-License-Identifier: Apache-2.0
//
// Point-evaluation kernels shared by field_at, field_grid and line_cut.

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "nfbeam/array_geometry.hpp"
#include "nfbeam/excitation.hpp"
#include "nfbeam/field.hpp"

namespace nfbeam::detail {

/// Element data laid out for the inner summation loop.
struct PreparedArray {
    double k = 0.0;
    std::vector<double> x;
    std::vector<double> re;  ///< gamma_n cos(phi_n)
    std::vector<double> im;  ///< gamma_n sin(phi_n)
    std::vector<std::uint8_t> active;
};

PreparedArray prepare(const UlaConfig& cfg, const Excitation& exc);

/// Field at p without argument checks. Points inside the obstacle are not
/// detected here.
std::complex<double> evaluate_point(const PreparedArray& arr, const Point2& p, const OcclusionModel& occ);

/// Evaluates a batch of points; interior points get NaN.
void evaluate_points_serial(const PreparedArray& arr, const std::vector<Point2>& pts,
                            const OcclusionModel& occ, std::complex<double>* out);

/// Same as evaluate_points_serial with the point loop split across OpenMP threads.
void evaluate_points_omp(const PreparedArray& arr, const std::vector<Point2>& pts,
                         const OcclusionModel& occ, std::complex<double>* out);

}  // namespace nfbeam::detail
