// SPDX-License-Identifier: Apache-2.0
//
// Scalar field superposition in the xy-plane:
//
//     E(p) = sum_n  gamma_n / r_n * exp(-j k r_n + j phi_n),   r_n = |p - p_n|,
//
// summed over active elements whose line of sight to p is not blocked by the
// obstacle (hard shadow: element n is dropped iff the segment p_n -> p meets
// the closed obstacle). Values are relative amplitudes without calibration.

#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "nfbeam/array_geometry.hpp"
#include "nfbeam/excitation.hpp"

namespace nfbeam {

/// Linear-phase steering towards theta_a: phi_n = -k sin(theta_a) x_n.
Excitation gaussian_excitation(const UlaConfig& cfg, double theta_a);

/// Phase conjugation at a point: phi_n = k |focus - p_n|.
Excitation focusing_excitation(const UlaConfig& cfg, const Point2& focus);

class OcclusionModel {
public:
    using Shape = std::variant<std::monostate, RectObstacle, CircleObstacle>;

    OcclusionModel() = default;
    explicit OcclusionModel(RectObstacle r) : shape_(r) {}
    explicit OcclusionModel(CircleObstacle c) : shape_(c) {}

    static OcclusionModel free_space() { return {}; }

    const Shape& shape() const { return shape_; }
    bool has_obstacle() const { return !std::holds_alternative<std::monostate>(shape_); }

    /// True if p lies in the closed obstacle.
    bool inside(const Point2& p) const;

    /// True if the segment a -> b meets the closed obstacle.
    bool blocks(const Point2& a, const Point2& b) const;

private:
    Shape shape_;
};

/// Field at p. Throws InvalidInput if p.y <= 0 or p lies inside the obstacle.
std::complex<double> field_at(const UlaConfig& cfg, const Excitation& exc, const Point2& p,
                              const OcclusionModel& occ = {});

struct GridSpec {
    double x_min = -1.0;
    double x_max = 1.0;
    double y_min = 0.01;
    double y_max = 2.0;
    std::size_t nx = 2;
    std::size_t ny = 2;

    /// Throws InvalidInput unless nx, ny >= 2, y_min > 0 and the ranges are ordered.
    void validate() const;

    double x_at(std::size_t ix) const;
    double y_at(std::size_t iy) const;
};

/// Sampled field, row-major with y as the slow index: values[iy * nx + ix].
/// Points inside the obstacle hold NaN in both components.
struct FieldGrid {
    GridSpec spec;
    std::vector<std::complex<double>> values;

    const std::complex<double>& at(std::size_t ix, std::size_t iy) const {
        return values[iy * spec.nx + ix];
    }
    /// Largest finite amplitude, 0 if there is none.
    double max_abs() const;
};

/// Evaluates the field on the grid in parallel (OpenMP over grid points).
FieldGrid field_grid(const UlaConfig& cfg, const Excitation& exc, const GridSpec& spec,
                     const OcclusionModel& occ = {});

/// Single-threaded reference with identical arithmetic.
FieldGrid field_grid_serial(const UlaConfig& cfg, const Excitation& exc, const GridSpec& spec,
                            const OcclusionModel& occ = {});

/// |E| at p = (d sin(theta_a), d cos(theta_a)) for d = d_max_plot * i / samples,
/// i = 1..samples. Points inside the obstacle yield NaN.
std::vector<std::pair<double, double>> line_cut(const UlaConfig& cfg, const Excitation& exc,
                                                double theta_a, double d_max_plot,
                                                std::size_t samples, const OcclusionModel& occ = {});

/// Copy of exc with every element whose line of sight to p is blocked deactivated.
Excitation mask_occluded(const UlaConfig& cfg, const Excitation& exc, const Point2& p,
                         const OcclusionModel& occ);

}  // namespace nfbeam
