// SPDX-License-Identifier: Apache-2.0

#include "field_kernels.hpp"

#include <cmath>
#include <limits>

namespace nfbeam::detail {

namespace {

std::complex<double> evaluate_or_sentinel(const PreparedArray& arr, const Point2& p,
                                          const OcclusionModel& occ) {
    if (occ.inside(p)) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        return {nan, nan};
    }
    return evaluate_point(arr, p, occ);
}

}  // namespace

PreparedArray prepare(const UlaConfig& cfg, const Excitation& exc) {
    exc.validate();
    if (exc.size() != cfg.n_elements()) {
        throw InvalidInput("excitation size does not match the array");
    }
    PreparedArray arr;
    arr.k = cfg.wavenumber();
    arr.x = element_xs(cfg);
    arr.re.resize(exc.size());
    arr.im.resize(exc.size());
    arr.active = exc.active;
    for (std::size_t i = 0; i < exc.size(); ++i) {
        arr.re[i] = exc.magnitude[i] * std::cos(exc.phase[i]);
        arr.im[i] = exc.magnitude[i] * std::sin(exc.phase[i]);
    }
    return arr;
}

std::complex<double> evaluate_point(const PreparedArray& arr, const Point2& p, const OcclusionModel& occ) {
    const bool check = occ.has_obstacle();
    double sum_re = 0.0;
    double sum_im = 0.0;
    const std::size_t n = arr.x.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!arr.active[i]) {
            continue;
        }
        if (check && occ.blocks({arr.x[i], 0.0}, p)) {
            continue;
        }
        const double r = std::hypot(p.x - arr.x[i], p.y);
        const double kr = arr.k * r;
        const double c = std::cos(kr);
        const double s = std::sin(kr);
        const double inv_r = 1.0 / r;
        // (re + j im) * (c - j s) / r
        sum_re += (arr.re[i] * c + arr.im[i] * s) * inv_r;
        sum_im += (arr.im[i] * c - arr.re[i] * s) * inv_r;
    }
    return {sum_re, sum_im};
}

void evaluate_points_serial(const PreparedArray& arr, const std::vector<Point2>& pts,
                            const OcclusionModel& occ, std::complex<double>* out) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
        out[i] = evaluate_or_sentinel(arr, pts[i], occ);
    }
}

void evaluate_points_omp(const PreparedArray& arr, const std::vector<Point2>& pts,
                         const OcclusionModel& occ, std::complex<double>* out) {
    const auto n = static_cast<long long>(pts.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (long long i = 0; i < n; ++i) {
        out[i] = evaluate_or_sentinel(arr, pts[static_cast<std::size_t>(i)], occ);
    }
}

}  // namespace nfbeam::detail
