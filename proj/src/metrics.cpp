// SPDX-License-Identifier: Apache-2.0

#include "nfbeam/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace nfbeam {

void ErrorBox::validate() const {
    if (!(half_width_x > 0.0) || !(half_width_y > 0.0)) {
        throw InvalidInput("error box half-widths must be positive");
    }
    if (nx < 2 || ny < 2) {
        throw InvalidInput("error box needs at least 2 samples per axis");
    }
}

GridSpec ErrorBox::grid() const {
    validate();
    GridSpec g;
    g.x_min = center.x - half_width_x;
    g.x_max = center.x + half_width_x;
    g.y_min = center.y - half_width_y;
    g.y_max = center.y + half_width_y;
    g.nx = nx;
    g.ny = ny;
    return g;
}

double amplitude_at_user(const UlaConfig& cfg, const Excitation& exc, const Point2& user,
                         const OcclusionModel& occ) {
    return std::abs(field_at(cfg, exc, user, occ));
}

std::vector<double> box_amplitudes(const UlaConfig& cfg, const Excitation& exc, const ErrorBox& box,
                                   const OcclusionModel& occ) {
    const FieldGrid grid = field_grid(cfg, exc, box.grid(), occ);
    std::vector<double> out;
    out.reserve(grid.values.size());
    for (const auto& v : grid.values) {
        const double a = std::abs(v);
        if (std::isfinite(a)) {
            out.push_back(a);
        }
    }
    return out;
}

double area_average(const UlaConfig& cfg, const Excitation& exc, const ErrorBox& box,
                    const OcclusionModel& occ) {
    const auto amps = box_amplitudes(cfg, exc, box, occ);
    if (amps.empty()) {
        throw InvalidInput("every error-box sample lies inside the obstacle");
    }
    double sum = 0.0;
    for (double a : amps) {
        sum += a;
    }
    return sum / static_cast<double>(amps.size());
}

double cdf_at(const std::vector<double>& values, double a) {
    if (values.empty()) {
        throw InvalidInput("empirical CDF of an empty sample");
    }
    const auto count = std::count_if(values.begin(), values.end(), [a](double v) { return v <= a; });
    return static_cast<double>(count) / static_cast<double>(values.size());
}

std::vector<std::pair<double, double>> empirical_cdf(const std::vector<double>& values, std::size_t levels) {
    if (values.empty()) {
        throw InvalidInput("empirical CDF of an empty sample");
    }
    if (levels < 2) {
        throw InvalidInput("empirical CDF needs at least 2 levels");
    }
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const double top = sorted.back();
    std::vector<std::pair<double, double>> out(levels);
    for (std::size_t i = 0; i < levels; ++i) {
        // The last level is exactly the maximum so the curve ends at 1.
        const double a = i + 1 == levels ? top : top * static_cast<double>(i) / static_cast<double>(levels - 1);
        const auto it = std::upper_bound(sorted.begin(), sorted.end(), a);
        out[i] = {a, static_cast<double>(it - sorted.begin()) / static_cast<double>(sorted.size())};
    }
    return out;
}

}  // namespace nfbeam
