// SPDX-License-Identifier: Apache-2.0

#include "nfbeam/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "field_kernels.hpp"

namespace nfbeam {

namespace {

bool segment_hits_rect(const Point2& a, const Point2& b, const RectObstacle& r) {
    // Liang-Barsky clipping of a + t (b - a), t in [0, 1], against the closed box.
    double t0 = 0.0;
    double t1 = 1.0;
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double p[4] = {-dx, dx, -dy, dy};
    const double q[4] = {a.x - r.x_r2, r.x_r1 - a.x, a.y - r.y_n, r.y_f - a.y};
    for (int i = 0; i < 4; ++i) {
        if (p[i] == 0.0) {
            if (q[i] < 0.0) {
                return false;
            }
            continue;
        }
        const double t = q[i] / p[i];
        if (p[i] < 0.0) {
            t0 = std::max(t0, t);
        } else {
            t1 = std::min(t1, t);
        }
        if (t0 > t1) {
            return false;
        }
    }
    return true;
}

bool segment_hits_circle(const Point2& a, const Point2& b, const CircleObstacle& c) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    double t = 0.0;
    if (len2 > 0.0) {
        t = ((c.center.x - a.x) * dx + (c.center.y - a.y) * dy) / len2;
        t = std::clamp(t, 0.0, 1.0);
    }
    const double ex = a.x + t * dx - c.center.x;
    const double ey = a.y + t * dy - c.center.y;
    return ex * ex + ey * ey <= c.radius * c.radius;
}

std::vector<Point2> grid_points(const GridSpec& spec) {
    std::vector<Point2> pts;
    pts.reserve(spec.nx * spec.ny);
    for (std::size_t iy = 0; iy < spec.ny; ++iy) {
        for (std::size_t ix = 0; ix < spec.nx; ++ix) {
            pts.push_back({spec.x_at(ix), spec.y_at(iy)});
        }
    }
    return pts;
}

}  // namespace

Excitation gaussian_excitation(const UlaConfig& cfg, double theta_a) {
    if (!(std::abs(theta_a) < std::numbers::pi / 2.0)) {
        throw InvalidInput("steering angle must satisfy |theta_a| < 90 deg");
    }
    const double slope = -cfg.wavenumber() * std::sin(theta_a);
    Excitation exc = Excitation::uniform(cfg.n_elements());
    for (std::size_t i = 0; i < cfg.n_elements(); ++i) {
        exc.phase[i] = slope * cfg.element_x(i);
    }
    return exc;
}

Excitation focusing_excitation(const UlaConfig& cfg, const Point2& focus) {
    if (!(focus.y > 0.0)) {
        throw InvalidInput("focus must lie in front of the array (y > 0)");
    }
    const double k = cfg.wavenumber();
    Excitation exc = Excitation::uniform(cfg.n_elements());
    for (std::size_t i = 0; i < cfg.n_elements(); ++i) {
        exc.phase[i] = k * std::hypot(focus.x - cfg.element_x(i), focus.y);
    }
    return exc;
}

bool OcclusionModel::inside(const Point2& p) const {
    if (const auto* r = std::get_if<RectObstacle>(&shape_)) {
        return p.x >= r->x_r2 && p.x <= r->x_r1 && p.y >= r->y_n && p.y <= r->y_f;
    }
    if (const auto* c = std::get_if<CircleObstacle>(&shape_)) {
        return std::hypot(p.x - c->center.x, p.y - c->center.y) <= c->radius;
    }
    return false;
}

bool OcclusionModel::blocks(const Point2& a, const Point2& b) const {
    if (const auto* r = std::get_if<RectObstacle>(&shape_)) {
        return segment_hits_rect(a, b, *r);
    }
    if (const auto* c = std::get_if<CircleObstacle>(&shape_)) {
        return segment_hits_circle(a, b, *c);
    }
    return false;
}

std::complex<double> field_at(const UlaConfig& cfg, const Excitation& exc, const Point2& p,
                              const OcclusionModel& occ) {
    if (!(p.y > 0.0)) {
        throw InvalidInput("field point must lie in front of the array (y > 0)");
    }
    if (occ.inside(p)) {
        throw InvalidInput("field point lies inside the obstacle");
    }
    return detail::evaluate_point(detail::prepare(cfg, exc), p, occ);
}

void GridSpec::validate() const {
    if (nx < 2 || ny < 2) {
        throw InvalidInput("grid needs at least 2 samples per axis");
    }
    if (!(x_max >= x_min) || !(y_max >= y_min)) {
        throw InvalidInput("grid ranges must be ordered (min <= max)");
    }
    if (!(y_min > 0.0)) {
        throw InvalidInput("grid must lie in front of the array (y_min > 0)");
    }
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(y_max)) {
        throw InvalidInput("grid ranges must be finite");
    }
}

double GridSpec::x_at(std::size_t ix) const {
    return x_min + (x_max - x_min) * static_cast<double>(ix) / static_cast<double>(nx - 1);
}

double GridSpec::y_at(std::size_t iy) const {
    return y_min + (y_max - y_min) * static_cast<double>(iy) / static_cast<double>(ny - 1);
}

double FieldGrid::max_abs() const {
    double m = 0.0;
    for (const auto& v : values) {
        const double a = std::abs(v);
        if (std::isfinite(a)) {
            m = std::max(m, a);
        }
    }
    return m;
}

FieldGrid field_grid(const UlaConfig& cfg, const Excitation& exc, const GridSpec& spec,
                     const OcclusionModel& occ) {
    spec.validate();
    FieldGrid grid{spec, std::vector<std::complex<double>>(spec.nx * spec.ny)};
    detail::evaluate_points_omp(detail::prepare(cfg, exc), grid_points(spec), occ, grid.values.data());
    return grid;
}

FieldGrid field_grid_serial(const UlaConfig& cfg, const Excitation& exc, const GridSpec& spec,
                            const OcclusionModel& occ) {
    spec.validate();
    FieldGrid grid{spec, std::vector<std::complex<double>>(spec.nx * spec.ny)};
    detail::evaluate_points_serial(detail::prepare(cfg, exc), grid_points(spec), occ, grid.values.data());
    return grid;
}

std::vector<std::pair<double, double>> line_cut(const UlaConfig& cfg, const Excitation& exc,
                                                double theta_a, double d_max_plot,
                                                std::size_t samples, const OcclusionModel& occ) {
    if (samples < 2) {
        throw InvalidInput("line cut needs at least 2 samples");
    }
    if (!(d_max_plot > 0.0)) {
        throw InvalidInput("line cut length must be positive");
    }
    if (!(std::abs(theta_a) < std::numbers::pi / 2.0)) {
        throw InvalidInput("line cut direction must satisfy |theta| < 90 deg");
    }
    std::vector<Point2> pts(samples);
    std::vector<double> dist(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        dist[i] = d_max_plot * static_cast<double>(i + 1) / static_cast<double>(samples);
        pts[i] = {dist[i] * std::sin(theta_a), dist[i] * std::cos(theta_a)};
    }
    std::vector<std::complex<double>> vals(samples);
    detail::evaluate_points_omp(detail::prepare(cfg, exc), pts, occ, vals.data());
    std::vector<std::pair<double, double>> out(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        const double a = std::abs(vals[i]);
        out[i] = {dist[i], std::isfinite(a) ? a : std::numeric_limits<double>::quiet_NaN()};
    }
    return out;
}

Excitation mask_occluded(const UlaConfig& cfg, const Excitation& exc, const Point2& p,
                         const OcclusionModel& occ) {
    Excitation out = exc;
    for (std::size_t i = 0; i < cfg.n_elements(); ++i) {
        if (out.active[i] && occ.blocks({cfg.element_x(i), 0.0}, p)) {
            out.deactivate(i);
        }
    }
    return out;
}

}  // namespace nfbeam
