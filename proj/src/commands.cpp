// SPDX-License-Identifier: Apache-2.0

#include "nfbeam/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "nfbeam/bessel.hpp"
#include "nfbeam/field.hpp"
#include "nfbeam/grid_io.hpp"
#include "nfbeam/metrics.hpp"

namespace nfbeam {

namespace {

double deg2rad(double d) { return d * std::numbers::pi / 180.0; }

Json opt_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json point_json(const Point2& p) { return Json::array({p.x, p.y}); }

void ensure_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw IoError("cannot create output directory '" + dir.string() + "'");
    }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json solution_json(const CurvingSolution& s, const Point2& user) {
    Json j;
    j["curvature_sign"] = to_string(s.curvature_sign);
    j["beta"] = s.trajectory.beta;
    j["p"] = s.trajectory.p;
    j["q"] = s.trajectory.q;
    j["p_tilde"] = s.p_tilde;
    j["x_adj_star"] = s.x_adj_star;
    j["x_t_star"] = s.x_t_star;
    j["objective"] = s.objective_value;
    j["candidate_index"] = s.kkt_candidate_index ? Json(*s.kkt_candidate_index) : Json(nullptr);
    j["active_first"] = s.active_elements.first;
    j["active_last"] = s.active_elements.last;
    j["anchor_residual"] = trajectory_eval(s.trajectory, user.y) - user.x;
    return j;
}

Json result_json(const OptimizeResult& r) {
    Json j;
    j["status"] = to_string(r.status);
    j["curvature_sign"] = to_string(r.sign);
    if (r.relaxed) {
        j["relaxed"] = {{"beta", r.relaxed->beta},
                        {"p_tilde", r.relaxed->p_tilde},
                        {"x_adj", r.relaxed->x_adj},
                        {"objective", opt_number(r.relaxed_objective)},
                        {"candidate_index",
                         r.relaxed_candidate ? Json(*r.relaxed_candidate) : Json(nullptr)}};
    } else {
        j["relaxed"] = nullptr;
    }
    if (r.status == OptStatus::infeasible) {
        j["violated_constraint"] = r.violated_constraint;
        j["violation"] = std::isfinite(r.violation) ? Json(r.violation) : Json(nullptr);
    }
    j["message"] = r.message;
    return j;
}

double line_cut_angle(const Scenario& s) {
    if (s.line_cut.theta_deg) {
        return deg2rad(*s.line_cut.theta_deg);
    }
    switch (s.beam.kind) {
        case BeamKind::gaussian:
        case BeamKind::bessel:
            return deg2rad(s.beam.theta_deg);
        case BeamKind::focus: {
            const Point2 f = s.beam.focus.value_or(s.user);
            return std::atan2(f.x, f.y);
        }
        case BeamKind::curving:
            return std::atan2(s.user.x, s.user.y);
    }
    return 0.0;
}

}  // namespace

AvoidanceScenario avoidance_scenario(const UlaConfig& cfg, const Point2& user,
                                     const OcclusionModel& obstacle, double w) {
    if (const auto* r = std::get_if<RectObstacle>(&obstacle.shape())) {
        return AvoidanceScenario{user, *r, cfg, w};
    }
    if (const auto* c = std::get_if<CircleObstacle>(&obstacle.shape())) {
        return AvoidanceScenario{user, circle_bounding_square(*c), cfg, w};
    }
    throw ScenarioError("curving beams need an obstacle to design against (set obstacle or curving.design_obstacle)");
}

Json plan_to_json(const FallbackPlan& plan, const Point2& user) {
    Json j;
    j["status"] = to_string(plan.status);
    j["primary"] = plan.primary ? solution_json(*plan.primary, user) : Json(nullptr);
    j["secondary"] = plan.secondary ? solution_json(*plan.secondary, user) : Json(nullptr);
    j["positive"] = result_json(plan.positive);
    j["negative"] = plan.negative ? result_json(*plan.negative) : Json(nullptr);
    j["message"] = plan.message;
    return j;
}

Json candidates_to_json(const std::vector<KktCandidate>& cands) {
    Json arr = Json::array();
    for (const auto& c : cands) {
        Json j;
        j["index"] = c.index;
        j["finite"] = c.finite;
        j["beta"] = c.finite ? Json(c.point.beta) : Json(nullptr);
        j["p_tilde"] = c.finite ? Json(c.point.p_tilde) : Json(nullptr);
        j["x_adj"] = c.finite ? Json(c.point.x_adj) : Json(nullptr);
        j["objective"] = c.finite ? Json(c.objective) : Json(nullptr);
        j["feasible"] = c.feasible;
        j["kkt"] = c.kkt;
        Json act = Json::array();
        for (auto a : c.active) {
            act.push_back(constraint_names()[a]);
        }
        j["active"] = act;
        j["multipliers"] = c.multipliers;
        arr.push_back(j);
    }
    return arr;
}

Excitation build_excitation(const UlaConfig& cfg, const BeamSpec& beam, const Point2& user,
                            const OcclusionModel& scene_obstacle, double budget, FallbackPlan* plan_out) {
    switch (beam.kind) {
        case BeamKind::gaussian:
            return normalize_power(gaussian_excitation(cfg, deg2rad(beam.theta_deg)), budget);
        case BeamKind::focus:
            return normalize_power(focusing_excitation(cfg, beam.focus.value_or(user)), budget);
        case BeamKind::bessel:
            return normalize_power(
                bessel_phases(cfg, BesselDesign::from_degrees(beam.theta_deg, beam.alpha_deg)), budget);
        case BeamKind::curving: {
            const OcclusionModel& design =
                beam.design_obstacle.has_obstacle() ? beam.design_obstacle : scene_obstacle;
            const AvoidanceScenario sc = avoidance_scenario(cfg, user, design, beam.w);
            FallbackPlan plan = plan_with_fallback(sc);
            if (plan_out) {
                *plan_out = plan;
            }
            if (plan.status != OptStatus::solved) {
                Json diag = plan_to_json(plan, user);
                throw OptimizationFailure("curving design failed: " + std::string(to_string(plan.status)),
                                          diag);
            }
            return plan_excitation(cfg, plan, budget);
        }
    }
    throw ScenarioError("unknown beam kind");
}

Json cmd_analyze(const Scenario& s) {
    if (s.beam.kind != BeamKind::bessel) {
        throw ScenarioError("analyze needs a bessel beam");
    }
    const BesselDesign d = BesselDesign::from_degrees(s.beam.theta_deg, s.beam.alpha_deg);
    Json j;
    j["beam"] = "bessel";
    j["theta_deg"] = s.beam.theta_deg;
    j["alpha_deg"] = s.beam.alpha_deg;
    j["n_elements"] = s.cfg.n_elements();
    j["spacing"] = s.cfg.spacing();
    j["wavelength"] = s.cfg.wavelength();
    j["definable"] = d.definable();
    j["steerable"] = d.steerable();
    if (auto why = d.steering_violation()) {
        j["reason"] = *why;
        return j;
    }
    j["boundary_warning"] = d.boundary_warning();
    const BesselLimits lim = propagation_limits(s.cfg, d);
    j["d_max"] = lim.d_max;
    j["d_lim"] = lim.d_lim;
    j["ref_point_pos"] = point_json(lim.ref_point_pos);
    j["ref_point_neg"] = point_json(lim.ref_point_neg);
    const double dmax_spacing = max_spacing(d, s.cfg.wavelength());
    j["max_spacing"] = dmax_spacing;
    j["spacing_ok"] = s.cfg.spacing() < dmax_spacing;
    if (s.d_target) {
        j["min_elements_for"] = {
            {"d_target", *s.d_target},
            {"n_elements", min_elements(*s.d_target, d, s.cfg.spacing())},
            {"min_spacing", min_spacing_for_target(*s.d_target, d,
                                                   static_cast<long long>(s.cfg.n_elements()))}};
    } else {
        j["min_elements_for"] = nullptr;
    }
    std::optional<SelfHealReport> rep;
    if (const auto* r = std::get_if<RectObstacle>(&s.obstacle.shape())) {
        rep = self_heal_rect(s.cfg, d, *r);
    } else if (const auto* c = std::get_if<CircleObstacle>(&s.obstacle.shape())) {
        rep = self_heal_circle(s.cfg, d, *c);
    }
    if (rep) {
        j["self_heal"] = {{"d_h_pos", opt_number(rep->d_h_pos)},
                          {"d_h_neg", opt_number(rep->d_h_neg)},
                          {"x_p_star", opt_number(rep->x_p_star)},
                          {"x_m_star", opt_number(rep->x_m_star)},
                          {"pos_unblocked", rep->pos_unblocked},
                          {"neg_unblocked", rep->neg_unblocked}};
    } else {
        j["self_heal"] = nullptr;
    }
    return j;
}

Json cmd_synthesize(const Scenario& s, const CommandOptions& opt) {
    ensure_dir(opt.out_dir);
    FallbackPlan plan;
    Excitation exc;
    try {
        exc = build_excitation(s.cfg, s.beam, s.user, s.obstacle, s.power_budget, &plan);
    } catch (const OptimizationFailure& f) {
        write_text_file(opt.out_dir / "curving.json", dump(f.diagnostic()));
        throw;
    }
    write_excitation_csv(s.cfg, exc, opt.out_dir / "excitation.csv");
    Json j;
    j["beam"] = to_string(s.beam.kind);
    j["n_elements"] = s.cfg.n_elements();
    j["active_elements"] = exc.active_count();
    j["power"] = exc.power();
    j["excitation_csv"] = "excitation.csv";
    if (s.beam.kind == BeamKind::curving) {
        write_text_file(opt.out_dir / "curving.json", dump(plan_to_json(plan, s.user)));
        j["curving_json"] = "curving.json";
    }
    return j;
}

Json cmd_simulate(const Scenario& s, const CommandOptions& opt) {
    ensure_dir(opt.out_dir);
    const Excitation exc = build_excitation(s.cfg, s.beam, s.user, s.obstacle, s.power_budget);
    GridSpec spec = s.grid;
    if (opt.grid) {
        spec.nx = opt.grid->first;
        spec.ny = opt.grid->second;
    }
    const FieldGrid grid = field_grid(s.cfg, exc, spec, s.obstacle);
    write_grid_csv(grid, opt.out_dir / "field.csv");
    write_grid_pgm(grid, opt.out_dir / "field.pgm");

    Json meta;
    meta["beam"] = to_string(s.beam.kind);
    meta["n_elements"] = s.cfg.n_elements();
    meta["spacing"] = s.cfg.spacing();
    meta["carrier_freq_hz"] = s.cfg.carrier_freq();
    meta["x_range"] = Json::array({spec.x_min, spec.x_max});
    meta["y_range"] = Json::array({spec.y_min, spec.y_max});
    meta["nx"] = spec.nx;
    meta["ny"] = spec.ny;
    meta["max_abs"] = grid.max_abs();
    meta["obstacle"] = s.obstacle.has_obstacle();
    meta["field_csv"] = "field.csv";
    meta["field_pgm"] = "field.pgm";
    if (opt.line_cut) {
        const double theta = line_cut_angle(s);
        const double length = s.line_cut.length.value_or(spec.y_max);
        const auto cut = line_cut(s.cfg, exc, theta, length, s.line_cut.samples, s.obstacle);
        write_line_cut_csv(cut, opt.out_dir / "line_cut.csv");
        meta["line_cut"] = {{"theta_rad", theta},
                            {"length", length},
                            {"samples", s.line_cut.samples},
                            {"file", "line_cut.csv"}};
    } else {
        meta["line_cut"] = nullptr;
    }
    write_text_file(opt.out_dir / "grid.json", dump(meta));
    return meta;
}

Json cmd_compare(const ScenarioSet& set, const CommandOptions& opt) {
    ensure_dir(opt.out_dir);
    std::string metrics = "beam,scenario,status,point_amplitude,area_average,min_amplitude,max_amplitude\n";
    Json summary = Json::array();
    for (const auto& beam : set.beams) {
        std::vector<double> pool;
        for (const auto& cs : set.cases) {
            std::string status = "ok";
            double point = std::nan("");
            double avg = std::nan("");
            double lo = std::nan("");
            double hi = std::nan("");
            try {
                BeamSpec b = beam;
                if (b.kind == BeamKind::curving && !b.design_obstacle.has_obstacle()) {
                    b.design_obstacle = cs.design_obstacle;
                }
                const Excitation exc = build_excitation(set.cfg, b, set.user, cs.obstacle, set.power_budget);
                point = amplitude_at_user(set.cfg, exc, set.user, cs.obstacle);
                const auto amps = box_amplitudes(set.cfg, exc, set.box, cs.obstacle);
                if (amps.empty()) {
                    throw InvalidInput("every error-box sample lies inside the obstacle");
                }
                double sum = 0.0;
                lo = amps.front();
                hi = amps.front();
                for (double a : amps) {
                    sum += a;
                    lo = std::min(lo, a);
                    hi = std::max(hi, a);
                }
                avg = sum / static_cast<double>(amps.size());
                pool.insert(pool.end(), amps.begin(), amps.end());
            } catch (const OptimizationFailure& f) {
                status = f.diagnostic().value("status", std::string("infeasible"));
            }
            metrics += beam.label + "," + cs.label + "," + status + "," + format_double(point) + "," +
                       format_double(avg) + "," + format_double(lo) + "," + format_double(hi) + "\n";
            summary.push_back({{"beam", beam.label},
                               {"scenario", cs.label},
                               {"status", status},
                               {"point_amplitude", point},
                               {"area_average", avg}});
        }
        std::string cdf = "amplitude,probability\n";
        if (!pool.empty()) {
            for (const auto& [a, p] : empirical_cdf(pool, opt.levels)) {
                cdf += format_double(a) + "," + format_double(p) + "\n";
            }
        }
        write_text_file(opt.out_dir / ("cdf_" + beam.label + ".csv"), cdf);
    }
    write_text_file(opt.out_dir / "metrics.csv", metrics);
    return summary;
}

Json cmd_optimize(const Scenario& s, const CommandOptions& opt) {
    ensure_dir(opt.out_dir);
    if (s.beam.kind != BeamKind::curving) {
        throw ScenarioError("optimize needs a curving beam");
    }
    const OcclusionModel& design =
        s.beam.design_obstacle.has_obstacle() ? s.beam.design_obstacle : s.obstacle;
    const AvoidanceScenario sc = avoidance_scenario(s.cfg, s.user, design, s.beam.w);
    const FallbackPlan plan = plan_with_fallback(sc);
    Json j;
    j["user"] = point_json(s.user);
    j["obstacle"] = {{"x_r1", sc.obstacle.x_r1},
                     {"x_r2", sc.obstacle.x_r2},
                     {"y_n", sc.obstacle.y_n},
                     {"y_f", sc.obstacle.y_f}};
    j["w"] = s.beam.w;
    j["half_aperture"] = s.cfg.half_aperture();
    j["plan"] = plan_to_json(plan, s.user);
    j["candidates"] = candidates_to_json(kkt_candidates(sc));
    write_text_file(opt.out_dir / "optimize.json", dump(j));
    if (plan.status != OptStatus::solved) {
        throw OptimizationFailure("curving design failed: " + std::string(to_string(plan.status)), j["plan"]);
    }
    return j;
}

}  // namespace nfbeam
