// SPDX-License-Identifier: Apache-2.0

#include "nfbeam/curving.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nfbeam {

namespace {

// Row order of positive_program().
enum Row : std::size_t {
    kBetaNonneg = 0,
    kXadjLower,
    kXadjUpper,
    kAvoidNear,
    kAvoidFar,
    kMinTangent,
    kMaxTangent,
    kSqrtDomain,
};

constexpr double kBetaZeroTol = 1e-12;
constexpr double kPositionTol = 1e-9;

std::vector<double> as_vec(const LpPoint& z) { return {z.beta, z.p_tilde, z.x_adj}; }

bool all_finite(const LpPoint& z) {
    return std::isfinite(z.beta) && std::isfinite(z.p_tilde) && std::isfinite(z.x_adj);
}

// Names of the mirrored constraints when the program is solved for negative curvature.
std::string mirrored_name(std::size_t row) {
    static const std::array<std::string, 8> names = {
        "beta_nonpos", "x_adj_upper", "x_adj_lower", "avoid_near", "avoid_far",
        "min_tangent", "max_tangent", "sqrt_domain"};
    return names.at(row);
}

// Index of the largest element with x <= v + tol, or nullopt.
std::optional<std::size_t> last_element_at_or_below(const UlaConfig& cfg, double v) {
    for (std::size_t i = cfg.n_elements(); i-- > 0;) {
        if (cfg.element_x(i) <= v + kPositionTol) {
            return i;
        }
    }
    return std::nullopt;
}

AvoidanceScenario mirrored(const AvoidanceScenario& s) {
    return AvoidanceScenario{mirror(s.user), mirror(s.obstacle), s.cfg, s.weight_w};
}

// Closest-to-feasible candidate: the constraint it violates most.
void fill_infeasibility(const AvoidanceScenario& s, OptimizeResult& res, bool mirrored_labels) {
    const lp::LinearProgram prog = positive_program(s);
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_row = 0;
    for (const auto& cand : kkt_candidates(s)) {
        if (!cand.finite) {
            continue;
        }
        std::size_t row = 0;
        const double v = prog.max_violation(as_vec(cand.point), &row);
        if (v < best) {
            best = v;
            best_row = row;
        }
    }
    if (std::isfinite(best)) {
        res.violated_constraint = mirrored_labels ? mirrored_name(best_row) : prog.names[best_row];
        res.violation = best;
    } else {
        res.violated_constraint = "none";
        res.violation = std::numeric_limits<double>::infinity();
    }
}

// Solves the positive-curvature problem. Elements above `cap` are not used.
OptimizeResult solve_positive_frame(const AvoidanceScenario& s, std::optional<double> cap) {
    s.validate();
    OptimizeResult res;
    res.sign = CurvatureSign::positive;
    const lp::LinearProgram prog = positive_program(s);
    const double R = s.cfg.half_aperture();

    // Relaxed optimum: closed-form table first, exhaustive vertices otherwise.
    const KktCandidate* chosen = nullptr;
    const auto cands = kkt_candidates(s);
    for (const auto& c : cands) {
        if (!c.finite || !c.feasible || !c.kkt) {
            continue;
        }
        if (!(c.point.beta > kBetaZeroTol) || c.point.x_adj <= -R + kPositionTol) {
            continue;
        }
        if (!chosen || c.objective < chosen->objective - 1e-12 * std::max(1.0, std::abs(c.objective))) {
            chosen = &c;
        }
    }

    LpPoint relaxed;
    if (chosen) {
        relaxed = chosen->point;
        res.relaxed_candidate = chosen->index;
        res.relaxed_objective = chosen->objective;
    } else {
        const lp::VertexSolution v = lp::solve_by_vertices(prog);
        if (v.status != lp::Status::optimal) {
            res.status = OptStatus::infeasible;
            res.message = v.status == lp::Status::unbounded ? "relaxed program is unbounded"
                                                            : "no trajectory of this curvature avoids the obstacle";
            fill_infeasibility(s, res, false);
            return res;
        }
        relaxed = {v.z[0], v.z[1], v.z[2]};
        res.relaxed_objective = v.objective;
    }
    res.relaxed = relaxed;

    if (!(relaxed.beta > kBetaZeroTol)) {
        res.status = OptStatus::curving_unnecessary;
        res.message = "optimal curvature is zero; a curving beam is unnecessary";
        return res;
    }
    if (relaxed.x_adj <= -R + kPositionTol) {
        res.status = OptStatus::degenerate;
        res.message = "optimum keeps only the edge element (x_adj = -R); increase w";
        return res;
    }

    // Project onto the array and re-solve with the aperture edge pinned,
    // stepping down one element whenever the pinned program has no solution.
    double limit = relaxed.x_adj;
    if (cap) {
        limit = std::min(limit, *cap);
    }
    auto idx = last_element_at_or_below(s.cfg, limit);
    while (idx) {
        const double x_t = s.cfg.element_x(*idx);
        const lp::LinearProgram pinned = lp::pin_variable(prog, 2, x_t);
        const lp::VertexSolution v = lp::solve_by_vertices(pinned);
        if (v.status == lp::Status::optimal) {
            const double beta = v.z[0];
            const double p_tilde = v.z[1];
            if (!(beta > kBetaZeroTol)) {
                res.status = OptStatus::curving_unnecessary;
                res.message = "re-solved curvature is zero; a curving beam is unnecessary";
                return res;
            }
            CurvingSolution sol;
            const double p = p_tilde / beta;
            sol.trajectory = trajectory_through(beta, p, s.user);
            sol.p_tilde = p_tilde;
            sol.x_adj_star = relaxed.x_adj;
            sol.x_t_star = x_t;
            sol.curvature_sign = CurvatureSign::positive;
            sol.objective_value = f_para(s, {beta, p_tilde, x_t});
            sol.active_elements = {0, *idx};
            sol.kkt_candidate_index = res.relaxed_candidate;
            res.solution = sol;
            res.status = OptStatus::solved;
            return res;
        }
        idx = *idx == 0 ? std::nullopt : std::optional<std::size_t>(*idx - 1);
    }
    res.status = OptStatus::infeasible;
    res.message = "no array element admits a feasible trajectory after projection";
    fill_infeasibility(s, res, false);
    return res;
}

CurvingSolution unmirror(const CurvingSolution& m, const UlaConfig& cfg) {
    CurvingSolution sol = m;
    const std::size_t last = cfg.n_elements() - 1;
    sol.trajectory = {-m.trajectory.beta, m.trajectory.p, -m.trajectory.q};
    sol.p_tilde = -m.p_tilde;
    sol.x_adj_star = -m.x_adj_star;
    sol.x_t_star = -m.x_t_star;
    sol.curvature_sign = CurvatureSign::negative;
    sol.objective_value = -m.objective_value;
    sol.active_elements = {last - m.active_elements.last, last - m.active_elements.first};
    return sol;
}

OptimizeResult solve_negative_frame(const AvoidanceScenario& s, std::optional<double> cap) {
    // Negative curvature is the positive problem seen in a mirror.
    const std::optional<double> mcap = cap ? std::optional<double>(-*cap) : std::nullopt;
    OptimizeResult m = solve_positive_frame(mirrored(s), mcap);
    OptimizeResult res = m;
    res.sign = CurvatureSign::negative;
    if (m.solution) {
        res.solution = unmirror(*m.solution, s.cfg);
    }
    if (m.relaxed) {
        res.relaxed = LpPoint{-m.relaxed->beta, -m.relaxed->p_tilde, -m.relaxed->x_adj};
        res.relaxed_objective = -*m.relaxed_objective;
    }
    if (m.status == OptStatus::infeasible) {
        fill_infeasibility(mirrored(s), res, true);
    }
    return res;
}

}  // namespace

const char* to_string(CurvatureSign s) { return s == CurvatureSign::positive ? "positive" : "negative"; }

const char* to_string(OptStatus s) {
    switch (s) {
        case OptStatus::solved: return "solved";
        case OptStatus::curving_unnecessary: return "curving_unnecessary";
        case OptStatus::infeasible: return "infeasible";
        case OptStatus::degenerate: return "degenerate";
    }
    return "unknown";
}

ParabolicTrajectory trajectory_through(double beta, double p, const Point2& user) {
    const double d = user.y - p;
    return {beta, p, user.x - beta * d * d};
}

double trajectory_eval(const ParabolicTrajectory& t, double y) {
    const double d = y - t.p;
    return t.beta * d * d + t.q;
}

double trajectory_slope(const ParabolicTrajectory& t, double y) { return 2.0 * t.beta * (y - t.p); }

double tangent_y(const ParabolicTrajectory& t, double x_t) {
    if (t.beta == 0.0) {
        throw InvalidInput("tangent point undefined for zero curvature");
    }
    const double vertex_line = t.beta * t.p * t.p + t.q;
    double num = vertex_line - x_t;
    // An element sitting exactly on the sqrt_domain edge touches at y = 0.
    if (t.beta * num < 0.0 && std::abs(num) <= 1e-12 * std::max(1.0, std::abs(vertex_line) + std::abs(x_t))) {
        num = 0.0;
    }
    const double rad = num / t.beta;
    if (rad < 0.0) {
        throw InvalidInput("element has no tangent to trajectory (max_tangent / sqrt_domain violated)");
    }
    return std::sqrt(rad);
}

Excitation curving_phases(const UlaConfig& cfg, const ParabolicTrajectory& t, ElementRange active) {
    if (t.beta == 0.0) {
        throw InvalidInput("curving phases need a non-zero curvature");
    }
    if (active.first > active.last || active.last >= cfg.n_elements()) {
        throw InvalidInput("active element range out of bounds");
    }
    const double k = cfg.wavenumber();
    const double abs_beta = std::abs(t.beta);
    Excitation exc = Excitation::uniform(cfg.n_elements());
    for (std::size_t i = 0; i < cfg.n_elements(); ++i) {
        if (!active.contains(i)) {
            exc.deactivate(i);
            continue;
        }
        const double y_t = tangent_y(t, cfg.element_x(i));
        const double slope = 2.0 * t.beta * (y_t - t.p);
        const double sqrt_c1 = std::sqrt(1.0 + slope * slope);
        // log(sqrt(c1) - c2) with c2 = -sign(beta) * slope, evaluated as asinh
        // to avoid cancellation when the tangent point lies below the vertex.
        const double log_term = std::asinh(2.0 * abs_beta * (y_t - t.p));
        if (!std::isfinite(log_term) || !std::isfinite(sqrt_c1)) {
            throw InvalidInput("phase formula log-domain violation at element " + std::to_string(i));
        }
        const double arc_minus_ray = log_term / (4.0 * abs_beta) - (t.p + y_t) * sqrt_c1 / 2.0;
        exc.phase[i] = -k * arc_minus_ray;
    }
    return exc;
}

void AvoidanceScenario::validate() const {
    if (!(user.y > 0.0) || !std::isfinite(user.x) || !std::isfinite(user.y)) {
        throw InvalidInput("user must lie in front of the array (y_u > 0)");
    }
    if (!(weight_w > 0.0) || !std::isfinite(weight_w)) {
        throw InvalidInput("weight w must be positive");
    }
}

double f_para(const AvoidanceScenario& s, const LpPoint& z) {
    const double u = s.user.y;
    const double n = s.obstacle.y_n;
    const double f = s.obstacle.y_f;
    return z.beta * (n * n + f * f - 2.0 * u * u) + 2.0 * z.p_tilde * (2.0 * u - n - f) -
           s.weight_w * z.x_adj;
}

const std::array<std::string, 8>& constraint_names() {
    static const std::array<std::string, 8> names = {
        "beta_nonneg", "x_adj_lower", "x_adj_upper", "avoid_near", "avoid_far",
        "min_tangent", "max_tangent", "sqrt_domain"};
    return names;
}

lp::LinearProgram positive_program(const AvoidanceScenario& s) {
    const double u = s.user.y;
    const double xu = s.user.x;
    const double n = s.obstacle.y_n;
    const double f = s.obstacle.y_f;
    const double xr2 = s.obstacle.x_r2;
    const double R = s.cfg.half_aperture();

    lp::LinearProgram prog;
    prog.dim = 3;
    prog.G = {
        {-1.0, 0.0, 0.0},
        {0.0, 0.0, -1.0},
        {0.0, 0.0, 1.0},
        {n * n - u * u, -2.0 * (n - u), 0.0},
        {f * f - u * u, -2.0 * (f - u), 0.0},
        {-2.0 * u * u, 2.0 * u, -1.0},
        {2.0 * u * u, -2.0 * u, 0.0},
        {u * u, -2.0 * u, 1.0},
    };
    prog.h = {0.0, R, R, xr2 - xu, xr2 - xu, -xu, xu + R, xu};
    prog.c = {n * n + f * f - 2.0 * u * u, 2.0 * (2.0 * u - n - f), -s.weight_w};
    prog.names.assign(constraint_names().begin(), constraint_names().end());
    return prog;
}

std::vector<KktCandidate> kkt_candidates(const AvoidanceScenario& s) {
    s.validate();
    const double xu = s.user.x;
    const double yu = s.user.y;
    const double yn = s.obstacle.y_n;
    const double yf = s.obstacle.y_f;
    const double xr2 = s.obstacle.x_r2;
    const double R = s.cfg.half_aperture();

    // Rows sharing a structure differ only in which obstacle edge (y_n or y_f) they use.
    auto full_edge = [&](double yj) {  // tangent point of the element at -R at the user
        const double d2 = (yj - yu) * (yj - yu);
        return std::array<double, 2>{
            -(R * yj - R * yu + xu * yj - xr2 * yu) / (yu * d2),
            -(R * yj * yj - R * yu * yu + xu * yj * yj - 2.0 * xr2 * yu * yu + xu * yu * yu) /
                (2.0 * yu * d2)};
    };
    auto full_edge_a = [&](double yj) {
        return -(R * yj * yj - xr2 * yu * yu - R * yj * yu + xu * yj * yu) / ((yj - yu) * (yj - yu));
    };
    auto sqrt_edge = [&](double yj) {  // element at R has its tangent point at y = 0
        return std::array<double, 2>{
            (R * yj - R * yu - xu * yj + xr2 * yu) / (yj * yu * (yj - yu)),
            (R * yj * yj - R * yu * yu - xu * yj * yj + xr2 * yu * yu) / (2.0 * yj * yu * (yj - yu))};
    };
    auto tangent_edge = [&](double yj) {  // element at R has its tangent point at the user
        const double d2 = (yj - yu) * (yj - yu);
        return std::array<double, 2>{
            (R * yj - R * yu - xu * yj + xr2 * yu) / (yu * d2),
            -(R * yu * yu - R * yj * yj + xu * yj * yj - 2.0 * xr2 * yu * yu + xu * yu * yu) /
                (2.0 * yu * d2)};
    };

    std::vector<LpPoint> pts(kCandidateCount);
    {
        const double den = (yf - yu) * (yn - yu);
        pts[0] = {-(xr2 - xu) / den,
                  -(xr2 * yf - xu * yf + xr2 * yn - xu * yn) / (2.0 * den),
                  (xr2 * yu * yu + xu * yf * yn - xr2 * yf * yu - xr2 * yn * yu) / den};
    }
    {
        const auto bf = full_edge(yf);
        const auto bn = full_edge(yn);
        pts[1] = {bf[0], bf[1], full_edge_a(yf)};
        pts[2] = {bn[0], bn[1], full_edge_a(yn)};
        pts[5] = {bf[0], bf[1], R};
        pts[6] = {bn[0], bn[1], R};
    }
    {
        const auto sf = sqrt_edge(yf);
        const auto sn = sqrt_edge(yn);
        pts[3] = {sf[0], sf[1], R};
        pts[4] = {sn[0], sn[1], R};
    }
    {
        const auto tf = tangent_edge(yf);
        const auto tn = tangent_edge(yn);
        pts[7] = {tf[0], tf[1], R};
        pts[8] = {tn[0], tn[1], R};
    }

    const lp::LinearProgram prog = positive_program(s);
    std::vector<KktCandidate> out;
    out.reserve(kCandidateCount);
    for (int i = 0; i < kCandidateCount; ++i) {
        KktCandidate c;
        c.index = i + 1;
        c.point = pts[static_cast<std::size_t>(i)];
        c.finite = all_finite(c.point);
        c.multipliers.assign(prog.rows(), 0.0);
        if (c.finite) {
            const auto z = as_vec(c.point);
            c.objective = prog.objective(z);
            c.feasible = prog.feasible(z);
            const lp::KktCertificate cert = lp::kkt_check(prog, z);
            c.kkt = cert.valid;
            c.active = cert.active;
            c.multipliers = cert.multipliers;
        } else {
            c.objective = std::numeric_limits<double>::quiet_NaN();
        }
        out.push_back(std::move(c));
    }
    return out;
}

OptimizeResult optimize_positive(const AvoidanceScenario& s) { return solve_positive_frame(s, std::nullopt); }

OptimizeResult optimize_negative(const AvoidanceScenario& s) { return solve_negative_frame(s, std::nullopt); }

FallbackPlan plan_with_fallback(const AvoidanceScenario& s) {
    FallbackPlan plan;
    plan.positive = optimize_positive(s);
    const std::size_t last = s.cfg.n_elements() - 1;

    if (plan.positive.status == OptStatus::curving_unnecessary) {
        plan.status = OptStatus::curving_unnecessary;
        plan.message = plan.positive.message;
        return plan;
    }
    if (plan.positive.status == OptStatus::solved) {
        plan.primary = plan.positive.solution;
        plan.status = OptStatus::solved;
        const std::size_t edge = plan.primary->active_elements.last;
        if (edge < last) {
            const double cap = s.cfg.element_x(edge + 1);
            OptimizeResult sec = solve_negative_frame(s, cap);
            if (sec.status == OptStatus::solved) {
                plan.secondary = sec.solution;
            }
            plan.negative = sec;
        }
        return plan;
    }

    plan.negative = optimize_negative(s);
    if (plan.negative->status == OptStatus::solved) {
        plan.primary = plan.negative->solution;
        plan.status = OptStatus::solved;
        const std::size_t edge = plan.primary->active_elements.first;
        if (edge > 0) {
            const double cap = s.cfg.element_x(edge - 1);
            OptimizeResult sec = solve_positive_frame(s, cap);
            if (sec.status == OptStatus::solved) {
                plan.secondary = sec.solution;
            }
        }
        return plan;
    }
    if (plan.negative->status == OptStatus::curving_unnecessary) {
        plan.status = OptStatus::curving_unnecessary;
        plan.message = plan.negative->message;
        return plan;
    }
    plan.status = OptStatus::infeasible;
    plan.message = "positive curvature: " + plan.positive.message + " [" +
                   plan.positive.violated_constraint + "]; negative curvature: " +
                   plan.negative->message + " [" + plan.negative->violated_constraint + "]";
    return plan;
}

Excitation plan_excitation(const UlaConfig& cfg, const FallbackPlan& plan, double budget) {
    if (plan.status != OptStatus::solved || !plan.primary) {
        throw InvalidInput("plan has no solved primary beam");
    }
    Excitation out = normalize_power(
        curving_phases(cfg, plan.primary->trajectory, plan.primary->active_elements), budget);
    if (plan.secondary) {
        const Excitation sec = normalize_power(
            curving_phases(cfg, plan.secondary->trajectory, plan.secondary->active_elements), budget);
        for (std::size_t i = 0; i < cfg.n_elements(); ++i) {
            if (sec.active[i]) {
                out.active[i] = 1;
                out.magnitude[i] = sec.magnitude[i];
                out.phase[i] = sec.phase[i];
            }
        }
        out = normalize_power(out, budget);
    }
    return out;
}

}  // namespace nfbeam
