// SPDX-License-Identifier: Apache-2.0
//
// Curving (self-accelerating) beams along a parabolic trajectory
// x = f_t(y) = beta (y - p)^2 + q that passes through the user.
//
// Each element radiates along the tangent line it shares with the parabola;
// the envelope of those rays is the curved beam. The trajectory parameters
// are chosen by a small linear program in (beta, p_tilde = beta p, x_adj):
// the parabola must pass to the -x side of the obstacle (positive curvature)
// or to the +x side (negative curvature), and x_adj marks the last element
// that can still be used.
//
// Positive-curvature program, all constraints written as G z <= h:
//   beta_nonneg    beta >= 0
//   x_adj_lower    x_adj >= -R
//   x_adj_upper    x_adj <= R
//   avoid_near     f_t(y_n) <= x_r2
//   avoid_far      f_t(y_f) <= x_r2
//   min_tangent    tangent point of the element at x_adj lies at y <= y_u
//   max_tangent    tangent point of the element at -R lies at y >= y_u
//   sqrt_domain    the element at x_adj has a tangent point
// objective f_para = beta (y_n^2 + y_f^2 - 2 y_u^2) + 2 p_tilde (2 y_u - y_n - y_f) - w x_adj.
// The negative-curvature program is its mirror image under x -> -x.

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nfbeam/array_geometry.hpp"
#include "nfbeam/excitation.hpp"
#include "nfbeam/lp_vertex.hpp"

namespace nfbeam {

enum class CurvatureSign { positive, negative };

const char* to_string(CurvatureSign s);

struct ParabolicTrajectory {
    double beta = 0.0;
    double p = 0.0;
    double q = 0.0;
};

/// Trajectory with curvature beta and vertex height p anchored at the user:
/// q = x_u - beta (y_u - p)^2.
ParabolicTrajectory trajectory_through(double beta, double p, const Point2& user);

/// beta (y - p)^2 + q.
double trajectory_eval(const ParabolicTrajectory& t, double y);

/// dx/dy of the trajectory at height y.
double trajectory_slope(const ParabolicTrajectory& t, double y);

/// Height of the point where the tangent line through (x_t, 0) touches the
/// parabola: sqrt((beta p^2 + q - x_t) / beta). Throws InvalidInput when
/// beta == 0 or the radicand is negative (the element has no tangent).
double tangent_y(const ParabolicTrajectory& t, double x_t);

/// Inclusive, 0-based range of element indices.
struct ElementRange {
    std::size_t first = 0;
    std::size_t last = 0;

    std::size_t size() const { return last - first + 1; }
    bool contains(std::size_t i) const { return i >= first && i <= last; }
};

/// Phases that bend the beam along the trajectory. Element n in `active`
/// gets phi_n = k (ray_n - arc_n), where ray_n is the length of its tangent
/// segment and arc_n the signed arc length of the parabola from the vertex to
/// the tangent point. Elements outside `active` are inactive.
Excitation curving_phases(const UlaConfig& cfg, const ParabolicTrajectory& t, ElementRange active);

struct AvoidanceScenario {
    Point2 user;
    RectObstacle obstacle;
    UlaConfig cfg;
    double weight_w = 1.0;

    /// Throws InvalidInput unless user.y > 0 and weight_w > 0.
    void validate() const;
};

/// Point of the relaxed program.
struct LpPoint {
    double beta = 0.0;
    double p_tilde = 0.0;
    double x_adj = 0.0;
};

/// Objective f_para at a point, in the coordinates of the scenario.
double f_para(const AvoidanceScenario& s, const LpPoint& z);

/// Names of the eight constraints in row order (positive-curvature labels).
const std::array<std::string, 8>& constraint_names();

/// Positive-curvature program over z = (beta, p_tilde, x_adj).
lp::LinearProgram positive_program(const AvoidanceScenario& s);

/// One closed-form candidate vertex of the positive-curvature program.
struct KktCandidate {
    int index = 0;                      ///< 1-based row of the closed-form table
    LpPoint point;
    bool finite = false;
    bool feasible = false;              ///< satisfies every constraint within tolerance
    bool kkt = false;                   ///< non-negative multipliers exist on its active set
    std::vector<std::size_t> active;    ///< constraints carrying the multipliers
    std::vector<double> multipliers;    ///< one per constraint
    double objective = 0.0;
};

inline constexpr int kCandidateCount = 9;

/// Evaluates every closed-form candidate of the positive-curvature program and
/// certifies it. Non-finite rows are returned with finite == false.
std::vector<KktCandidate> kkt_candidates(const AvoidanceScenario& s);

struct CurvingSolution {
    ParabolicTrajectory trajectory;
    double p_tilde = 0.0;
    double x_adj_star = 0.0;      ///< relaxed optimum before projection onto the array
    double x_t_star = 0.0;        ///< element position the aperture is cut at
    CurvatureSign curvature_sign = CurvatureSign::positive;
    double objective_value = 0.0; ///< f_para at (beta, p_tilde, x_t_star)
    ElementRange active_elements;
    std::optional<int> kkt_candidate_index;  ///< table row of the relaxed optimum, if any
};

enum class OptStatus { solved, curving_unnecessary, infeasible, degenerate };

const char* to_string(OptStatus s);

struct OptimizeResult {
    OptStatus status = OptStatus::infeasible;
    CurvatureSign sign = CurvatureSign::positive;
    std::optional<CurvingSolution> solution;

    /// Relaxed optimum, available whenever the relaxed program is feasible.
    std::optional<LpPoint> relaxed;
    std::optional<double> relaxed_objective;
    std::optional<int> relaxed_candidate;

    /// For infeasible results: the constraint violated most by the closest candidate.
    std::string violated_constraint;
    double violation = 0.0;
    std::string message;
};

OptimizeResult optimize_positive(const AvoidanceScenario& s);
OptimizeResult optimize_negative(const AvoidanceScenario& s);

struct FallbackPlan {
    OptStatus status = OptStatus::infeasible;
    std::optional<CurvingSolution> primary;
    std::optional<CurvingSolution> secondary;
    OptimizeResult positive;
    std::optional<OptimizeResult> negative;
    std::string message;
};

/// Positive curvature first, negative if that fails; when the primary beam
/// leaves elements unused, a reverse-curvature beam is fitted on them.
FallbackPlan plan_with_fallback(const AvoidanceScenario& s);

/// Excitation of a solved plan. Each beam is normalised to `budget` on its
/// own, then the combined excitation is rescaled to `budget`.
Excitation plan_excitation(const UlaConfig& cfg, const FallbackPlan& plan, double budget);

}  // namespace nfbeam
