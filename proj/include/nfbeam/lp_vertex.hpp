// SPDX-License-Identifier: Apache-2.0
//
// Tiny dense linear programs solved by exhaustive vertex enumeration.
//
//     minimize c.z  subject to  G z <= h,   z in R^dim
//
// Intended for dim <= 3 and a handful of constraints, where enumerating every
// basis is cheap and each optimum comes with an explicit KKT certificate.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nfbeam::lp {

/// Feasibility tolerance on normalised constraint residuals.
inline constexpr double kFeasTol = 1e-9;
/// Residual below which a constraint is treated as active.
inline constexpr double kTightTol = 1e-7;

struct LinearProgram {
    std::size_t dim = 0;
    std::vector<std::vector<double>> G;  ///< one row per constraint
    std::vector<double> h;
    std::vector<double> c;
    std::vector<std::string> names;      ///< constraint labels for diagnostics

    std::size_t rows() const { return G.size(); }

    /// (G_i z - h_i) / max(1, |largest coefficient of row i|, |h_i|).
    double normalized_residual(std::size_t i, std::span<const double> z) const;

    /// Largest normalised residual and the row attaining it.
    double max_violation(std::span<const double> z, std::size_t* row = nullptr) const;

    bool feasible(std::span<const double> z, double tol = kFeasTol) const;

    double objective(std::span<const double> z) const;
};

struct KktCertificate {
    bool valid = false;
    std::vector<std::size_t> active;    ///< constraints carrying the multipliers
    std::vector<double> multipliers;    ///< one per row of the program (0 if inactive)
    double stationarity_residual = 0.0;
};

/// Checks primal feasibility, then searches the constraints active at z for a
/// subset whose gradients reproduce -c with non-negative multipliers.
KktCertificate kkt_check(const LinearProgram& lp, std::span<const double> z);

enum class Status { optimal, infeasible, unbounded };

struct VertexSolution {
    Status status = Status::infeasible;
    std::vector<double> z;
    std::vector<std::size_t> basis;
    std::vector<double> multipliers;
    double objective = 0.0;
};

/// Enumerates all bases in lexicographic order and returns the KKT vertex with
/// the lowest objective (first one on ties). Reports `unbounded` when feasible
/// vertices exist but none is KKT, and `infeasible` when no vertex is feasible.
VertexSolution solve_by_vertices(const LinearProgram& lp);

/// Program with variable `var` fixed to `value` and eliminated.
LinearProgram pin_variable(const LinearProgram& lp, std::size_t var, double value);

}  // namespace nfbeam::lp
