// SPDX-License-Identifier: Apache-2.0

#include "nfbeam/lp_vertex.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nfbeam::lp {

namespace {

double row_scale(const LinearProgram& lp, std::size_t i) {
    double s = std::max(1.0, std::abs(lp.h[i]));
    for (double g : lp.G[i]) {
        s = std::max(s, std::abs(g));
    }
    return s;
}

double objective_scale(const LinearProgram& lp) {
    double s = 1.0;
    for (double v : lp.c) {
        s = std::max(s, std::abs(v));
    }
    return s;
}

// Calls fn(subset) for every k-subset of {0..n-1} in lexicographic order
// until fn returns true.
template <typename Fn>
bool for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
    if (k > n) {
        return false;
    }
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) {
        idx[i] = i;
    }
    while (true) {
        if (fn(idx)) {
            return true;
        }
        std::size_t pos = k;
        while (pos > 0 && idx[pos - 1] == n - k + pos - 1) {
            --pos;
        }
        if (pos == 0) {
            return false;
        }
        ++idx[pos - 1];
        for (std::size_t j = pos; j < k; ++j) {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

struct MultiplierFit {
    bool ok = false;
    Eigen::VectorXd mu;
    double residual = 0.0;
};

// Least-squares solve of G_S^T mu = -c and sign check on mu.
MultiplierFit fit_multipliers(const LinearProgram& lp, const std::vector<std::size_t>& subset) {
    const auto n = static_cast<Eigen::Index>(lp.dim);
    const auto k = static_cast<Eigen::Index>(subset.size());
    Eigen::MatrixXd A(n, k);
    Eigen::VectorXd b(n);
    for (Eigen::Index j = 0; j < k; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            A(i, j) = lp.G[subset[static_cast<std::size_t>(j)]][static_cast<std::size_t>(i)];
        }
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        b(i) = -lp.c[static_cast<std::size_t>(i)];
    }
    MultiplierFit fit;
    if (k == 0) {
        fit.mu = Eigen::VectorXd(0);
        fit.residual = b.norm();
    } else {
        fit.mu = A.colPivHouseholderQr().solve(b);
        fit.residual = (A * fit.mu - b).norm();
    }
    const double scale = objective_scale(lp);
    fit.ok = fit.residual <= 1e-9 * scale && fit.mu.allFinite() &&
             (k == 0 || fit.mu.minCoeff() >= -1e-9 * scale);
    return fit;
}

}  // namespace

double LinearProgram::normalized_residual(std::size_t i, std::span<const double> z) const {
    double lhs = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
        lhs += G[i][j] * z[j];
    }
    return (lhs - h[i]) / row_scale(*this, i);
}

double LinearProgram::max_violation(std::span<const double> z, std::size_t* row) const {
    double worst = -std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t i = 0; i < rows(); ++i) {
        const double r = normalized_residual(i, z);
        if (r > worst || std::isnan(r)) {
            worst = r;
            arg = i;
            if (std::isnan(r)) {
                break;
            }
        }
    }
    if (row) {
        *row = arg;
    }
    return worst;
}

bool LinearProgram::feasible(std::span<const double> z, double tol) const {
    for (double v : z) {
        if (!std::isfinite(v)) {
            return false;
        }
    }
    return max_violation(z) <= tol;
}

double LinearProgram::objective(std::span<const double> z) const {
    double v = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
        v += c[j] * z[j];
    }
    return v;
}

KktCertificate kkt_check(const LinearProgram& lp, std::span<const double> z) {
    KktCertificate cert;
    cert.multipliers.assign(lp.rows(), 0.0);
    if (!lp.feasible(z)) {
        return cert;
    }
    std::vector<std::size_t> tight;
    for (std::size_t i = 0; i < lp.rows(); ++i) {
        if (std::abs(lp.normalized_residual(i, z)) <= kTightTol) {
            tight.push_back(i);
        }
    }
    const std::size_t max_k = std::min(lp.dim, tight.size());
    for (std::size_t k = max_k + 1; k-- > 0;) {
        const bool found = for_each_subset(tight.size(), k, [&](const std::vector<std::size_t>& sub) {
            std::vector<std::size_t> rows;
            for (auto s : sub) {
                rows.push_back(tight[s]);
            }
            const MultiplierFit fit = fit_multipliers(lp, rows);
            if (!fit.ok) {
                return false;
            }
            cert.valid = true;
            cert.active = rows;
            cert.stationarity_residual = fit.residual;
            for (std::size_t j = 0; j < rows.size(); ++j) {
                cert.multipliers[rows[j]] = std::max(0.0, fit.mu(static_cast<Eigen::Index>(j)));
            }
            return true;
        });
        if (found) {
            break;
        }
    }
    return cert;
}

VertexSolution solve_by_vertices(const LinearProgram& lp) {
    VertexSolution best;
    bool any_feasible = false;
    const auto n = static_cast<Eigen::Index>(lp.dim);
    const double obj_scale = objective_scale(lp);

    for_each_subset(lp.rows(), lp.dim, [&](const std::vector<std::size_t>& basis) {
        Eigen::MatrixXd A(n, n);
        Eigen::VectorXd b(n);
        for (Eigen::Index r = 0; r < n; ++r) {
            const auto row = basis[static_cast<std::size_t>(r)];
            for (Eigen::Index j = 0; j < n; ++j) {
                A(r, j) = lp.G[row][static_cast<std::size_t>(j)];
            }
            b(r) = lp.h[row];
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
        if (!lu.isInvertible()) {
            return false;
        }
        const Eigen::VectorXd zv = lu.solve(b);
        std::vector<double> z(zv.data(), zv.data() + zv.size());
        if (!lp.feasible(z)) {
            return false;
        }
        any_feasible = true;
        const MultiplierFit fit = fit_multipliers(lp, basis);
        if (!fit.ok) {
            return false;
        }
        const double obj = lp.objective(z);
        const bool better = best.status != Status::optimal ||
                            obj < best.objective - 1e-12 * std::max(obj_scale, std::abs(obj));
        if (better) {
            best.status = Status::optimal;
            best.z = z;
            best.basis = basis;
            best.objective = obj;
            best.multipliers.assign(lp.rows(), 0.0);
            for (std::size_t j = 0; j < basis.size(); ++j) {
                best.multipliers[basis[j]] = std::max(0.0, fit.mu(static_cast<Eigen::Index>(j)));
            }
        }
        return false;
    });

    if (best.status != Status::optimal) {
        best.status = any_feasible ? Status::unbounded : Status::infeasible;
    }
    return best;
}

LinearProgram pin_variable(const LinearProgram& lp, std::size_t var, double value) {
    if (var >= lp.dim) {
        throw std::out_of_range("pin_variable: variable index out of range");
    }
    LinearProgram out;
    out.dim = lp.dim - 1;
    out.names = lp.names;
    for (std::size_t i = 0; i < lp.rows(); ++i) {
        std::vector<double> row;
        for (std::size_t j = 0; j < lp.dim; ++j) {
            if (j != var) {
                row.push_back(lp.G[i][j]);
            }
        }
        out.G.push_back(std::move(row));
        out.h.push_back(lp.h[i] - lp.G[i][var] * value);
    }
    for (std::size_t j = 0; j < lp.dim; ++j) {
        if (j != var) {
            out.c.push_back(lp.c[j]);
        }
    }
    return out;
}

}  // namespace nfbeam::lp
