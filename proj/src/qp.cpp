#include "plcp/qp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace plcp {

namespace {

constexpr double kMultiplierTol = 1e-12;
constexpr int kMaxBisections = 400;

double clip(double v, double lo, double hi) { return std::min(hi, std::max(lo, v)); }

Vector clipped_at(const RowQpProblem& problem, double nu) {
    Vector c(problem.linear.size());
    for (Eigen::Index j = 0; j < c.size(); ++j) {
        c(j) = clip((-problem.linear(j) - nu) / 2.0, problem.lower(j), problem.upper(j));
    }
    return c;
}

void validate(const RowQpProblem& problem) {
    const auto l = problem.linear.size();
    if (l == 0) throw Error("row QP: empty problem");
    if (problem.lower.size() != l || problem.upper.size() != l) throw Error("row QP: bound sizes differ from g");
    if (!problem.linear.allFinite() || !problem.lower.allFinite() || !problem.upper.allFinite() ||
        !std::isfinite(problem.sum_target)) {
        throw Error("row QP: non-finite input");
    }
    for (Eigen::Index j = 0; j < l; ++j) {
        if (problem.lower(j) > problem.upper(j)) {
            throw Error("row QP: lower bound exceeds upper bound at coordinate " + std::to_string(j));
        }
    }
}

// Move the rounding residual of the sum onto coordinates with room to absorb it.
void absorb_sum_residual(const RowQpProblem& problem, Vector& c) {
    for (int pass = 0; pass < 2; ++pass) {
        double residual = problem.sum_target - c.sum();
        if (residual == 0.0) return;
        for (Eigen::Index j = 0; j < c.size() && residual != 0.0; ++j) {
            const double room = residual > 0.0 ? problem.upper(j) - c(j) : problem.lower(j) - c(j);
            const double step = residual > 0.0 ? std::min(room, residual) : std::max(room, residual);
            c(j) += step;
            residual -= step;
        }
    }
}

}  // namespace

RowQpSolution solve_row_detailed(const RowQpProblem& problem) {
    validate(problem);
    const Eigen::Index l = problem.linear.size();
    const double sum_lo = problem.lower.sum();
    const double sum_hi = problem.upper.sum();
    const double slack = 1e-12 * std::max(1.0, std::abs(problem.sum_target)) * static_cast<double>(l);
    if (problem.sum_target < sum_lo - slack || problem.sum_target > sum_hi + slack) {
        throw Error("row QP: infeasible, sum target " + std::to_string(problem.sum_target) + " outside [" +
                    std::to_string(sum_lo) + ", " + std::to_string(sum_hi) + "]");
    }

    // nu at which every coordinate sits at its upper (resp. lower) bound.
    double nu_upper = std::numeric_limits<double>::infinity();
    double nu_lower = -std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < l; ++j) {
        nu_upper = std::min(nu_upper, -problem.linear(j) - 2.0 * problem.upper(j));
        nu_lower = std::max(nu_lower, -problem.linear(j) - 2.0 * problem.lower(j));
    }

    RowQpSolution out;
    if (problem.sum_target >= sum_hi) {
        out.c = problem.upper;
        out.multiplier = nu_upper;
        return out;
    }
    if (problem.sum_target <= sum_lo) {
        out.c = problem.lower;
        out.multiplier = nu_lower;
        return out;
    }

    // sum(c(nu)) is non-increasing: sum(c(a)) = sum_hi > target > sum_lo = sum(c(b)).
    double a = nu_upper;
    double b = nu_lower;
    if (!(a <= b)) throw Error("row QP: failed to bracket the multiplier");
    for (int it = 0; it < kMaxBisections && b - a > kMultiplierTol; ++it) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        if (clipped_at(problem, mid).sum() > problem.sum_target) {
            a = mid;
        } else {
            b = mid;
        }
    }
    double nu = 0.5 * (a + b);

    // Closed-form multiplier on the free set identified by bisection.
    double free_sum = 0.0;
    double fixed_sum = 0.0;
    int free_count = 0;
    for (Eigen::Index j = 0; j < l; ++j) {
        const double raw = (-problem.linear(j) - nu) / 2.0;
        if (raw > problem.lower(j) && raw < problem.upper(j)) {
            free_sum += -problem.linear(j);
            ++free_count;
        } else {
            fixed_sum += clip(raw, problem.lower(j), problem.upper(j));
        }
    }
    if (free_count > 0) {
        const double refined = (free_sum - 2.0 * (problem.sum_target - fixed_sum)) / free_count;
        bool consistent = true;
        for (Eigen::Index j = 0; j < l && consistent; ++j) {
            const double raw_old = (-problem.linear(j) - nu) / 2.0;
            const double raw_new = (-problem.linear(j) - refined) / 2.0;
            const bool was_free = raw_old > problem.lower(j) && raw_old < problem.upper(j);
            if (was_free) {
                consistent = raw_new >= problem.lower(j) && raw_new <= problem.upper(j);
            } else if (raw_old <= problem.lower(j)) {
                consistent = raw_new <= problem.lower(j);
            } else {
                consistent = raw_new >= problem.upper(j);
            }
        }
        if (consistent) nu = refined;
    }

    out.c = clipped_at(problem, nu);
    absorb_sum_residual(problem, out.c);
    out.multiplier = nu;
    return out;
}

double kkt_residual(const RowQpProblem& problem, const Vector& c, double multiplier, double active_tol) {
    double worst = std::abs(c.sum() - problem.sum_target);
    for (Eigen::Index j = 0; j < c.size(); ++j) {
        worst = std::max(worst, problem.lower(j) - c(j));
        worst = std::max(worst, c(j) - problem.upper(j));
        const double grad = 2.0 * c(j) + problem.linear(j) + multiplier;
        const bool at_lower = std::abs(c(j) - problem.lower(j)) <= active_tol;
        const bool at_upper = std::abs(c(j) - problem.upper(j)) <= active_tol;
        if (at_lower && at_upper) continue;
        if (at_lower) {
            worst = std::max(worst, -grad);
        } else if (at_upper) {
            worst = std::max(worst, grad);
        } else {
            worst = std::max(worst, std::abs(grad));
        }
    }
    return worst;
}

double row_objective(const RowQpProblem& problem, const Vector& c) { return c.squaredNorm() + problem.linear.dot(c); }

RowQpProblem c_row_problem(const Matrix& j, const Matrix& o, const Matrix& yhat, double gamma, Eigen::Index row,
                           CollaborativeTerm term) {
    const Eigen::Index l = j.cols();
    RowQpProblem problem;
    if (term == CollaborativeTerm::wild) {
        problem.linear = gamma * o.row(row).transpose() - 2.0 * j.row(row).transpose();
    } else {
        // (1 + gamma) c^T c - 2 (J_i + gamma (1 - O_i))^T c, scaled by 1 / (1 + gamma).
        problem.linear =
            -2.0 * (j.row(row).transpose() + gamma * (Vector::Ones(l) - o.row(row).transpose())) / (1.0 + gamma);
    }
    problem.lower = yhat.row(row).transpose();
    problem.upper = Vector::Ones(l);
    problem.sum_target = static_cast<double>(l - 1);
    return problem;
}

Matrix solve_matrix(const Matrix& j, const Matrix& o, const Matrix& yhat, double gamma, CollaborativeTerm term) {
    require_same_shape(j, o, "solve_matrix");
    require_same_shape(j, yhat, "solve_matrix");
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw Error("solve_matrix: gamma must be finite and non-negative");
    Matrix c(j.rows(), j.cols());
    for (Eigen::Index i = 0; i < j.rows(); ++i) {
        try {
            c.row(i) = solve_row(c_row_problem(j, o, yhat, gamma, i, term)).transpose();
        } catch (const Error& e) {
            throw Error("solve_matrix: row " + std::to_string(i) + ": " + e.what());
        }
    }
    return c;
}

}  // namespace plcp
