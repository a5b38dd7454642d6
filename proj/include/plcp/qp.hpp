#ifndef PLCP_QP_HPP
#define PLCP_QP_HPP

#include "plcp/core.hpp"

/**
 * @file qp.hpp
 * @brief Row-wise solver for the auxiliary non-candidate confidence C.
 *
 * Each row solves
 *
 *     min  c^T c + g^T c   s.t.  lower <= c <= upper,  sum(c) = target.
 *
 * The objective is separable and strictly convex, so the minimizer is
 * c_j(nu) = clip((-g_j - nu) / 2, lower_j, upper_j) for the unique multiplier
 * nu that meets the sum constraint. nu is bracketed and found by bisection,
 * then refined in closed form on the free coordinates.
 */

namespace plcp {

struct RowQpProblem {
    Vector linear;  ///< g
    Vector lower;
    Vector upper;
    double sum_target = 0.0;
};

struct RowQpSolution {
    Vector c;
    double multiplier = 0.0;  ///< nu, the multiplier of the sum constraint
};

/// How the partner output is tied to the base classifier's blurred confidence O.
enum class CollaborativeTerm {
    wild,        ///< gamma * tr(O C^T)
    aggressive,  ///< gamma * ||O + C - 1||_F^2
};

RowQpSolution solve_row_detailed(const RowQpProblem& problem);

inline Vector solve_row(const RowQpProblem& problem) { return solve_row_detailed(problem).c; }

/**
 * Largest violation of the KKT conditions at (c, nu): primal feasibility and,
 * per coordinate, 2 c_j + g_j + nu = 0 when free, >= 0 at the lower bound,
 * <= 0 at the upper bound. A coordinate counts as at a bound when within
 * `active_tol` of it.
 */
double kkt_residual(const RowQpProblem& problem, const Vector& c, double multiplier, double active_tol = 1e-12);

double row_objective(const RowQpProblem& problem, const Vector& c);

/// Row problem i of the C-subproblem: g = gamma O_i - 2 J_i, Yhat_i <= c <= 1, sum = l - 1.
RowQpProblem c_row_problem(const Matrix& j, const Matrix& o, const Matrix& yhat, double gamma, Eigen::Index row,
                           CollaborativeTerm term = CollaborativeTerm::wild);

/// Solve every row of the C-subproblem.
Matrix solve_matrix(const Matrix& j, const Matrix& o, const Matrix& yhat, double gamma,
                    CollaborativeTerm term = CollaborativeTerm::wild);

}  // namespace plcp

#endif
