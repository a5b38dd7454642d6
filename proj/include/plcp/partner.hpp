#ifndef PLCP_PARTNER_HPP
#define PLCP_PARTNER_HPP

#include "plcp/kernel.hpp"
#include "plcp/qp.hpp"

#include <vector>

/**
 * @file partner.hpp
 * @brief The partner classifier: a kernel ridge model of non-candidate
 * confidence, coupled to the base classifier's blurred confidence O.
 *
 * Fitting minimizes
 *
 *     ||Phi W + 1 b^T - C||^2 + gamma tr(O C^T) + lambda ||W||^2
 *     s.t. Yhat <= C <= 1, C 1 = (l - 1) 1
 *
 * by alternating an exact kernel ridge solve for (W, b) with the exact
 * row-wise QP for C.
 */

namespace plcp {

struct PartnerConfig {
    double lambda = 0.05;
    double gamma = 2.0;
    int inner_iters = 10;
    double inner_tol = 1e-6;
    KernelSpec kernel{};
    CollaborativeTerm term = CollaborativeTerm::wild;

    void validate() const;
};

struct PartnerModel {
    KernelSolve solve;
    Matrix c;             ///< auxiliary non-candidate confidence the final solve was fitted to
    Matrix train_output;  ///< modeling output on the training set
    std::vector<double> objective_trace;
};

/// Feasible starting point: non-candidates at 1, candidates share |S_i| - 1 evenly.
Matrix initial_auxiliary_confidence(const Matrix& yhat);

/// Value of the partner objective for a solve fitted on `ridge` and an auxiliary matrix `c`.
double partner_objective(const KernelRidge& ridge, const KernelSolve& solve, const Matrix& c, const Matrix& o,
                         const PartnerConfig& config);

/// Fit with a prepared (cached) kernel ridge factorization; `ridge.ridge()` must equal `config.lambda`.
PartnerModel fit_partner(const KernelRidge& ridge, const Matrix& yhat, const Matrix& o, const PartnerConfig& config);

/// Fit on a dataset, resolving the kernel on its features.
PartnerModel fit_partner(const PartialLabelDataset& dataset, const Matrix& o, const PartnerConfig& config);

Matrix partner_modeling_output(const PartnerModel& model, const Matrix& k_cross);

/// Labels minimizing the clamped non-candidate confidence; ties go to the lowest index.
Labels predict_labels(const PartnerModel& model, const Matrix& k_cross);

/// Row-wise argmin of min(max(m, 0), 1), lowest index first.
Labels argmin_clamped(const Matrix& m);

}  // namespace plcp

#endif
