#include "plcp/partner.hpp"

#include <cmath>
#include <memory>

namespace plcp {

void PartnerConfig::validate() const {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw Error("partner: lambda must be positive");
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw Error("partner: gamma must be non-negative");
    if (inner_iters < 1) throw Error("partner: inner_iters must be at least 1");
    if (!(inner_tol >= 0.0)) throw Error("partner: inner_tol must be non-negative");
    if (kernel.sigma && !(*kernel.sigma > 0.0)) throw Error("partner: fixed kernel bandwidth must be positive");
}

Matrix initial_auxiliary_confidence(const Matrix& yhat) {
    Matrix c = yhat;
    for (Eigen::Index i = 0; i < yhat.rows(); ++i) {
        const double candidates = static_cast<double>(yhat.cols()) - yhat.row(i).sum();
        if (candidates < 1.0) throw Error("partner: row " + std::to_string(i) + " has no candidate label");
        const double share = (candidates - 1.0) / candidates;
        for (Eigen::Index j = 0; j < yhat.cols(); ++j) {
            if (yhat(i, j) == 0.0) c(i, j) = share;
        }
    }
    return c;
}

double partner_objective(const KernelRidge& ridge, const KernelSolve& solve, const Matrix& c, const Matrix& o,
                         const PartnerConfig& config) {
    const Matrix fitted = ridge.fitted(solve);
    const double lambda = solve.ridge;
    // ||W||^2 = tr(A^T K A) / (4 lambda^2) since W = Phi^T A / (2 lambda).
    const double weight_norm =
        (solve.dual_coeffs.transpose() * ridge.gram() * solve.dual_coeffs).trace() / (4.0 * lambda * lambda);
    double coupling = 0.0;
    if (config.term == CollaborativeTerm::wild) {
        coupling = (o.array() * c.array()).sum();
    } else {
        coupling = (o + c - Matrix::Ones(c.rows(), c.cols())).squaredNorm();
    }
    return (fitted - c).squaredNorm() + config.gamma * coupling + lambda * weight_norm;
}

PartnerModel fit_partner(const KernelRidge& ridge, const Matrix& yhat, const Matrix& o, const PartnerConfig& config) {
    config.validate();
    require_same_shape(yhat, o, "fit_partner");
    if (yhat.rows() != ridge.gram().rows()) throw Error("fit_partner: Gram matrix and labels disagree on n");
    if (ridge.ridge() != config.lambda) throw Error("fit_partner: factorization lambda differs from config");

    PartnerModel model;
    model.c = initial_auxiliary_confidence(yhat);
    model.solve = ridge.solve(model.c);
    model.train_output = ridge.fitted(model.solve);
    model.objective_trace.push_back(partner_objective(ridge, model.solve, model.c, o, config));

    for (int it = 1; it < config.inner_iters; ++it) {
        Matrix c = solve_matrix(model.train_output, o, yhat, config.gamma, config.term);
        KernelSolve solve = ridge.solve(c);
        Matrix output = ridge.fitted(solve);
        const double objective = partner_objective(ridge, solve, c, o, config);
        const double previous = model.objective_trace.back();
        model.c = std::move(c);
        model.solve = std::move(solve);
        model.train_output = std::move(output);
        model.objective_trace.push_back(objective);
        if (std::abs(previous - objective) <= config.inner_tol * std::max(std::abs(previous), 1e-300)) break;
    }
    return model;
}

PartnerModel fit_partner(const PartialLabelDataset& dataset, const Matrix& o, const PartnerConfig& config) {
    config.validate();
    const Kernel kernel = Kernel::resolve(config.kernel, dataset.features());
    auto gram = std::make_shared<const Matrix>(kernel.gram(dataset.features()));
    return fit_partner(KernelRidge(std::move(gram), config.lambda), dataset.noncandidates(), o, config);
}

Matrix partner_modeling_output(const PartnerModel& model, const Matrix& k_cross) { return predict(model.solve, k_cross); }

Labels argmin_clamped(const Matrix& m) {
    Labels labels(static_cast<std::size_t>(m.rows()), 0);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Eigen::Index best = 0;
        double best_value = std::min(1.0, std::max(0.0, m(i, 0)));
        for (Eigen::Index j = 1; j < m.cols(); ++j) {
            const double v = std::min(1.0, std::max(0.0, m(i, j)));
            if (v < best_value) {
                best = j;
                best_value = v;
            }
        }
        labels[static_cast<std::size_t>(i)] = static_cast<int>(best);
    }
    return labels;
}

Labels predict_labels(const PartnerModel& model, const Matrix& k_cross) {
    return argmin_clamped(partner_modeling_output(model, k_cross));
}

}  // namespace plcp
