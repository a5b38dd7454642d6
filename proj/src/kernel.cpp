#include "plcp/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace plcp {

namespace {

// Systems this badly conditioned do not yield a trustworthy solve.
constexpr double kMinRcond = 1e-14;

}  // namespace

double mean_pairwise_distance(const Matrix& x) {
    const Eigen::Index n = x.rows();
    if (n < 2) return 0.0;
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) total += (x.row(i) - x.row(j)).norm();
    }
    return total / (0.5 * static_cast<double>(n) * static_cast<double>(n - 1));
}

Kernel Kernel::gaussian(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw Error("gaussian kernel bandwidth must be positive and finite (got " + std::to_string(sigma) + ")");
    }
    return Kernel(KernelKind::gaussian, sigma);
}

Kernel Kernel::linear() { return Kernel(KernelKind::linear, 0.0); }

Kernel Kernel::resolve(const KernelSpec& spec, const Matrix& train_features) {
    if (spec.kind == KernelKind::linear) return linear();
    const double sigma = spec.sigma ? *spec.sigma : mean_pairwise_distance(train_features);
    if (!(sigma > 0.0)) throw Error("gaussian kernel bandwidth resolved to zero: all training points coincide");
    return gaussian(sigma);
}

Matrix Kernel::cross(const Matrix& a, const Matrix& b) const {
    if (a.cols() != b.cols()) throw Error("kernel: feature dimensions differ");
    Matrix k = a * b.transpose();
    if (kind_ == KernelKind::linear) return k;
    const Vector a_sq = a.rowwise().squaredNorm();
    const Vector b_sq = b.rowwise().squaredNorm();
    const double scale = -1.0 / (2.0 * sigma_ * sigma_);
    for (Eigen::Index j = 0; j < k.cols(); ++j) {
        for (Eigen::Index i = 0; i < k.rows(); ++i) {
            const double sq = std::max(0.0, a_sq(i) + b_sq(j) - 2.0 * k(i, j));
            k(i, j) = std::exp(scale * sq);
        }
    }
    // Exact symmetry and unit diagonal for a Gram matrix.
    if (&a == &b) {
        for (Eigen::Index i = 0; i < k.rows(); ++i) {
            k(i, i) = 1.0;
            for (Eigen::Index j = 0; j < i; ++j) k(j, i) = k(i, j);
        }
    }
    return k;
}

Matrix gram_matrix(const Matrix& x, const KernelSpec& spec) { return Kernel::resolve(spec, x).gram(x); }

KernelRidge::KernelRidge(std::shared_ptr<const Matrix> gram, double ridge) : gram_(std::move(gram)), ridge_(ridge) {
    if (!gram_) throw Error("kernel ridge: missing Gram matrix");
    if (gram_->rows() != gram_->cols()) throw Error("kernel ridge: Gram matrix is not square");
    if (!(ridge_ > 0.0) || !std::isfinite(ridge_)) throw Error("kernel ridge: lambda must be positive");
    const Eigen::Index n = gram_->rows();
    Matrix system = *gram_ / (2.0 * ridge_);
    system.diagonal().array() += 0.5;
    factor_.compute(system);
    if (factor_.info() != Eigen::Success) {
        throw Error("kernel ridge: system is not positive definite (is the kernel PSD?)");
    }
    rcond_ = factor_.rcond();
    if (!(rcond_ > kMinRcond)) {
        std::ostringstream msg;
        msg << "kernel ridge: system numerically singular (rcond = " << rcond_ << ")";
        throw Error(msg.str());
    }
    s_row_ = factor_.solve(Vector::Ones(n));
}

KernelSolve KernelRidge::solve(const Matrix& target) const {
    if (target.rows() != gram_->rows()) {
        throw Error("kernel ridge: target has " + std::to_string(target.rows()) + " rows, expected " +
                    std::to_string(gram_->rows()));
    }
    KernelSolve out;
    out.ridge = ridge_;
    out.gram = gram_;
    out.s_row = s_row_;
    out.bias = (s_row_.transpose() * target).transpose() / s_row_.sum();
    out.dual_coeffs = factor_.solve(target.rowwise() - out.bias.transpose());
    return out;
}

Matrix KernelRidge::fitted(const KernelSolve& model) const { return predict(model, *gram_); }

KernelSolve kkt_solve(const Matrix& gram, const Matrix& target, double ridge) {
    return KernelRidge(std::make_shared<const Matrix>(gram), ridge).solve(target);
}

Matrix predict(const KernelSolve& model, const Matrix& k_cross) {
    if (k_cross.cols() != model.dual_coeffs.rows()) {
        throw Error("predict: cross kernel has " + std::to_string(k_cross.cols()) + " columns, model has " +
                    std::to_string(model.dual_coeffs.rows()) + " training rows");
    }
    Matrix out = k_cross * model.dual_coeffs / (2.0 * model.ridge);
    out.rowwise() += model.bias.transpose();
    return out;
}

}  // namespace plcp
