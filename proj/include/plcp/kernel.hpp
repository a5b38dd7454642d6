#ifndef PLCP_KERNEL_HPP
#define PLCP_KERNEL_HPP

#include "plcp/core.hpp"

#include <memory>
#include <optional>

/**
 * @file kernel.hpp
 * @brief Gaussian and linear kernels, and the closed-form kernel ridge solve
 * obtained from the KKT conditions of
 *
 *     min ||Phi W + 1 b^T - C||_F^2 + lambda ||W||_F^2.
 *
 * With G = K / (2 lambda) + I / 2 the stationarity conditions give
 *
 *     s   = 1^T G^{-1},
 *     b^T = s C / (s 1),
 *     A   = G^{-1} (C - 1 b^T),
 *     H   = K A / (2 lambda) + 1 b^T.
 */

namespace plcp {

enum class KernelKind { gaussian, linear };

struct KernelSpec {
    KernelKind kind = KernelKind::gaussian;
    /// Gaussian bandwidth. Unset means the mean distance over distinct training pairs.
    std::optional<double> sigma;
    /// Ridge weight lambda.
    double ridge = 0.05;
};

/// A kernel with its bandwidth resolved against a training set.
class Kernel {
public:
    /// Resolve the bandwidth policy of `spec` on the training features.
    static Kernel resolve(const KernelSpec& spec, const Matrix& train_features);

    static Kernel gaussian(double sigma);
    static Kernel linear();

    KernelKind kind() const { return kind_; }
    double sigma() const { return sigma_; }

    /// rows(a) x rows(b) matrix of kernel evaluations.
    Matrix cross(const Matrix& a, const Matrix& b) const;
    Matrix gram(const Matrix& x) const { return cross(x, x); }

private:
    Kernel(KernelKind kind, double sigma) : kind_(kind), sigma_(sigma) {}

    KernelKind kind_;
    double sigma_;
};

/// Mean Euclidean distance over pairs i < j. Zero for fewer than two rows.
double mean_pairwise_distance(const Matrix& x);

/// Gram matrix of `x` under `spec`; throws when the Gaussian bandwidth resolves to zero.
Matrix gram_matrix(const Matrix& x, const KernelSpec& spec);

/// Dual solution of one kernel ridge fit.
struct KernelSolve {
    Matrix dual_coeffs;                  ///< A, n x l
    Vector bias;                         ///< b, length l
    Vector s_row;                        ///< s = 1^T G^{-1}, length n
    double ridge = 0.0;                  ///< lambda
    std::shared_ptr<const Matrix> gram;  ///< training Gram matrix K, shared between solves
};

/**
 * Factorizes K / (2 lambda) + I / 2 once; every subsequent solve reuses it.
 * Immutable after construction and safe to share between threads.
 */
class KernelRidge {
public:
    KernelRidge(std::shared_ptr<const Matrix> gram, double ridge);

    KernelSolve solve(const Matrix& target) const;

    /// Training modeling output H of a solve from this factorization.
    Matrix fitted(const KernelSolve& model) const;

    const Matrix& gram() const { return *gram_; }
    double ridge() const { return ridge_; }
    /// Reciprocal condition estimate of the factorized system.
    double rcond() const { return rcond_; }

private:
    std::shared_ptr<const Matrix> gram_;
    double ridge_;
    Eigen::LLT<Matrix> factor_;
    Vector s_row_;
    double rcond_ = 0.0;
};

KernelSolve kkt_solve(const Matrix& gram, const Matrix& target, double ridge);

/// M = K_cross A / (2 lambda) + 1 b^T for an m x n cross-kernel block.
Matrix predict(const KernelSolve& model, const Matrix& k_cross);

}  // namespace plcp

#endif
