#ifndef PLCP_CORE_HPP
#define PLCP_CORE_HPP

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

/**
 * @file core.hpp
 * @brief Partial-label datasets, confidence matrices and the thresholded
 * confidence updates shared by the base and partner classifiers.
 */

namespace plcp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Labels = std::vector<int>;

/// Raised for malformed inputs: shape mismatches, invalid datasets, bad parameters.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an internal invariant (box constraints, row sums, support) is violated.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

/**
 * @brief Training data for partial label learning.
 *
 * Holds the n x d feature matrix, the n x l binary candidate matrix and,
 * optionally, the ground-truth label of every sample. Instances are only
 * created through the validating constructor, so every row has a non-empty
 * candidate set and the ground truth (when present) lies inside it.
 */
class PartialLabelDataset {
public:
    PartialLabelDataset(Matrix features, Matrix candidates, std::optional<Labels> ground_truth = std::nullopt);

    const Matrix& features() const { return features_; }
    const Matrix& candidates() const { return candidates_; }
    const std::optional<Labels>& ground_truth() const { return ground_truth_; }
    bool has_ground_truth() const { return ground_truth_.has_value(); }

    Eigen::Index size() const { return features_.rows(); }
    Eigen::Index dimension() const { return features_.cols(); }
    Eigen::Index label_count() const { return candidates_.cols(); }

    /// Non-candidate indicator matrix, 1 - Y.
    Matrix noncandidates() const;

    /// Number of candidates of row i.
    int candidate_count(Eigen::Index i) const;

    double mean_candidate_count() const;

    /// Rows selected by index, in the given order.
    PartialLabelDataset subset(const std::vector<Eigen::Index>& rows) const;

private:
    Matrix features_;
    Matrix candidates_;
    std::optional<Labels> ground_truth_;
};

/// Paired base-side and partner-side confidences with their blurred forms.
struct ConfidenceState {
    Matrix p;     ///< labeling confidence, 0 <= p <= Y
    Matrix phat;  ///< non-candidate confidence, Yhat <= phat <= 1
    Matrix o;     ///< blurred labeling confidence
    Matrix ohat;  ///< blurred non-candidate confidence, supervision for the base classifier
};

/**
 * Uniform confidence over each candidate set, phat = Yhat, o = blur(p) and
 * ohat = p (the base classifier's first supervision is the initial confidence).
 */
ConfidenceState init_confidence(const PartialLabelDataset& dataset, double temperature = -1.0);

/// Blend, then clamp element-wise into [0, y_ij].
Matrix update_labeling_confidence(const Matrix& p_prev, const Matrix& m, const Matrix& y, double alpha);

/// Blend, then clamp element-wise into [yhat_ij, 1].
Matrix update_noncandidate_confidence(const Matrix& phat_prev, const Matrix& mhat, const Matrix& yhat, double alpha);

/// Reset p to one-hot and phat to zero-hot on every row with a single candidate.
void pin_single_candidate_rows(ConfidenceState& state, const Matrix& y);

/// Index of the largest entry of each row among its candidates; ties go to the lowest index.
Labels argmax_over_candidates(const Matrix& scores, const Matrix& y);

/// Throws InvariantViolation unless the state satisfies every box, support and row-sum constraint.
void check_state(const ConfidenceState& state, const Matrix& y, double tolerance = 1e-9);

void require_same_shape(const Matrix& a, const Matrix& b, const char* what);

}  // namespace plcp

#endif
