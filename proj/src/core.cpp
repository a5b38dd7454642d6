#include "plcp/core.hpp"

#include "plcp/blur.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace plcp {

namespace {

bool is_binary(double v) { return v == 0.0 || v == 1.0; }

}  // namespace

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        std::ostringstream msg;
        msg << what << ": shape mismatch (" << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x"
            << b.cols() << ")";
        throw Error(msg.str());
    }
}

PartialLabelDataset::PartialLabelDataset(Matrix features, Matrix candidates, std::optional<Labels> ground_truth)
    : features_(std::move(features)), candidates_(std::move(candidates)), ground_truth_(std::move(ground_truth)) {
    if (features_.rows() != candidates_.rows()) {
        std::ostringstream msg;
        msg << "dataset: " << features_.rows() << " feature rows but " << candidates_.rows() << " candidate rows";
        throw Error(msg.str());
    }
    if (candidates_.cols() < 1) throw Error("dataset: label count must be positive");
    if (!features_.allFinite()) {
        for (Eigen::Index i = 0; i < features_.rows(); ++i) {
            if (!features_.row(i).allFinite()) {
                throw Error("dataset: non-finite feature in row " + std::to_string(i));
            }
        }
    }
    for (Eigen::Index i = 0; i < candidates_.rows(); ++i) {
        double count = 0.0;
        for (Eigen::Index j = 0; j < candidates_.cols(); ++j) {
            if (!is_binary(candidates_(i, j))) {
                throw Error("dataset: candidate entry (" + std::to_string(i) + ", " + std::to_string(j) +
                            ") is not 0/1");
            }
            count += candidates_(i, j);
        }
        if (count == 0.0) throw Error("dataset: empty candidate set in row " + std::to_string(i));
    }
    if (ground_truth_) {
        if (static_cast<Eigen::Index>(ground_truth_->size()) != candidates_.rows()) {
            throw Error("dataset: ground truth has " + std::to_string(ground_truth_->size()) + " entries, expected " +
                        std::to_string(candidates_.rows()));
        }
        for (std::size_t i = 0; i < ground_truth_->size(); ++i) {
            const int label = (*ground_truth_)[i];
            if (label < 0 || label >= candidates_.cols()) {
                throw Error("dataset: ground truth " + std::to_string(label) + " out of range in row " +
                            std::to_string(i));
            }
            if (candidates_(static_cast<Eigen::Index>(i), label) != 1.0) {
                throw Error("dataset: ground truth " + std::to_string(label) + " not in candidate set of row " +
                            std::to_string(i));
            }
        }
    }
}

Matrix PartialLabelDataset::noncandidates() const { return Matrix::Ones(candidates_.rows(), candidates_.cols()) - candidates_; }

int PartialLabelDataset::candidate_count(Eigen::Index i) const {
    return static_cast<int>(candidates_.row(i).sum());
}

double PartialLabelDataset::mean_candidate_count() const {
    if (size() == 0) return 0.0;
    return candidates_.sum() / static_cast<double>(size());
}

PartialLabelDataset PartialLabelDataset::subset(const std::vector<Eigen::Index>& rows) const {
    Matrix x(static_cast<Eigen::Index>(rows.size()), dimension());
    Matrix y(static_cast<Eigen::Index>(rows.size()), label_count());
    std::optional<Labels> truth;
    if (ground_truth_) truth.emplace();
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto src = rows[r];
        if (src < 0 || src >= size()) throw Error("dataset subset: row index out of range");
        x.row(static_cast<Eigen::Index>(r)) = features_.row(src);
        y.row(static_cast<Eigen::Index>(r)) = candidates_.row(src);
        if (truth) truth->push_back((*ground_truth_)[static_cast<std::size_t>(src)]);
    }
    return PartialLabelDataset(std::move(x), std::move(y), std::move(truth));
}

ConfidenceState init_confidence(const PartialLabelDataset& dataset, double temperature) {
    const Matrix& y = dataset.candidates();
    ConfidenceState state;
    state.p = y.array().colwise() / y.rowwise().sum().array();
    state.phat = dataset.noncandidates();
    state.o = blur_labeling(state.p, y, temperature);
    state.ohat = state.p;
    return state;
}

namespace {

// Single-candidate rows: returns the candidate column, or -1.
Eigen::Index sole_candidate(const Matrix& y, Eigen::Index i) {
    Eigen::Index found = -1;
    for (Eigen::Index j = 0; j < y.cols(); ++j) {
        if (y(i, j) != 0.0) {
            if (found >= 0) return -1;
            found = j;
        }
    }
    return found;
}

void check_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error("alpha must lie in [0, 1]");
}

}  // namespace

Matrix update_labeling_confidence(const Matrix& p_prev, const Matrix& m, const Matrix& y, double alpha) {
    require_same_shape(p_prev, m, "update_labeling_confidence");
    require_same_shape(p_prev, y, "update_labeling_confidence");
    check_alpha(alpha);
    return (alpha * p_prev + (1.0 - alpha) * m).cwiseMin(y).cwiseMax(0.0);
}

Matrix update_noncandidate_confidence(const Matrix& phat_prev, const Matrix& mhat, const Matrix& yhat, double alpha) {
    require_same_shape(phat_prev, mhat, "update_noncandidate_confidence");
    require_same_shape(phat_prev, yhat, "update_noncandidate_confidence");
    check_alpha(alpha);
    return (alpha * phat_prev + (1.0 - alpha) * mhat).cwiseMax(yhat).cwiseMin(1.0);
}

void pin_single_candidate_rows(ConfidenceState& state, const Matrix& y) {
    require_same_shape(state.p, y, "pin_single_candidate_rows");
    require_same_shape(state.phat, y, "pin_single_candidate_rows");
    for (Eigen::Index i = 0; i < y.rows(); ++i) {
        const auto only = sole_candidate(y, i);
        if (only < 0) continue;
        state.p.row(i).setZero();
        state.p(i, only) = 1.0;
        state.phat.row(i).setOnes();
        state.phat(i, only) = 0.0;
    }
}

Labels argmax_over_candidates(const Matrix& scores, const Matrix& y) {
    require_same_shape(scores, y, "argmax_over_candidates");
    Labels labels(static_cast<std::size_t>(scores.rows()), -1);
    for (Eigen::Index i = 0; i < scores.rows(); ++i) {
        int best = -1;
        for (Eigen::Index j = 0; j < scores.cols(); ++j) {
            if (y(i, j) == 0.0) continue;
            if (best < 0 || scores(i, j) > scores(i, best)) best = static_cast<int>(j);
        }
        labels[static_cast<std::size_t>(i)] = best;
    }
    return labels;
}

void check_state(const ConfidenceState& state, const Matrix& y, double tolerance) {
    require_same_shape(state.p, y, "check_state(p)");
    require_same_shape(state.phat, y, "check_state(phat)");
    require_same_shape(state.o, y, "check_state(o)");
    require_same_shape(state.ohat, y, "check_state(ohat)");
    auto fail = [](const std::string& what, Eigen::Index i, Eigen::Index j) {
        throw InvariantViolation(what + " at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    };
    for (Eigen::Index i = 0; i < y.rows(); ++i) {
        for (Eigen::Index j = 0; j < y.cols(); ++j) {
            const double yij = y(i, j);
            if (state.p(i, j) < 0.0 || state.p(i, j) > yij) fail("labeling confidence outside [0, y]", i, j);
            if (state.phat(i, j) < 1.0 - yij || state.phat(i, j) > 1.0) {
                fail("non-candidate confidence outside [yhat, 1]", i, j);
            }
            if (yij == 0.0 && (state.o(i, j) != 0.0 || state.ohat(i, j) != 0.0)) {
                fail("blurred confidence off the candidate set", i, j);
            }
        }
        if (std::abs(state.o.row(i).sum() - 1.0) > tolerance) fail("blurred labeling row does not sum to 1", i, 0);
        if (std::abs(state.ohat.row(i).sum() - 1.0) > tolerance) {
            fail("blurred non-candidate row does not sum to 1", i, 0);
        }
    }
}

}  // namespace plcp
