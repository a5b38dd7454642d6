#ifndef PLCP_BASE_HPP
#define PLCP_BASE_HPP

#include "plcp/kernel.hpp"

#include <memory>
#include <variant>

/**
 * @file base.hpp
 * @brief Base partial-label classifiers driven by a confidence supervision
 * matrix: PL-KNN and a kernel least-squares confidence regressor.
 */

namespace plcp {

/// k-nearest-neighbour averaging of supervision rows.
struct PlKnnSpec {
    int k_neighbors = 10;
    /// Replace the supervision by the indicator of Ohat >= P before averaging.
    bool binarize = false;
};

/// Kernel ridge regression onto the supervision matrix.
struct KernelLsSpec {
    KernelSpec kernel{};
};

using BaseClassifierKind = std::variant<PlKnnSpec, KernelLsSpec>;

std::string base_name(const BaseClassifierKind& kind);

/**
 * A trained base classifier. `train_output` is the modeling output M on the
 * training set (masked by the candidates); `predict` scores unseen samples.
 */
class BaseFit {
public:
    virtual ~BaseFit() = default;
    virtual const Matrix& train_output() const = 0;
    /// Unmasked scores for new samples, rows(features) x l.
    virtual Matrix predict(const Matrix& features) const = 0;
};

/// Neighbour lists of every query row, nearest first; equal distances keep the lower index first.
std::vector<std::vector<Eigen::Index>> nearest_neighbors(const Matrix& reference, const Matrix& queries, int k,
                                                         bool exclude_self);

std::unique_ptr<BaseFit> fit_base(const BaseClassifierKind& kind, const PartialLabelDataset& dataset,
                                  const Matrix& supervision);

/// Modeling output M of the base classifier trained on `supervision`.
Matrix fit_predict_base(const BaseClassifierKind& kind, const PartialLabelDataset& dataset, const Matrix& supervision);

/// Element-wise indicator of ohat >= p, masked by y.
Matrix binarize_supervision(const Matrix& ohat, const Matrix& p, const Matrix& y);

}  // namespace plcp

#endif
