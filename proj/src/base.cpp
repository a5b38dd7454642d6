#include "plcp/base.hpp"

#include <algorithm>
#include <numeric>

namespace plcp {

std::string base_name(const BaseClassifierKind& kind) {
    return std::holds_alternative<PlKnnSpec>(kind) ? "PL-KNN" : "KERNEL-LS";
}

std::vector<std::vector<Eigen::Index>> nearest_neighbors(const Matrix& reference, const Matrix& queries, int k,
                                                         bool exclude_self) {
    if (reference.cols() != queries.cols()) throw Error("nearest_neighbors: feature dimensions differ");
    const Eigen::Index available = reference.rows() - (exclude_self ? 1 : 0);
    if (k < 1 || k > available) {
        throw Error("nearest_neighbors: k = " + std::to_string(k) + " needs 1 <= k <= " + std::to_string(available));
    }
    std::vector<std::vector<Eigen::Index>> out(static_cast<std::size_t>(queries.rows()));
    std::vector<Eigen::Index> order(static_cast<std::size_t>(reference.rows()));
    Vector dist(reference.rows());
    for (Eigen::Index q = 0; q < queries.rows(); ++q) {
        dist = (reference.rowwise() - queries.row(q)).rowwise().squaredNorm();
        std::iota(order.begin(), order.end(), Eigen::Index{0});
        auto end = order.end();
        if (exclude_self) end = std::remove(order.begin(), order.end(), q);
        auto nth = order.begin() + k;
        std::partial_sort(order.begin(), nth, end, [&](Eigen::Index a, Eigen::Index b) {
            return dist(a) < dist(b) || (dist(a) == dist(b) && a < b);
        });
        out[static_cast<std::size_t>(q)].assign(order.begin(), nth);
    }
    return out;
}

namespace {

class PlKnnFit final : public BaseFit {
public:
    PlKnnFit(const PlKnnSpec& spec, const PartialLabelDataset& dataset, const Matrix& supervision)
        : k_(spec.k_neighbors), reference_(dataset.features()), supervision_(supervision) {
        if (k_ >= dataset.size()) {
            throw Error("PL-KNN: k_neighbors = " + std::to_string(k_) + " must be below n = " +
                        std::to_string(dataset.size()));
        }
        const auto neighbors = nearest_neighbors(reference_, reference_, k_, true);
        output_ = average(neighbors).cwiseProduct(dataset.candidates());
    }

    const Matrix& train_output() const override { return output_; }

    Matrix predict(const Matrix& features) const override {
        return average(nearest_neighbors(reference_, features, k_, false));
    }

private:
    Matrix average(const std::vector<std::vector<Eigen::Index>>& neighbors) const {
        Matrix out = Matrix::Zero(static_cast<Eigen::Index>(neighbors.size()), supervision_.cols());
        for (std::size_t q = 0; q < neighbors.size(); ++q) {
            for (const auto idx : neighbors[q]) out.row(static_cast<Eigen::Index>(q)) += supervision_.row(idx);
        }
        return out / static_cast<double>(k_);
    }

    int k_;
    Matrix reference_;
    Matrix supervision_;
    Matrix output_;
};

class KernelLsFit final : public BaseFit {
public:
    KernelLsFit(const KernelLsSpec& spec, const PartialLabelDataset& dataset, const Matrix& supervision)
        : kernel_(Kernel::resolve(spec.kernel, dataset.features())), reference_(dataset.features()) {
        auto gram = std::make_shared<const Matrix>(kernel_.gram(reference_));
        const KernelRidge ridge(std::move(gram), spec.kernel.ridge);
        solve_ = ridge.solve(supervision);
        output_ = ridge.fitted(solve_).cwiseProduct(dataset.candidates());
    }

    const Matrix& train_output() const override { return output_; }

    Matrix predict(const Matrix& features) const override {
        return plcp::predict(solve_, kernel_.cross(features, reference_));
    }

private:
    Kernel kernel_;
    Matrix reference_;
    KernelSolve solve_;
    Matrix output_;
};

}  // namespace

std::unique_ptr<BaseFit> fit_base(const BaseClassifierKind& kind, const PartialLabelDataset& dataset,
                                  const Matrix& supervision) {
    require_same_shape(supervision, dataset.candidates(), "fit_base");
    if (const auto* knn = std::get_if<PlKnnSpec>(&kind)) {
        return std::make_unique<PlKnnFit>(*knn, dataset, supervision);
    }
    return std::make_unique<KernelLsFit>(std::get<KernelLsSpec>(kind), dataset, supervision);
}

Matrix fit_predict_base(const BaseClassifierKind& kind, const PartialLabelDataset& dataset, const Matrix& supervision) {
    return fit_base(kind, dataset, supervision)->train_output();
}

Matrix binarize_supervision(const Matrix& ohat, const Matrix& p, const Matrix& y) {
    require_same_shape(ohat, p, "binarize_supervision");
    require_same_shape(ohat, y, "binarize_supervision");
    return ((ohat - p).array() >= 0.0).cast<double>().matrix().cwiseProduct(y);
}

}  // namespace plcp
