#include "plcp/blur.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace plcp {

TemperatureCheck validate_temperature(double k) {
    if (!std::isfinite(k)) throw Error("blur temperature must be finite");
    if (k >= kMaxTemperature) {
        throw Error("blur temperature k = " + std::to_string(k) + " must be below ln 2");
    }
    return k < 0.0 ? TemperatureCheck::ok : TemperatureCheck::outside_proven_range;
}

Matrix normalize_rows(const Matrix& q) {
    Matrix out(q.rows(), q.cols());
    for (Eigen::Index i = 0; i < q.rows(); ++i) {
        const double total = q.row(i).sum();
        if (!(total > 0.0)) throw Error("cannot normalize row " + std::to_string(i) + ": non-positive sum");
        out.row(i) = q.row(i) / total;
    }
    return out;
}

Matrix blur_labeling(const Matrix& p, const Matrix& y, double k) {
    require_same_shape(p, y, "blur_labeling");
    if (!std::isfinite(k)) throw Error("blur temperature must be finite");
    const double scale = std::exp(k);
    Matrix q(p.rows(), p.cols());
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
        // Shifting by the row maximum leaves the normalized row unchanged.
        double peak = -std::numeric_limits<double>::infinity();
        for (Eigen::Index j = 0; j < p.cols(); ++j) {
            if (y(i, j) != 0.0) peak = std::max(peak, scale * p(i, j));
        }
        if (peak == -std::numeric_limits<double>::infinity()) {
            throw Error("blur: row " + std::to_string(i) + " has no candidate label");
        }
        for (Eigen::Index j = 0; j < p.cols(); ++j) {
            q(i, j) = y(i, j) != 0.0 ? std::exp(scale * p(i, j) - peak) : 0.0;
        }
    }
    return normalize_rows(q);
}

Matrix blur_noncandidate(const Matrix& phat, const Matrix& y, double k) {
    require_same_shape(phat, y, "blur_noncandidate");
    return blur_labeling(Matrix::Ones(phat.rows(), phat.cols()) - phat, y, k);
}

}  // namespace plcp
