#include "plcp/metrics.hpp"

#include <cstdlib>
#include <string>

namespace plcp {

namespace {

void check_lengths(std::size_t a, std::size_t b, const char* what) {
    if (a != b) throw Error(std::string(what) + ": length mismatch (" + std::to_string(a) + " vs " + std::to_string(b) + ")");
}

double ratio(std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

double accuracy(const Labels& pred, const Labels& truth) {
    check_lengths(pred.size(), truth.size(), "accuracy");
    if (truth.empty()) throw Error("accuracy: no ground truth");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) hits += pred[i] == truth[i] ? 1 : 0;
    return ratio(hits, truth.size());
}

CorrectionMetrics correction_metrics(const Labels& base_labels, const Labels& plcp_labels, const Labels& truth) {
    check_lengths(base_labels.size(), truth.size(), "correction_metrics");
    check_lengths(plcp_labels.size(), truth.size(), "correction_metrics");
    std::size_t base_wrong = 0, corrected = 0, base_right = 0, broken = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (base_labels[i] != truth[i]) {
            ++base_wrong;
            corrected += plcp_labels[i] == truth[i] ? 1 : 0;
        } else {
            ++base_right;
            broken += plcp_labels[i] != truth[i] ? 1 : 0;
        }
    }
    return {ratio(corrected, base_wrong), ratio(broken, base_right)};
}

double tolerance_accuracy(const Labels& pred, const Labels& truth, int radius) {
    check_lengths(pred.size(), truth.size(), "tolerance_accuracy");
    if (radius < 0) throw Error("tolerance_accuracy: radius must be non-negative");
    if (truth.empty()) throw Error("tolerance_accuracy: no ground truth");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) hits += std::abs(pred[i] - truth[i]) <= radius ? 1 : 0;
    return ratio(hits, truth.size());
}

}  // namespace plcp
