#include "plcp/engine.hpp"

#include "plcp/blur.hpp"

#include <cmath>
#include <limits>

namespace plcp {

void EngineConfig::validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error("engine: alpha must lie in [0, 1]");
    validate_temperature(k);
    if (max_iter < 1) throw Error("engine: max_iter must be at least 1");
    if (!(stop_change_frac >= 0.0 && stop_change_frac <= 1.0)) {
        throw Error("engine: stop_change_frac must lie in [0, 1]");
    }
    if (const auto* knn = std::get_if<PlKnnSpec>(&base); knn && knn->k_neighbors < 1) {
        throw Error("engine: k_neighbors must be positive");
    }
    partner.validate();
}

double label_change_fraction(const Labels& previous, const Labels& current) {
    if (previous.size() != current.size()) throw Error("label_change_fraction: length mismatch");
    if (current.empty()) return 0.0;
    std::size_t changed = 0;
    for (std::size_t i = 0; i < current.size(); ++i) changed += previous[i] != current[i] ? 1 : 0;
    return static_cast<double>(changed) / static_cast<double>(current.size());
}

bool should_stop(const Labels& prev_labels, const Labels& curr_labels, std::deque<double>& history, double threshold) {
    history.push_back(label_change_fraction(prev_labels, curr_labels));
    while (history.size() > 2) history.pop_front();
    return history.size() == 2 && history[0] < threshold && history[1] < threshold;
}

Labels argmax_rows(const Matrix& scores) {
    Labels labels(static_cast<std::size_t>(scores.rows()), 0);
    for (Eigen::Index i = 0; i < scores.rows(); ++i) {
        Eigen::Index best = 0;
        for (Eigen::Index j = 1; j < scores.cols(); ++j) {
            if (scores(i, j) > scores(i, best)) best = j;
        }
        labels[static_cast<std::size_t>(i)] = static_cast<int>(best);
    }
    return labels;
}

namespace {

IterationSnapshot snapshot(const PartialLabelDataset& dataset, const ConfidenceState& state, Labels labels) {
    const Eigen::Index n = dataset.size();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    IterationSnapshot snap;
    snap.labels = std::move(labels);
    snap.truth_confidence = Vector::Constant(n, nan);
    snap.max_false_confidence = Vector::Constant(n, nan);
    if (!dataset.has_ground_truth()) return snap;
    const auto& truth = *dataset.ground_truth();
    const Matrix& y = dataset.candidates();
    for (Eigen::Index i = 0; i < n; ++i) {
        const int t = truth[static_cast<std::size_t>(i)];
        snap.truth_confidence(i) = state.p(i, t);
        for (Eigen::Index j = 0; j < y.cols(); ++j) {
            if (j == t || y(i, j) == 0.0) continue;
            const double v = state.p(i, j);
            if (std::isnan(snap.max_false_confidence(i)) || v > snap.max_false_confidence(i)) {
                snap.max_false_confidence(i) = v;
            }
        }
    }
    return snap;
}

Matrix base_supervision(const EngineConfig& config, const ConfidenceState& state, const Matrix& y) {
    const auto* knn = std::get_if<PlKnnSpec>(&config.base);
    if (knn == nullptr || !knn->binarize) return state.ohat;
    Matrix indicator = binarize_supervision(state.ohat, state.p, y);
    for (Eigen::Index i = 0; i < indicator.rows(); ++i) {
        if (indicator.row(i).sum() == 0.0) indicator.row(i) = y.row(i);
    }
    return normalize_rows(indicator);
}

void check_test_features(const PartialLabelDataset& dataset, const Matrix& test_features) {
    if (test_features.rows() > 0 && test_features.cols() != dataset.dimension()) {
        throw Error("test features have " + std::to_string(test_features.cols()) + " columns, training data has " +
                    std::to_string(dataset.dimension()));
    }
}

}  // namespace

RunReport run_plcp(const PartialLabelDataset& dataset, const Matrix& test_features, const EngineConfig& config) {
    config.validate();
    check_test_features(dataset, test_features);
    const Matrix& y = dataset.candidates();
    const Matrix yhat = dataset.noncandidates();

    const Kernel kernel = Kernel::resolve(config.partner.kernel, dataset.features());
    const KernelRidge ridge(std::make_shared<const Matrix>(kernel.gram(dataset.features())), config.partner.lambda);

    bool ambiguous = false;
    for (Eigen::Index i = 0; i < dataset.size() && !ambiguous; ++i) ambiguous = dataset.candidate_count(i) > 1;

    ConfidenceState state = init_confidence(dataset, config.k);
    RunReport report;
    std::unique_ptr<BaseFit> base;
    std::deque<double> history;
    Labels previous;

    for (int iter = 1; iter <= config.max_iter; ++iter) {
        base = fit_base(config.base, dataset, base_supervision(config, state, y));
        ConfidenceState next;
        next.p = update_labeling_confidence(state.p, base->train_output(), y, config.alpha);
        next.phat = state.phat;
        pin_single_candidate_rows(next, y);
        next.o = blur_labeling(next.p, y, config.k);
        PartnerModel partner = fit_partner(ridge, yhat, next.o, config.partner);
        next.phat = update_noncandidate_confidence(state.phat, partner.train_output, yhat, config.alpha);
        pin_single_candidate_rows(next, y);
        next.ohat = blur_noncandidate(next.phat, y, config.k);
        if (config.check_invariants) check_state(next, y);

        state = std::move(next);
        report.final_partner = std::move(partner);
        report.iterations_run = iter;

        Labels labels = argmax_over_candidates(state.ohat, y);
        IterationSnapshot snap = snapshot(dataset, state, labels);
        bool stop = !ambiguous;
        if (!previous.empty()) {
            stop = should_stop(previous, labels, history, config.stop_change_frac) || stop;
            snap.change_fraction = history.back();
        } else if (!ambiguous) {
            snap.change_fraction = 0.0;
        }
        report.trajectories.push_back(std::move(snap));
        previous = std::move(labels);
        if (stop) break;
    }

    report.train_predictions = previous;
    report.final_state = std::move(state);
    if (test_features.rows() > 0) {
        if (config.predict_from_base) {
            report.test_predictions = argmax_rows(base->predict(test_features));
        } else {
            report.test_predictions =
                predict_labels(report.final_partner, kernel.cross(test_features, dataset.features()));
        }
    }
    return report;
}

RunReport run_base_alone(const PartialLabelDataset& dataset, const Matrix& test_features, const EngineConfig& config) {
    config.validate();
    check_test_features(dataset, test_features);
    const Matrix& y = dataset.candidates();
    ConfidenceState state = init_confidence(dataset, config.k);
    const auto base = fit_base(config.base, dataset, state.ohat);
    state.p = update_labeling_confidence(state.p, base->train_output(), y, config.alpha);
    pin_single_candidate_rows(state, y);
    state.o = blur_labeling(state.p, y, config.k);
    state.ohat = state.o;

    RunReport report;
    report.iterations_run = 1;
    report.train_predictions = argmax_over_candidates(state.p, y);
    report.trajectories.push_back(snapshot(dataset, state, report.train_predictions));
    report.final_state = std::move(state);
    if (test_features.rows() > 0) report.test_predictions = argmax_rows(base->predict(test_features));
    return report;
}

}  // namespace plcp
