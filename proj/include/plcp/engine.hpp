#ifndef PLCP_ENGINE_HPP
#define PLCP_ENGINE_HPP

#include "plcp/base.hpp"
#include "plcp/partner.hpp"

#include <cstdint>
#include <deque>
#include <optional>

/**
 * @file engine.hpp
 * @brief Mutual supervision between a base classifier and the partner
 * classifier.
 *
 * Each iteration trains the base classifier on the partner's blurred
 * confidence Ohat, blends its output into P, blurs P into O, trains the
 * partner on O, blends the partner output into Phat and blurs Phat into
 * the next Ohat. Unseen samples are labelled by the last partner.
 */

namespace plcp {

struct EngineConfig {
    double alpha = 0.5;
    double k = -1.0;
    int max_iter = 5;
    double stop_change_frac = 0.05;
    BaseClassifierKind base = PlKnnSpec{};
    PartnerConfig partner{};
    std::uint64_t seed = 0;
    /// Label test samples with the last base classifier instead of the partner.
    bool predict_from_base = false;
    /// Verify the confidence invariants after every iteration.
    bool check_invariants = true;

    void validate() const;
};

/// Per-iteration snapshot of the disambiguation state.
struct IterationSnapshot {
    Labels labels;                  ///< argmax of Ohat over the candidates
    Vector truth_confidence;        ///< P at the ground-truth label, NaN without ground truth
    Vector max_false_confidence;    ///< largest P among false-positive candidates, NaN when none
    double change_fraction = 1.0;   ///< fraction of labels changed since the previous iteration
};

struct RunReport {
    int iterations_run = 0;
    std::vector<IterationSnapshot> trajectories;
    PartnerModel final_partner;
    ConfidenceState final_state;
    Labels train_predictions;
    Labels test_predictions;
};

/// Fraction of positions where the label vectors differ.
double label_change_fraction(const Labels& previous, const Labels& current);

/**
 * Records the change fraction between `prev_labels` and `curr_labels` in
 * `history` (last two kept) and returns true once two consecutive fractions
 * are below `threshold`.
 */
bool should_stop(const Labels& prev_labels, const Labels& curr_labels, std::deque<double>& history, double threshold);

RunReport run_plcp(const PartialLabelDataset& dataset, const Matrix& test_features, const EngineConfig& config);

/**
 * The base classifier on its own: one fit on the initial uniform confidence.
 * Training labels are the candidate argmax of the blended confidence, test
 * labels the argmax of the base scores.
 */
RunReport run_base_alone(const PartialLabelDataset& dataset, const Matrix& test_features, const EngineConfig& config);

/// Row-wise argmax over all columns, lowest index on ties.
Labels argmax_rows(const Matrix& scores);

}  // namespace plcp

#endif
