#ifndef PLCP_METRICS_HPP
#define PLCP_METRICS_HPP

#include "plcp/core.hpp"

#include <map>

namespace plcp {

struct MetricReport {
    double test_accuracy = 0.0;
    double transductive_accuracy = 0.0;
    double correction_ratio = 0.0;
    double miscorrection_ratio = 0.0;
    std::map<int, double> tolerance_accuracy;
};

struct CorrectionMetrics {
    double correction_ratio = 0.0;     ///< base wrong -> now correct, over base wrong
    double miscorrection_ratio = 0.0;  ///< base correct -> now wrong, over base correct
};

double accuracy(const Labels& pred, const Labels& truth);

/// Empty denominators give 0.
CorrectionMetrics correction_metrics(const Labels& base_labels, const Labels& plcp_labels, const Labels& truth);

/// Fraction of predictions within `radius` of the truth, for ordinal labels.
double tolerance_accuracy(const Labels& pred, const Labels& truth, int radius);

}  // namespace plcp

#endif
