#ifndef PLCP_BLUR_HPP
#define PLCP_BLUR_HPP

#include "plcp/core.hpp"

/**
 * @file blur.hpp
 * @brief Double-exponential blurring of confidence matrices.
 *
 * Each confidence is mapped through exp(e^k * p), masked by the candidate
 * matrix and the rows are L1-normalized. For k < 0 the map contracts the gap
 * between any two confidences while preserving their order.
 */

namespace plcp {

/// Upper limit on the temperature; at or above it the blur stops contracting.
inline constexpr double kMaxTemperature = 0.69314718055994530942;  // ln 2

enum class TemperatureCheck { ok, outside_proven_range };

/**
 * Validate a blur temperature. Throws for k >= ln 2 (and non-finite k);
 * returns outside_proven_range for 0 <= k < ln 2.
 */
TemperatureCheck validate_temperature(double k);

Matrix blur_labeling(const Matrix& p, const Matrix& y, double k);

/// Blur of 1 - phat over the candidates.
Matrix blur_noncandidate(const Matrix& phat, const Matrix& y, double k);

/// Rows divided by their sums; throws on a zero row.
Matrix normalize_rows(const Matrix& q);

}  // namespace plcp

#endif
