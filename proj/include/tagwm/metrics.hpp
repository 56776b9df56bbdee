#pragma once

#include <cstddef>
#include <span>

#include "tagwm/tensor.hpp"
#include "tagwm/watermark.hpp"

namespace tagwm {

/// |A & B| / |A | B|; 1 when both masks are empty.
double iou(const SpatialMask& predicted, const SpatialMask& truth);
/// 2 |A & B| / (|A| + |B|); 1 when both masks are empty.
double dice(const SpatialMask& predicted, const SpatialMask& truth);

/// Mann-Whitney AUC with midranks for ties. Throws MetricError when `truth`
/// does not contain both classes.
double auc(const DensityMap& score, const SpatialMask& truth);

/// sup |F_n - Phi| over the sample.
double ks_statistic(std::span<const double> values);
double ks_statistic(std::span<const float> values);

/// Asymptotic KS critical value at alpha = 0.01: 1.628 / sqrt(n).
double ks_critical_value_1pct(std::size_t n);

struct ChiSquareResult {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 0.0;
};

/// Pearson goodness of fit of `observed` counts against `probabilities`
/// (which must sum to 1); dof = cells - 1.
ChiSquareResult chi_square_gof(std::span<const std::size_t> observed, std::span<const double> probabilities);

/// Fraction of agreeing bits.
double bit_accuracy(const MessageBits& truth, const MessageBits& decoded);

}  // namespace tagwm
