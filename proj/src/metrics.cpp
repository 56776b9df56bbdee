#include "tagwm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "tagwm/error.hpp"
#include "tagwm/normal.hpp"

namespace tagwm {

namespace {

struct Overlap {
  std::size_t both = 0;
  std::size_t predicted = 0;
  std::size_t truth = 0;
};

Overlap overlap(const SpatialMask& predicted, const SpatialMask& truth) {
  if (predicted.height() != truth.height() || predicted.width() != truth.width()) {
    throw ShapeError("mask shapes differ");
  }
  Overlap o;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    o.both += predicted[i] & truth[i];
    o.predicted += predicted[i];
    o.truth += truth[i];
  }
  return o;
}

template <typename T>
double ks_impl(std::span<const T> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = std_normal_cdf(sorted[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

}  // namespace

double iou(const SpatialMask& predicted, const SpatialMask& truth) {
  const auto o = overlap(predicted, truth);
  const std::size_t uni = o.predicted + o.truth - o.both;
  return uni == 0 ? 1.0 : static_cast<double>(o.both) / static_cast<double>(uni);
}

double dice(const SpatialMask& predicted, const SpatialMask& truth) {
  const auto o = overlap(predicted, truth);
  const std::size_t denom = o.predicted + o.truth;
  return denom == 0 ? 1.0 : 2.0 * static_cast<double>(o.both) / static_cast<double>(denom);
}

double auc(const DensityMap& score, const SpatialMask& truth) {
  if (score.height() != truth.height() || score.width() != truth.width()) {
    throw ShapeError("auc: score and truth shapes differ");
  }
  const std::size_t n = truth.size();
  const std::size_t positives = truth.count();
  if (positives == 0 || positives == n) throw MetricError("auc: truth mask must contain both classes");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return score[a] < score[b]; });
  double positive_rank_sum = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && score[order[j]] == score[order[i]]) ++j;
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);  // ranks i+1 .. j
    for (std::size_t k = i; k < j; ++k) {
      if (truth[order[k]]) positive_rank_sum += midrank;
    }
    i = j;
  }
  const double p = static_cast<double>(positives);
  const double q = static_cast<double>(n - positives);
  return (positive_rank_sum - p * (p + 1.0) / 2.0) / (p * q);
}

double ks_statistic(std::span<const double> values) { return ks_impl(values); }
double ks_statistic(std::span<const float> values) { return ks_impl(values); }

double ks_critical_value_1pct(std::size_t n) { return 1.628 / std::sqrt(static_cast<double>(n)); }

ChiSquareResult chi_square_gof(std::span<const std::size_t> observed, std::span<const double> probabilities) {
  if (observed.size() != probabilities.size() || observed.size() < 2) {
    throw ParameterError("chi_square_gof: need matching observed/probability vectors with >= 2 cells");
  }
  const double total = static_cast<double>(std::accumulate(observed.begin(), observed.end(), std::size_t{0}));
  ChiSquareResult r;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (!(probabilities[i] > 0.0)) throw ParameterError("chi_square_gof: probabilities must be positive");
    const double expected = total * probabilities[i];
    const double diff = static_cast<double>(observed[i]) - expected;
    r.statistic += diff * diff / expected;
  }
  r.dof = observed.size() - 1;
  r.p_value = boost::math::gamma_q(0.5 * static_cast<double>(r.dof), 0.5 * r.statistic);
  return r;
}

double bit_accuracy(const MessageBits& truth, const MessageBits& decoded) {
  if (truth.size() != decoded.size()) throw ShapeError("bit_accuracy: message lengths differ");
  std::size_t matches = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) matches += truth[i] == decoded[i];
  return static_cast<double>(matches) / static_cast<double>(truth.size());
}

}  // namespace tagwm
