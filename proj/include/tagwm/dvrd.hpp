#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tagwm/tensor.hpp"

namespace tagwm {

enum class Smoothing { None, Majority3x3 };

std::string to_string(Smoothing smoothing);
Smoothing parse_smoothing(std::string_view name);

/// Midpoint between the untampered localization error (0.14513) and the fully
/// randomised error 2 theta (1 - theta) = 0.5 at theta = 0.5.
inline constexpr double kDefaultDensityThreshold = (0.14513 + 0.5) / 2.0;

struct DvrdConfig {
  std::vector<std::size_t> kernel_sizes{3, 5, 9, 15};
  double tau = kDefaultDensityThreshold;
  Smoothing smoothing = Smoothing::Majority3x3;

  /// Throws ParameterError on empty/even kernels or tau outside (0, 1).
  void validate() const;
  /// True when tau lies strictly between the clean error rate and 2 theta (1 - theta).
  [[nodiscard]] bool separates(double theta, double clean_error) const noexcept;
};

/// Element-wise W_loc XOR reconstructed W_loc.
BitGrid xor_map(const BitGrid& reference, const BitGrid& observed);

/// Channel-mean of `variation`, then a box mean of odd size `kernel` with
/// shrinking-window normalisation at the borders.
DensityMap density_map(const BitGrid& variation, std::size_t kernel);

struct Detection {
  /// Mean of the per-scale density maps.
  DensityMap score;
  SpatialMask mask;
};

/// Each scale votes `density > tau`; a position is flagged when at least half
/// of the scales vote for it, then optionally smoothed by a 3x3 majority.
Detection detect(const BitGrid& variation, const DvrdConfig& config = {});

/// Nearest-neighbour replication of each latent cell into a factor x factor block.
SpatialMask upsample_mask(const SpatialMask& mask, std::size_t factor);

}  // namespace tagwm
