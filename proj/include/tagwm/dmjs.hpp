#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "tagwm/rng.hpp"
#include "tagwm/tensor.hpp"

namespace tagwm {

enum class IntervalKind : int { Three = 3, Four = 4 };

/// How bit pairs are laid out over the real line, and the template theta.
struct IntervalStrategy {
  IntervalKind kind = IntervalKind::Three;
  double theta = 0.5;

  /// Throws ParameterError unless 0 < theta < 1.
  void validate() const;
  friend bool operator==(const IntervalStrategy&, const IntervalStrategy&) = default;
};

/// Inner boundaries a < 0 < b of the partition.
struct Boundaries {
  double a = 0.0;
  double b = 0.0;
};

/// a = Phi^-1(theta/2); b = Phi^-1(1/2 + theta/2) for four intervals,
/// Phi^-1(1 - theta/2) for three.
Boundaries boundaries(const IntervalStrategy& strategy);

/// Half-open [lower, upper) over the extended reals.
struct Interval {
  double lower = 0.0;
  double upper = 0.0;

  [[nodiscard]] constexpr bool contains(double z) const noexcept { return z >= lower && z < upper; }
};

struct BitPair {
  std::uint8_t copyright = 0;
  std::uint8_t localization = 0;

  friend constexpr bool operator==(BitPair, BitPair) = default;
};

/// Bit pair -> sampling interval map.
///
///   (w_c, w_l)   four intervals   three intervals
///   (0, 0)       (-inf, a)        (-inf, a)
///   (0, 1)       [a, 0)           [a, 0)
///   (1, 0)       [0, b)           [b, +inf)
///   (1, 1)       [b, +inf)        [0, b)
///
/// The four intervals partition the reals, and the standard normal mass of
/// interval(w_c, w_l) is (1/2) theta^(1-w_l) (1-theta)^w_l.
class IntervalTable {
 public:
  explicit IntervalTable(const IntervalStrategy& strategy);

  [[nodiscard]] const IntervalStrategy& strategy() const noexcept { return strategy_; }
  [[nodiscard]] const Boundaries& bounds() const noexcept { return bounds_; }
  [[nodiscard]] const Interval& interval(BitPair bits) const noexcept { return intervals_[slot(bits)]; }
  /// Standard normal probability of interval(bits), computed from the CDF.
  [[nodiscard]] double mass(BitPair bits) const noexcept;
  /// Unique bit pair whose interval contains z.
  [[nodiscard]] BitPair classify(double z) const noexcept;

  static constexpr std::size_t slot(BitPair bits) noexcept {
    return static_cast<std::size_t>(bits.copyright) * 2 + bits.localization;
  }

 private:
  IntervalStrategy strategy_;
  Boundaries bounds_;
  std::array<Interval, 4> intervals_{};
};

/// U is clamped to [eps, 1 - eps] before inversion.
inline constexpr double kUniformClamp = 1e-12;

/// Draws each element from N(0,1) truncated to interval(w_c, w_l) by
/// inverse-CDF sampling. W_loc must have been generated with the same theta
/// as the strategy; that cannot be checked here. Throws ShapeError on
/// mismatched grids.
LatentGrid sample_noise(const BitGrid& copyright, const BitGrid& localization, const IntervalStrategy& strategy,
                        Seed seed);

struct ReconstructedBits {
  BitGrid copyright;
  BitGrid localization;
};

/// Interval lookup per element; the exact inverse of sample_noise.
ReconstructedBits reconstruct_bits(const LatentGrid& noise, const IntervalStrategy& strategy);

/// Element counts per interval slot (see IntervalTable::slot).
std::array<std::size_t, 4> interval_occupancy(const LatentGrid& noise, const IntervalTable& table);

}  // namespace tagwm
