#include "tagwm/dmjs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tagwm/error.hpp"
#include "tagwm/normal.hpp"

namespace tagwm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double cdf_ext(double z) {
  if (z == -kInf) return 0.0;
  if (z == kInf) return 1.0;
  return std_normal_cdf(z);
}

// Rounds to float while staying inside [lower, upper).
float narrow_into(double z, const Interval& iv) {
  float f = static_cast<float>(z);
  while (!iv.contains(f)) {
    f = std::nextafter(f, f < iv.lower ? std::numeric_limits<float>::infinity()
                                       : -std::numeric_limits<float>::infinity());
  }
  return f;
}

}  // namespace

void IntervalStrategy::validate() const {
  if (!(theta > 0.0 && theta < 1.0)) throw ParameterError("theta must lie in (0, 1)");
  if (kind != IntervalKind::Three && kind != IntervalKind::Four) throw ParameterError("intervals must be 3 or 4");
}

Boundaries boundaries(const IntervalStrategy& strategy) {
  strategy.validate();
  const double t = strategy.theta;
  const double a = std_normal_quantile(t / 2);
  const double b = strategy.kind == IntervalKind::Four ? std_normal_quantile(0.5 + t / 2) : -a;
  // Phi^-1(1 - t/2) = -Phi^-1(t/2) exactly by symmetry; using -a keeps the
  // three-interval partition symmetric bit for bit.
  return {a, b};
}

IntervalTable::IntervalTable(const IntervalStrategy& strategy) : strategy_(strategy), bounds_(boundaries(strategy)) {
  const double a = bounds_.a;
  const double b = bounds_.b;
  intervals_[slot({0, 0})] = {-kInf, a};
  intervals_[slot({0, 1})] = {a, 0.0};
  if (strategy.kind == IntervalKind::Four) {
    intervals_[slot({1, 0})] = {0.0, b};
    intervals_[slot({1, 1})] = {b, kInf};
  } else {
    intervals_[slot({1, 0})] = {b, kInf};
    intervals_[slot({1, 1})] = {0.0, b};
  }
}

double IntervalTable::mass(BitPair bits) const noexcept {
  const auto& iv = interval(bits);
  return cdf_ext(iv.upper) - cdf_ext(iv.lower);
}

BitPair IntervalTable::classify(double z) const noexcept {
  const std::uint8_t wc = z >= 0.0 ? 1 : 0;
  std::uint8_t wl;
  if (wc == 0) {
    wl = z >= bounds_.a ? 1 : 0;
  } else if (strategy_.kind == IntervalKind::Four) {
    wl = z >= bounds_.b ? 1 : 0;
  } else {
    wl = z < bounds_.b ? 1 : 0;
  }
  return {wc, wl};
}

LatentGrid sample_noise(const BitGrid& copyright, const BitGrid& localization, const IntervalStrategy& strategy,
                        Seed seed) {
  if (copyright.shape() != localization.shape()) {
    throw ShapeError("sample_noise: W_cop " + copyright.shape().to_string() + " and W_loc " +
                     localization.shape().to_string() + " differ");
  }
  const IntervalTable table(strategy);
  std::array<double, 4> lower_cdf{};
  std::array<double, 4> width{};
  for (std::size_t s = 0; s < 4; ++s) {
    const BitPair bits{static_cast<std::uint8_t>(s / 2), static_cast<std::uint8_t>(s % 2)};
    lower_cdf[s] = cdf_ext(table.interval(bits).lower);
    width[s] = cdf_ext(table.interval(bits).upper) - lower_cdf[s];
  }

  Rng rng(seed);
  const std::size_t n = copyright.shape().size();
  std::vector<float> values(n);
  for (std::size_t j = 0; j < n; ++j) {
    const BitPair bits{copyright[j], localization[j]};
    const std::size_t s = IntervalTable::slot(bits);
    const double u = std::clamp(rng.uniform(), kUniformClamp, 1.0 - kUniformClamp);
    const double z = std_normal_quantile(lower_cdf[s] + u * width[s]);
    values[j] = narrow_into(z, table.interval(bits));
  }
  return LatentGrid(copyright.shape(), std::move(values));
}

ReconstructedBits reconstruct_bits(const LatentGrid& noise, const IntervalStrategy& strategy) {
  const IntervalTable table(strategy);
  const std::size_t n = noise.shape().size();
  std::vector<std::uint8_t> wc(n), wl(n);
  for (std::size_t j = 0; j < n; ++j) {
    const BitPair bits = table.classify(noise[j]);
    wc[j] = bits.copyright;
    wl[j] = bits.localization;
  }
  return {BitGrid(noise.shape(), std::move(wc)), BitGrid(noise.shape(), std::move(wl))};
}

std::array<std::size_t, 4> interval_occupancy(const LatentGrid& noise, const IntervalTable& table) {
  std::array<std::size_t, 4> counts{};
  for (float z : noise.values()) ++counts[IntervalTable::slot(table.classify(z))];
  return counts;
}

}  // namespace tagwm
