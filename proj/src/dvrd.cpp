#include "tagwm/dvrd.hpp"

#include <algorithm>

#include "tagwm/box_filter.hpp"
#include "tagwm/error.hpp"

namespace tagwm {

namespace {

std::vector<double> channel_mean(const BitGrid& grid) {
  const Shape& s = grid.shape();
  const std::size_t plane = s.plane();
  std::vector<double> out(plane, 0.0);
  for (std::size_t c = 0; c < s.channels; ++c) {
    for (std::size_t i = 0; i < plane; ++i) out[i] += grid[c * plane + i];
  }
  for (auto& v : out) v /= static_cast<double>(s.channels);
  return out;
}

std::vector<double> clamp_unit(std::vector<double> v) {
  for (auto& x : v) x = std::clamp(x, 0.0, 1.0);
  return v;
}

std::vector<std::uint8_t> majority3x3(const std::vector<std::uint8_t>& cells, std::size_t height,
                                      std::size_t width) {
  std::vector<double> asreal(cells.begin(), cells.end());
  const auto frac = box_mean(asreal, height, width, 3);
  std::vector<std::uint8_t> out(cells.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = frac[i] > 0.5 ? 1 : 0;
  return out;
}

}  // namespace

std::string to_string(Smoothing smoothing) { return smoothing == Smoothing::None ? "none" : "majority3x3"; }

Smoothing parse_smoothing(std::string_view name) {
  if (name == "none") return Smoothing::None;
  if (name == "majority3x3") return Smoothing::Majority3x3;
  throw ParameterError("unknown smoothing '" + std::string(name) + "'");
}

void DvrdConfig::validate() const {
  if (kernel_sizes.empty()) throw ParameterError("DVRD needs at least one kernel size");
  for (auto k : kernel_sizes) {
    if (k == 0 || k % 2 == 0) throw ParameterError("DVRD kernel sizes must be odd and positive");
  }
  if (!(tau > 0.0 && tau < 1.0)) throw ParameterError("DVRD threshold must lie in (0, 1)");
}

bool DvrdConfig::separates(double theta, double clean_error) const noexcept {
  return tau > clean_error && tau < 2.0 * theta * (1.0 - theta);
}

BitGrid xor_map(const BitGrid& reference, const BitGrid& observed) {
  if (reference.shape() != observed.shape()) {
    throw ShapeError("xor_map: shapes " + reference.shape().to_string() + " and " + observed.shape().to_string() +
                     " differ");
  }
  std::vector<std::uint8_t> out(reference.shape().size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = reference[j] ^ observed[j];
  return BitGrid(reference.shape(), std::move(out));
}

DensityMap density_map(const BitGrid& variation, std::size_t kernel) {
  const Shape& s = variation.shape();
  return DensityMap(s.height, s.width, clamp_unit(box_mean(channel_mean(variation), s.height, s.width, kernel)));
}

Detection detect(const BitGrid& variation, const DvrdConfig& config) {
  config.validate();
  const Shape& s = variation.shape();
  const std::size_t plane = s.plane();
  const auto mean = channel_mean(variation);

  std::vector<double> score(plane, 0.0);
  std::vector<std::size_t> votes(plane, 0);
  for (auto kernel : config.kernel_sizes) {
    const auto density = box_mean(mean, s.height, s.width, kernel);
    for (std::size_t i = 0; i < plane; ++i) {
      score[i] += density[i];
      votes[i] += density[i] > config.tau ? 1 : 0;
    }
  }
  const std::size_t scales = config.kernel_sizes.size();
  for (auto& v : score) v /= static_cast<double>(scales);

  std::vector<std::uint8_t> cells(plane);
  for (std::size_t i = 0; i < plane; ++i) cells[i] = 2 * votes[i] >= scales ? 1 : 0;
  if (config.smoothing == Smoothing::Majority3x3) cells = majority3x3(cells, s.height, s.width);

  return {DensityMap(s.height, s.width, clamp_unit(std::move(score))), SpatialMask(s.height, s.width, std::move(cells))};
}

SpatialMask upsample_mask(const SpatialMask& mask, std::size_t factor) {
  if (factor == 0) throw ParameterError("upsample factor must be at least 1");
  const std::size_t h = mask.height() * factor;
  const std::size_t w = mask.width() * factor;
  std::vector<std::uint8_t> cells(h * w);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) cells[y * w + x] = mask.at(y / factor, x / factor);
  }
  return SpatialMask(h, w, std::move(cells));
}

}  // namespace tagwm
