#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tagwm {

/// Summed-area table of an H x W row-major map, padded with a zero row and
/// column: entry (h, w) holds the sum over rows < h and columns < w.
class IntegralImage {
 public:
  IntegralImage(std::span<const double> values, std::size_t height, std::size_t width);

  /// Sum over rows [h0, h1) and columns [w0, w1).
  [[nodiscard]] double sum(std::size_t h0, std::size_t w0, std::size_t h1, std::size_t w1) const noexcept;

 private:
  std::size_t width_;
  std::vector<double> table_;
};

/// Mean over the kernel x kernel window centred at each cell, clipped to the
/// map and normalised by the number of cells actually covered.
std::vector<double> box_mean(std::span<const double> values, std::size_t height, std::size_t width,
                             std::size_t kernel);

}  // namespace tagwm
