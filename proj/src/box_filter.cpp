#include "tagwm/box_filter.hpp"

#include <algorithm>

#include "tagwm/error.hpp"

namespace tagwm {

IntegralImage::IntegralImage(std::span<const double> values, std::size_t height, std::size_t width)
    : width_(width), table_((height + 1) * (width + 1), 0.0) {
  if (values.size() != height * width) throw ShapeError("IntegralImage: size mismatch");
  const std::size_t stride = width + 1;
  for (std::size_t h = 0; h < height; ++h) {
    double row = 0.0;
    for (std::size_t w = 0; w < width; ++w) {
      row += values[h * width + w];
      table_[(h + 1) * stride + w + 1] = table_[h * stride + w + 1] + row;
    }
  }
}

double IntegralImage::sum(std::size_t h0, std::size_t w0, std::size_t h1, std::size_t w1) const noexcept {
  const std::size_t stride = width_ + 1;
  return table_[h1 * stride + w1] - table_[h0 * stride + w1] - table_[h1 * stride + w0] + table_[h0 * stride + w0];
}

std::vector<double> box_mean(std::span<const double> values, std::size_t height, std::size_t width,
                             std::size_t kernel) {
  if (kernel == 0 || kernel % 2 == 0) throw ParameterError("box kernel size must be odd and positive");
  const IntegralImage integral(values, height, width);
  const std::size_t r = kernel / 2;
  std::vector<double> out(height * width);
  for (std::size_t h = 0; h < height; ++h) {
    const std::size_t h0 = h >= r ? h - r : 0;
    const std::size_t h1 = std::min(height, h + r + 1);
    for (std::size_t w = 0; w < width; ++w) {
      const std::size_t w0 = w >= r ? w - r : 0;
      const std::size_t w1 = std::min(width, w + r + 1);
      const double cells = static_cast<double>((h1 - h0) * (w1 - w0));
      out[h * width + w] = integral.sum(h0, w0, h1, w1) / cells;
    }
  }
  return out;
}

}  // namespace tagwm
