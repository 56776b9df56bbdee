#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tagwm {

/// Extent of a latent tensor in C-order (channel, row, column).
struct Shape {
  std::size_t channels = 0;
  std::size_t height = 0;
  std::size_t width = 0;

  [[nodiscard]] constexpr std::size_t size() const noexcept { return channels * height * width; }
  [[nodiscard]] constexpr std::size_t plane() const noexcept { return height * width; }
  [[nodiscard]] constexpr std::size_t index(std::size_t c, std::size_t h, std::size_t w) const noexcept {
    return (c * height + h) * width + w;
  }
  [[nodiscard]] std::string to_string() const;

  friend constexpr bool operator==(const Shape&, const Shape&) = default;
};

/// Stable Diffusion latent extent for 512x512 images.
inline constexpr Shape kDefaultShape{4, 64, 64};

/// Real-valued C x H x W grid: sampled watermark noise or its reconstruction.
class LatentGrid {
 public:
  LatentGrid() = default;
  /// Throws ShapeError on size mismatch and ValidationError on non-finite values.
  LatentGrid(Shape shape, std::vector<float> values);

  [[nodiscard]] const Shape& shape() const noexcept { return shape_; }
  [[nodiscard]] std::span<const float> values() const noexcept { return values_; }
  [[nodiscard]] float operator[](std::size_t i) const noexcept { return values_[i]; }
  [[nodiscard]] float at(std::size_t c, std::size_t h, std::size_t w) const {
    return values_.at(shape_.index(c, h, w));
  }

  friend bool operator==(const LatentGrid&, const LatentGrid&) = default;

 private:
  Shape shape_;
  std::vector<float> values_;
};

/// Binary C x H x W grid (watermarks, their reconstructions, XOR maps).
class BitGrid {
 public:
  BitGrid() = default;
  BitGrid(Shape shape, std::vector<std::uint8_t> bits);

  [[nodiscard]] const Shape& shape() const noexcept { return shape_; }
  [[nodiscard]] std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  [[nodiscard]] std::uint8_t operator[](std::size_t i) const noexcept { return bits_[i]; }
  [[nodiscard]] std::uint8_t at(std::size_t c, std::size_t h, std::size_t w) const {
    return bits_.at(shape_.index(c, h, w));
  }
  [[nodiscard]] std::size_t count_ones() const noexcept;

  friend bool operator==(const BitGrid&, const BitGrid&) = default;

 private:
  Shape shape_;
  std::vector<std::uint8_t> bits_;
};

/// Binary H x W map at latent resolution; 1 marks a tampered position.
class SpatialMask {
 public:
  SpatialMask() = default;
  SpatialMask(std::size_t height, std::size_t width, std::vector<std::uint8_t> cells);
  /// All-zero mask.
  SpatialMask(std::size_t height, std::size_t width);

  [[nodiscard]] std::size_t height() const noexcept { return height_; }
  [[nodiscard]] std::size_t width() const noexcept { return width_; }
  [[nodiscard]] std::size_t size() const noexcept { return cells_.size(); }
  [[nodiscard]] std::span<const std::uint8_t> cells() const noexcept { return cells_; }
  [[nodiscard]] std::uint8_t operator[](std::size_t i) const noexcept { return cells_[i]; }
  [[nodiscard]] std::uint8_t at(std::size_t h, std::size_t w) const { return cells_.at(h * width_ + w); }
  [[nodiscard]] std::size_t count() const noexcept;
  [[nodiscard]] double area_ratio() const noexcept;

  friend bool operator==(const SpatialMask&, const SpatialMask&) = default;

 private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::vector<std::uint8_t> cells_;
};

/// H x W score surface with values in [0, 1].
class DensityMap {
 public:
  DensityMap() = default;
  DensityMap(std::size_t height, std::size_t width, std::vector<double> values);

  [[nodiscard]] std::size_t height() const noexcept { return height_; }
  [[nodiscard]] std::size_t width() const noexcept { return width_; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }
  [[nodiscard]] double at(std::size_t h, std::size_t w) const { return values_.at(h * width_ + w); }

  friend bool operator==(const DensityMap&, const DensityMap&) = default;

 private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::vector<double> values_;
};

}  // namespace tagwm
