#include "tagwm/tensor.hpp"

#include <algorithm>
#include <cmath>

#include "tagwm/error.hpp"

namespace tagwm {

std::string Shape::to_string() const {
  return "(" + std::to_string(channels) + ", " + std::to_string(height) + ", " + std::to_string(width) + ")";
}

namespace {

void require_size(std::size_t expected, std::size_t actual, const char* what) {
  if (expected != actual) {
    throw ShapeError(std::string(what) + ": expected " + std::to_string(expected) + " elements, got " +
                     std::to_string(actual));
  }
}

void require_binary(std::span<const std::uint8_t> v, const char* what) {
  if (std::any_of(v.begin(), v.end(), [](std::uint8_t b) { return b > 1; })) {
    throw ValidationError(std::string(what) + ": values must be 0 or 1");
  }
}

}  // namespace

LatentGrid::LatentGrid(Shape shape, std::vector<float> values) : shape_(shape), values_(std::move(values)) {
  require_size(shape_.size(), values_.size(), "LatentGrid");
  if (std::any_of(values_.begin(), values_.end(), [](float v) { return !std::isfinite(v); })) {
    throw ValidationError("LatentGrid: values must be finite");
  }
}

BitGrid::BitGrid(Shape shape, std::vector<std::uint8_t> bits) : shape_(shape), bits_(std::move(bits)) {
  require_size(shape_.size(), bits_.size(), "BitGrid");
  require_binary(bits_, "BitGrid");
}

std::size_t BitGrid::count_ones() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

SpatialMask::SpatialMask(std::size_t height, std::size_t width, std::vector<std::uint8_t> cells)
    : height_(height), width_(width), cells_(std::move(cells)) {
  require_size(height_ * width_, cells_.size(), "SpatialMask");
  require_binary(cells_, "SpatialMask");
}

SpatialMask::SpatialMask(std::size_t height, std::size_t width)
    : height_(height), width_(width), cells_(height * width, 0) {}

std::size_t SpatialMask::count() const noexcept {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

double SpatialMask::area_ratio() const noexcept {
  return cells_.empty() ? 0.0 : static_cast<double>(count()) / static_cast<double>(cells_.size());
}

DensityMap::DensityMap(std::size_t height, std::size_t width, std::vector<double> values)
    : height_(height), width_(width), values_(std::move(values)) {
  require_size(height_ * width_, values_.size(), "DensityMap");
  if (std::any_of(values_.begin(), values_.end(), [](double v) { return !(v >= 0.0 && v <= 1.0); })) {
    throw ValidationError("DensityMap: values must lie in [0, 1]");
  }
}

}  // namespace tagwm
