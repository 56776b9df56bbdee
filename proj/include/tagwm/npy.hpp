#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tagwm/tensor.hpp"

namespace tagwm {

/// The two element types the container supports: `<f4` and `|u1`.
enum class DType { Float32, UInt8 };

/// Raw contents of a NumPy `.npy` (format version 1.0) file: little-endian,
/// C-contiguous, 2-D or 3-D. See docs/array_format.md for the byte layout.
struct NpyArray {
  DType dtype = DType::Float32;
  std::vector<std::size_t> shape;
  std::vector<std::uint8_t> payload;

  [[nodiscard]] std::size_t element_count() const noexcept;
};

/// Header dictionary text including the trailing padding and newline.
std::string npy_header(DType dtype, std::span<const std::size_t> shape);

std::vector<std::uint8_t> encode_npy(const NpyArray& array);
/// Throws FormatError on any malformed or unsupported input.
NpyArray decode_npy(std::span<const std::uint8_t> bytes);

NpyArray read_npy(const std::filesystem::path& path);
void write_npy(const std::filesystem::path& path, const NpyArray& array);

NpyArray to_npy(const LatentGrid& grid);
NpyArray to_npy(const BitGrid& grid);
NpyArray to_npy(const SpatialMask& mask);
NpyArray to_npy(const DensityMap& map);

/// f4 3-D -> LatentGrid, u1 3-D -> BitGrid, u1 2-D -> SpatialMask, f4 2-D -> DensityMap.
using AnyArray = std::variant<LatentGrid, BitGrid, SpatialMask, DensityMap>;
AnyArray from_npy(const NpyArray& array);

AnyArray read_array(const std::filesystem::path& path);
LatentGrid read_latent(const std::filesystem::path& path);
BitGrid read_bits(const std::filesystem::path& path);
SpatialMask read_mask(const std::filesystem::path& path);
DensityMap read_density(const std::filesystem::path& path);

template <typename T>
void write_array(const T& value, const std::filesystem::path& path) {
  write_npy(path, to_npy(value));
}

}  // namespace tagwm
