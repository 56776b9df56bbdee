#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "tagwm/rng.hpp"
#include "tagwm/tensor.hpp"

namespace tagwm {

/// Tamper masks at latent resolution. Every generator throws ParameterError
/// for ratio outside (0, 1) or geometry it cannot realise.

/// Complement of one kept axis-aligned rectangle; area ratio within 0.01.
SpatialMask crop_mask(std::size_t height, std::size_t width, double ratio, Seed seed);

/// Exactly round(ratio * H * W) positions, chosen uniformly at random.
SpatialMask drop_mask(std::size_t height, std::size_t width, double ratio, Seed seed);

/// `count` disjoint rectangles covering `ratio` of the plane in total.
SpatialMask logo_mask(std::size_t height, std::size_t width, std::size_t count, double ratio, Seed seed);

/// Gaussian noise smoothed by three box passes of radius `smoothness`,
/// thresholded at the quantile that selects round(ratio * H * W) cells.
SpatialMask blob_mask(std::size_t height, std::size_t width, double ratio, std::size_t smoothness, Seed seed);

enum class TamperKind { None, Crop, Drop, Logo, Blob, Full };

std::string to_string(TamperKind kind);
/// Throws ParameterError on unknown names.
TamperKind parse_tamper_kind(std::string_view name);

struct TamperSpec {
  TamperKind kind = TamperKind::None;
  double ratio = 0.0;
  std::size_t logo_count = 3;
  std::size_t smoothness = 6;
};

/// Dispatches on spec.kind. None gives an empty mask, Full an all-ones mask.
SpatialMask make_tamper_mask(const TamperSpec& spec, std::size_t height, std::size_t width, Seed seed);

}  // namespace tagwm
