#include "tagwm/masks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "tagwm/box_filter.hpp"
#include "tagwm/error.hpp"

namespace tagwm {

namespace {

void require_ratio(double ratio) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw ParameterError("tamper ratio must lie in (0, 1)");
}

void require_plane(std::size_t height, std::size_t width) {
  if (height == 0 || width == 0) throw ParameterError("mask plane must be non-empty");
}

struct Rect {
  std::size_t top = 0, left = 0, height = 0, width = 0;
  [[nodiscard]] std::size_t area() const noexcept { return height * width; }
};

void fill(std::vector<std::uint8_t>& cells, std::size_t plane_width, const Rect& r, std::uint8_t value) {
  for (std::size_t h = r.top; h < r.top + r.height; ++h) {
    std::fill_n(cells.begin() + static_cast<std::ptrdiff_t>(h * plane_width + r.left), r.width, value);
  }
}

// Height/width pairs fitting inside max_h x max_w whose area is closest to
// `area`; prefers aspect ratios within [1/3, 3].
std::vector<std::pair<std::size_t, std::size_t>> rect_candidates(double area, std::size_t max_h, std::size_t max_w,
                                                                 double slack) {
  std::vector<std::pair<std::size_t, std::size_t>> good, any;
  for (std::size_t h = 1; h <= max_h; ++h) {
    const auto w = static_cast<std::size_t>(std::clamp(std::llround(area / static_cast<double>(h)), 1LL,
                                                       static_cast<long long>(max_w)));
    if (std::abs(static_cast<double>(h * w) - area) > slack) continue;
    any.emplace_back(h, w);
    const double aspect = static_cast<double>(h) / static_cast<double>(w);
    if (aspect >= 1.0 / 3.0 && aspect <= 3.0) good.emplace_back(h, w);
  }
  return good.empty() ? any : good;
}

// Guillotine partition of `region` into `count` cells of near-equal area.
void partition(const Rect& region, std::size_t count, Rng& rng, std::vector<Rect>& leaves) {
  if (count == 1) {
    leaves.push_back(region);
    return;
  }
  const std::size_t first = count / 2 + (count % 2 == 1 && rng.bit() ? 1 : 0);
  const std::size_t second = count - first;
  const bool split_rows = region.height > region.width || (region.height == region.width && rng.bit());
  const std::size_t extent = split_rows ? region.height : region.width;
  const auto cut = static_cast<std::size_t>(
      std::llround(static_cast<double>(extent) * static_cast<double>(first) / static_cast<double>(count)));
  if (cut == 0 || cut >= extent) throw ParameterError("logo_mask: too many logos for the plane");
  Rect a = region, b = region;
  if (split_rows) {
    a.height = cut;
    b.top += cut;
    b.height -= cut;
  } else {
    a.width = cut;
    b.left += cut;
    b.width -= cut;
  }
  partition(a, first, rng, leaves);
  partition(b, second, rng, leaves);
}

}  // namespace

SpatialMask crop_mask(std::size_t height, std::size_t width, double ratio, Seed seed) {
  require_plane(height, width);
  require_ratio(ratio);
  const double plane = static_cast<double>(height * width);
  const double keep = (1.0 - ratio) * plane;
  const auto candidates = rect_candidates(keep, height, width, 0.01 * plane);
  if (candidates.empty()) throw ParameterError("crop_mask: no rectangle realises the requested ratio");
  Rng rng(seed);
  const auto [kh, kw] = candidates[rng.below(candidates.size())];
  const Rect kept{rng.below(height - kh + 1), rng.below(width - kw + 1), kh, kw};
  std::vector<std::uint8_t> cells(height * width, 1);
  fill(cells, width, kept, 0);
  return SpatialMask(height, width, std::move(cells));
}

SpatialMask drop_mask(std::size_t height, std::size_t width, double ratio, Seed seed) {
  require_plane(height, width);
  require_ratio(ratio);
  const std::size_t n = height * width;
  const auto k = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(n)));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  // Partial Fisher-Yates: the first k entries are a uniform random k-subset.
  for (std::size_t i = 0; i < k; ++i) std::swap(order[i], order[i + rng.below(n - i)]);
  std::vector<std::uint8_t> cells(n, 0);
  for (std::size_t i = 0; i < k; ++i) cells[order[i]] = 1;
  return SpatialMask(height, width, std::move(cells));
}

SpatialMask logo_mask(std::size_t height, std::size_t width, std::size_t count, double ratio, Seed seed) {
  require_plane(height, width);
  require_ratio(ratio);
  if (count == 0) throw ParameterError("logo_mask: count must be at least 1");
  if (count > height * width) throw ParameterError("logo_mask: more logos than positions");

  Rng rng(seed);
  std::vector<Rect> leaves;
  partition(Rect{0, 0, height, width}, count, rng, leaves);
  // Random order so rounding carry does not always land on the same logo.
  for (std::size_t i = leaves.size(); i > 1; --i) std::swap(leaves[i - 1], leaves[rng.below(i)]);

  const double plane = static_cast<double>(height * width);
  double remaining = ratio * plane;
  std::vector<std::uint8_t> cells(height * width, 0);
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    const Rect& leaf = leaves[i];
    const double target = remaining / static_cast<double>(leaves.size() - i);
    if (target > static_cast<double>(leaf.area()) + 0.5) {
      throw ParameterError("logo_mask: ratio too large for " + std::to_string(count) + " disjoint logos");
    }
    auto candidates = rect_candidates(target, leaf.height, leaf.width, std::max(1.0, 0.05 * target));
    if (candidates.empty()) candidates = rect_candidates(target, leaf.height, leaf.width, std::max(1.0, 0.25 * target));
    if (candidates.empty()) throw ParameterError("logo_mask: logo does not fit its slot");
    const auto [lh, lw] = candidates[rng.below(candidates.size())];
    const Rect logo{leaf.top + rng.below(leaf.height - lh + 1), leaf.left + rng.below(leaf.width - lw + 1), lh, lw};
    fill(cells, width, logo, 1);
    remaining -= static_cast<double>(logo.area());
  }
  SpatialMask mask(height, width, std::move(cells));
  if (std::abs(mask.area_ratio() - ratio) > 0.02) {
    throw ParameterError("logo_mask: cannot realise ratio " + std::to_string(ratio) + " with " +
                         std::to_string(count) + " logos");
  }
  return mask;
}

SpatialMask blob_mask(std::size_t height, std::size_t width, double ratio, std::size_t smoothness, Seed seed) {
  require_plane(height, width);
  require_ratio(ratio);
  const std::size_t n = height * width;
  Rng rng(seed);
  std::vector<double> field(n);
  for (auto& v : field) v = rng.normal();
  if (smoothness > 0) {
    for (int pass = 0; pass < 3; ++pass) field = box_mean(field, height, width, 2 * smoothness + 1);
  }
  const auto k = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(n)));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                   [&](std::size_t i, std::size_t j) { return field[i] > field[j] || (field[i] == field[j] && i < j); });
  std::vector<std::uint8_t> cells(n, 0);
  for (std::size_t i = 0; i < k; ++i) cells[order[i]] = 1;
  return SpatialMask(height, width, std::move(cells));
}

std::string to_string(TamperKind kind) {
  switch (kind) {
    case TamperKind::None: return "none";
    case TamperKind::Crop: return "crop";
    case TamperKind::Drop: return "drop";
    case TamperKind::Logo: return "logo";
    case TamperKind::Blob: return "blob";
    case TamperKind::Full: return "full";
  }
  return "none";
}

TamperKind parse_tamper_kind(std::string_view name) {
  for (auto kind : {TamperKind::None, TamperKind::Crop, TamperKind::Drop, TamperKind::Logo, TamperKind::Blob,
                    TamperKind::Full}) {
    if (name == to_string(kind)) return kind;
  }
  throw ParameterError("unknown tamper kind '" + std::string(name) + "'");
}

SpatialMask make_tamper_mask(const TamperSpec& spec, std::size_t height, std::size_t width, Seed seed) {
  switch (spec.kind) {
    case TamperKind::None: return SpatialMask(height, width);
    case TamperKind::Full: return SpatialMask(height, width, std::vector<std::uint8_t>(height * width, 1));
    case TamperKind::Crop: return crop_mask(height, width, spec.ratio, seed);
    case TamperKind::Drop: return drop_mask(height, width, spec.ratio, seed);
    case TamperKind::Logo: return logo_mask(height, width, spec.logo_count, spec.ratio, seed);
    case TamperKind::Blob: return blob_mask(height, width, spec.ratio, spec.smoothness, seed);
  }
  throw ParameterError("unknown tamper kind");
}

}  // namespace tagwm
