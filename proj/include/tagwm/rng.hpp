#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace tagwm {

/// Explicit seed for every stochastic operation.
struct Seed {
  std::uint64_t value = 0;

  constexpr Seed() = default;
  constexpr explicit Seed(std::uint64_t v) : value(v) {}
  friend constexpr bool operator==(Seed, Seed) = default;
};

/// One step of SplitMix64 (Steele, Lea, Flood 2014). Advances `state`.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// Independent child seed for a numbered sub-stream.
Seed derive_seed(Seed base, std::uint64_t stream) noexcept;

/// xoshiro256** 1.0 (Blackman & Vigna), state filled from SplitMix64(seed).
/// The output sequence is fully determined by the seed on every platform.
class Rng {
 public:
  explicit Rng(Seed seed) noexcept;

  std::uint64_t next() noexcept;
  /// 53-bit uniform in [0, 1).
  double uniform() noexcept;
  /// Uniform in the open interval (0, 1); never 0 or 1.
  double open_uniform() noexcept;
  /// Standard normal draw by inversion of one open uniform.
  double normal() noexcept;
  /// Uniform integer in [0, n), n > 0, unbiased.
  std::uint64_t below(std::uint64_t n) noexcept;
  std::uint8_t bit() noexcept { return static_cast<std::uint8_t>(next() >> 63); }

 private:
  std::array<std::uint64_t, 4> s_{};
};

std::vector<double> seeded_uniforms(Seed seed, std::size_t n);

}  // namespace tagwm
