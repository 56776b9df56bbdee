#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tagwm/tensor.hpp"
#include "tagwm/watermark.hpp"

namespace tagwm {

/// Votes for one message bit. ones + zeros + excluded equals its replica count.
struct BitVote {
  std::size_t ones = 0;
  std::size_t zeros = 0;
  std::size_t excluded = 0;
  /// Every replica was masked; the bit was decided over all replicas instead.
  bool fallback = false;
};

struct VoteTally {
  std::vector<BitVote> votes;

  [[nodiscard]] std::size_t excluded_total() const noexcept;
  [[nodiscard]] std::size_t fallback_count() const noexcept;
  /// Excluded replicas over all replicas.
  [[nodiscard]] double excluded_fraction() const noexcept;
};

struct DecodeResult {
  MessageBits message;
  VoteTally tally;
};

/// Decrypts W_cop, then majority-votes each message bit over replicas at
/// positions where `mask` is 0 (broadcast over channels). Ties decode to 0.
/// A bit whose replicas are all masked is voted over every replica.
DecodeResult tamper_aware_decode(const BitGrid& copyright, const SpatialMask& mask, const CipherKey& key,
                                 std::size_t length);

/// Majority vote over every replica.
MessageBits plain_decode(const BitGrid& copyright, const CipherKey& key, std::size_t length);

/// Smallest k with P[Binomial(L, 1/2) >= k] <= fpr, evaluated exactly with
/// big-integer binomial sums against the exact binary value of `fpr`.
/// Throws ParameterError unless 0 < fpr < 1, and when only k > L would do.
std::size_t detection_threshold(std::size_t length, double fpr);

/// Exact P[Binomial(L, 1/2) >= k], rounded to double.
double binomial_upper_tail(std::size_t length, std::size_t k);

struct DecisionThresholds {
  std::size_t length = 0;
  double fpr_target = 1e-6;
  std::uint64_t users = 1'000'000;
  std::size_t detect_k = 0;
  std::size_t trace_k = 0;

  /// Detection at fpr; tracing at fpr / users (union bound over the user set).
  static DecisionThresholds make(std::size_t length, double fpr = 1e-6, std::uint64_t users = 1'000'000);
};

struct Decision {
  bool detected = false;
  bool traced = false;
  double bit_accuracy = 0.0;
  std::size_t matches = 0;
};

/// Throws ShapeError when the messages differ in length.
Decision decide(const MessageBits& truth, const MessageBits& decoded, const DecisionThresholds& thresholds);

}  // namespace tagwm
