#include "tagwm/tad.hpp"

#include <gtest/gtest.h>

#include "binomial_oracle.hpp"
#include "tagwm/error.hpp"

namespace tagwm {
namespace {

BitGrid flip_where(const BitGrid& g, const std::vector<std::size_t>& idx) {
  std::vector<std::uint8_t> bits(g.bits().begin(), g.bits().end());
  for (auto i : idx) bits[i] ^= 1;
  return {g.shape(), std::move(bits)};
}

BitGrid random_grid(Shape s, Seed seed) {
  Rng rng(seed);
  std::vector<std::uint8_t> bits(s.size());
  for (auto& b : bits) b = rng.bit();
  return {s, std::move(bits)};
}

TEST(TamperAwareDecodeTest, CleanRoundTrip) {
  const auto m = MessageBits::random(256, Seed{1});
  const auto key = CipherKey::random(Seed{2});
  const auto w = make_copyright_watermark(m, key, kDefaultShape);
  const auto r = tamper_aware_decode(w, SpatialMask(64, 64), key, 256);
  EXPECT_EQ(r.message, m);
  EXPECT_EQ(r.tally.excluded_total(), 0u);
  EXPECT_EQ(r.tally.fallback_count(), 0u);
  for (const auto& v : r.tally.votes) EXPECT_EQ(v.ones + v.zeros, 64u);
}

TEST(TamperAwareDecodeTest, ReplicaCountsWithRemainder) {
  const auto m = MessageBits::random(7, Seed{3});
  const auto key = CipherKey::random(Seed{4});
  const Shape s{1, 3, 5};
  const auto r = tamper_aware_decode(make_copyright_watermark(m, key, s), SpatialMask(3, 5), key, 7);
  EXPECT_EQ(r.message, m);
  for (std::size_t i = 0; i < 7; ++i) EXPECT_EQ(r.tally.votes[i].ones + r.tally.votes[i].zeros, i == 0 ? 3u : 2u);
}

TEST(TamperAwareDecodeTest, ExcludesMaskedPositions) {
  const auto m = MessageBits::from_bit_string("1");
  const auto key = CipherKey::random(Seed{5});
  const Shape s{1, 1, 5};
  const auto w = make_copyright_watermark(m, key, s);
  // Corrupt three of five replicas, then mask exactly those.
  const auto bad = flip_where(w, {0, 1, 2});
  EXPECT_EQ(plain_decode(bad, key, 1).to_bit_string(), "0");
  const SpatialMask mask(1, 5, {1, 1, 1, 0, 0});
  const auto r = tamper_aware_decode(bad, mask, key, 1);
  EXPECT_EQ(r.message.to_bit_string(), "1");
  EXPECT_EQ(r.tally.votes[0].excluded, 3u);
  EXPECT_EQ(r.tally.votes[0].ones, 2u);
  EXPECT_EQ(r.tally.votes[0].zeros, 0u);
  EXPECT_DOUBLE_EQ(r.tally.excluded_fraction(), 0.6);
}

TEST(TamperAwareDecodeTest, TiesDecodeToZero) {
  const auto m = MessageBits::from_bit_string("1");
  const auto key = CipherKey::random(Seed{6});
  const Shape s{1, 1, 4};
  const auto w = flip_where(make_copyright_watermark(m, key, s), {0, 1});
  EXPECT_EQ(plain_decode(w, key, 1).to_bit_string(), "0");
}

TEST(TamperAwareDecodeTest, FullMaskFallsBackToPlain) {
  const auto key = CipherKey::random(Seed{7});
  const auto w = random_grid(kDefaultShape, Seed{8});
  const SpatialMask full(64, 64, std::vector<std::uint8_t>(4096, 1));
  const auto r = tamper_aware_decode(w, full, key, 256);
  EXPECT_EQ(r.message, plain_decode(w, key, 256));
  EXPECT_EQ(r.tally.fallback_count(), 256u);
  EXPECT_DOUBLE_EQ(r.tally.excluded_fraction(), 1.0);
}

TEST(TamperAwareDecodeTest, SingleReplicaIsVerbatim) {
  const Shape s{1, 4, 4};
  const auto key = CipherKey::random(Seed{9});
  const auto w = random_grid(s, Seed{10});
  const auto decoded = plain_decode(w, key, 16);
  const auto expanded = decrypt_watermark(w, key);
  for (std::size_t i = 0; i < 16; ++i) EXPECT_EQ(decoded[i], expanded[i]);
}

TEST(TamperAwareDecodeTest, RandomGridDecodesToChance) {
  const auto key = CipherKey::random(Seed{11});
  const auto m = MessageBits::random(256, Seed{12});
  double total = 0.0;
  for (std::uint64_t t = 0; t < 50; ++t) {
    const auto d = plain_decode(random_grid(kDefaultShape, derive_seed(Seed{13}, t)), key, 256);
    const double acc = decide(m, d, DecisionThresholds::make(256)).bit_accuracy;
    EXPECT_NEAR(acc, 0.5, 0.1);
    total += acc;
  }
  EXPECT_NEAR(total / 50, 0.5, 0.02);
}

TEST(TamperAwareDecodeTest, Errors) {
  const auto key = CipherKey::random(Seed{14});
  const auto w = random_grid(Shape{1, 4, 4}, Seed{15});
  EXPECT_THROW(tamper_aware_decode(w, SpatialMask(4, 5), key, 4), ShapeError);
  EXPECT_THROW(tamper_aware_decode(w, SpatialMask(4, 4), key, 17), CapacityError);
  EXPECT_THROW(tamper_aware_decode(w, SpatialMask(4, 4), key, 0), CapacityError);
}

TEST(ThresholdTest, MatchesPascalOracle) {
  EXPECT_EQ(testing::oracle_threshold(256, 1, 1'000'000), 167u);
  EXPECT_EQ(detection_threshold(256, 1e-6), 167u);
  EXPECT_EQ(detection_threshold(256, 1e-12), 184u);
  EXPECT_EQ(detection_threshold(1, 0.5), 1u);
  for (std::size_t L : {8u, 32u, 64u, 100u, 256u}) {
    for (std::uint64_t den : {4u, 10u, 1000u, 65536u}) {
      const double fpr = 1.0 / static_cast<double>(den);
      const auto expected = testing::oracle_threshold(L, 1, den);
      if (expected > L) {
        EXPECT_THROW(detection_threshold(L, fpr), ParameterError) << L << " " << den;
      } else {
        EXPECT_EQ(detection_threshold(L, fpr), expected) << L << " " << den;
      }
    }
  }
}

TEST(ThresholdTest, SanityWindowAndMonotonicity) {
  const auto k = detection_threshold(256, 1e-6);
  EXPECT_GE(k, 160u);
  EXPECT_LE(k, 175u);
  std::size_t prev = 257;
  for (double fpr : {1e-12, 1e-9, 1e-6, 1e-3, 0.1, 0.4}) {
    const auto kk = detection_threshold(256, fpr);
    EXPECT_LE(kk, prev);
    prev = kk;
  }
  double prev_frac = 1.0;
  for (std::size_t L : {64u, 128u, 256u, 512u}) {
    const double frac = static_cast<double>(detection_threshold(L, 1e-6)) / static_cast<double>(L);
    EXPECT_LT(frac, prev_frac);
    prev_frac = frac;
  }
}

TEST(ThresholdTest, TailBoundsHold) {
  const auto k = detection_threshold(256, 1e-6);
  EXPECT_LE(binomial_upper_tail(256, k), 1e-6);
  EXPECT_GT(binomial_upper_tail(256, k - 1), 1e-6);
  EXPECT_DOUBLE_EQ(binomial_upper_tail(1, 1), 0.5);
  EXPECT_DOUBLE_EQ(binomial_upper_tail(10, 0), 1.0);
  EXPECT_DOUBLE_EQ(binomial_upper_tail(10, 11), 0.0);
}

TEST(ThresholdTest, Errors) {
  EXPECT_THROW(detection_threshold(256, 0.0), ParameterError);
  EXPECT_THROW(detection_threshold(256, 1.0), ParameterError);
  EXPECT_THROW(detection_threshold(8, 1e-6), ParameterError);
}

TEST(DecisionThresholdsTest, TraceUsesUnionBound) {
  const auto t = DecisionThresholds::make(256);
  EXPECT_EQ(t.detect_k, 167u);
  EXPECT_EQ(t.trace_k, 184u);
  EXPECT_GT(t.trace_k, t.detect_k);
  EXPECT_GT(2 * t.detect_k, t.length);
  EXPECT_LE(t.trace_k, t.length);
}

TEST(DecideTest, Examples) {
  const auto t = DecisionThresholds::make(256);
  const auto m = MessageBits::random(256, Seed{16});
  const auto same = decide(m, m, t);
  EXPECT_TRUE(same.detected);
  EXPECT_TRUE(same.traced);
  EXPECT_DOUBLE_EQ(same.bit_accuracy, 1.0);

  std::vector<std::uint8_t> comp(m.bits().begin(), m.bits().end());
  for (auto& b : comp) b ^= 1;
  const auto opposite = decide(m, MessageBits(comp), t);
  EXPECT_FALSE(opposite.detected);
  EXPECT_FALSE(opposite.traced);
  EXPECT_DOUBLE_EQ(opposite.bit_accuracy, 0.0);

  // 154 matches (bit_acc ~0.60) is well below k*.
  std::vector<std::uint8_t> partial(m.bits().begin(), m.bits().end());
  for (std::size_t i = 0; i < 102; ++i) partial[i] ^= 1;
  const auto sixty = decide(m, MessageBits(partial), t);
  EXPECT_EQ(sixty.matches, 154u);
  EXPECT_FALSE(sixty.detected);

  std::vector<std::uint8_t> edge(m.bits().begin(), m.bits().end());
  for (std::size_t i = 0; i < 256 - 167; ++i) edge[i] ^= 1;
  EXPECT_TRUE(decide(m, MessageBits(edge), t).detected);
  EXPECT_FALSE(decide(m, MessageBits(edge), t).traced);

  EXPECT_THROW(decide(m, MessageBits::random(255, Seed{1}), t), ShapeError);
}

}  // namespace
}  // namespace tagwm
