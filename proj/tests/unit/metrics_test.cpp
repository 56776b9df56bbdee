#include "tagwm/metrics.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "tagwm/error.hpp"
#include "tagwm/masks.hpp"
#include "tagwm/normal.hpp"

namespace tagwm {
namespace {

SpatialMask rows(std::size_t h, std::size_t w, std::size_t from, std::size_t to) {
  std::vector<std::uint8_t> cells(h * w, 0);
  for (std::size_t y = from; y < to; ++y)
    for (std::size_t x = 0; x < w; ++x) cells[y * w + x] = 1;
  return {h, w, std::move(cells)};
}

DensityMap as_score(const SpatialMask& m) {
  return {m.height(), m.width(), std::vector<double>(m.cells().begin(), m.cells().end())};
}

TEST(OverlapTest, SetArithmetic) {
  const auto a = rows(8, 8, 0, 4);
  EXPECT_DOUBLE_EQ(iou(a, a), 1.0);
  EXPECT_DOUBLE_EQ(dice(a, a), 1.0);
  const auto b = rows(8, 8, 4, 8);
  EXPECT_DOUBLE_EQ(iou(a, b), 0.0);
  EXPECT_DOUBLE_EQ(dice(a, b), 0.0);
  const auto c = rows(8, 8, 2, 6);
  EXPECT_DOUBLE_EQ(iou(a, c), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(dice(a, c), 0.5);
  EXPECT_DOUBLE_EQ(iou(SpatialMask(8, 8), SpatialMask(8, 8)), 1.0);
  EXPECT_DOUBLE_EQ(dice(SpatialMask(8, 8), SpatialMask(8, 8)), 1.0);
  EXPECT_DOUBLE_EQ(iou(a, SpatialMask(8, 8)), 0.0);
  EXPECT_THROW(iou(a, SpatialMask(8, 9)), ShapeError);
  EXPECT_THROW(dice(a, SpatialMask(9, 8)), ShapeError);
}

TEST(OverlapTest, DiceIouIdentity) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto a = drop_mask(16, 16, 0.1 + 0.8 * (s % 7) / 7.0, Seed{s});
    const auto b = blob_mask(16, 16, 0.1 + 0.8 * (s % 5) / 5.0, 2, Seed{s + 1000});
    const double j = iou(a, b);
    EXPECT_NEAR(dice(a, b), 2 * j / (1 + j), 1e-12);
  }
}

TEST(AucTest, PerfectInvertedAndTies) {
  const auto truth = rows(8, 8, 0, 3);
  EXPECT_DOUBLE_EQ(auc(as_score(truth), truth), 1.0);
  std::vector<double> inv(64);
  for (std::size_t i = 0; i < 64; ++i) inv[i] = 1.0 - truth[i];
  EXPECT_DOUBLE_EQ(auc(DensityMap(8, 8, inv), truth), 0.0);
  EXPECT_DOUBLE_EQ(auc(DensityMap(8, 8, std::vector<double>(64, 0.3)), truth), 0.5);
}

TEST(AucTest, RandomScoreIsChance) {
  const auto truth = blob_mask(64, 64, 0.4, 6, Seed{1});
  Rng rng(Seed{2});
  std::vector<double> v(4096);
  for (auto& x : v) x = rng.uniform();
  EXPECT_NEAR(auc(DensityMap(64, 64, v), truth), 0.5, 0.02);
}

TEST(AucTest, InvariantUnderMonotoneTransform) {
  const auto truth = blob_mask(32, 32, 0.3, 3, Seed{3});
  Rng rng(Seed{4});
  std::vector<double> v(1024), sq(1024);
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = std::clamp(0.3 * truth[i] + 0.7 * rng.uniform(), 0.0, 1.0);
    sq[i] = v[i] * v[i] * v[i];
  }
  EXPECT_DOUBLE_EQ(auc(DensityMap(32, 32, v), truth), auc(DensityMap(32, 32, sq), truth));
}

TEST(AucTest, SingleClassIsUndefined) {
  EXPECT_THROW(auc(DensityMap(4, 4, std::vector<double>(16, 0.1)), SpatialMask(4, 4)), MetricError);
  EXPECT_THROW(auc(DensityMap(4, 4, std::vector<double>(16, 0.1)), SpatialMask(4, 4, std::vector<std::uint8_t>(16, 1))),
               MetricError);
}

TEST(KsTest, GaussianDrawsPassAtOnePercent) {
  int passes = 0;
  const double crit = ks_critical_value_1pct(16384);
  EXPECT_NEAR(crit, 0.01272, 5e-6);
  for (std::uint64_t t = 0; t < 100; ++t) {
    Rng rng(derive_seed(Seed{5}, t));
    std::vector<double> v(16384);
    for (auto& x : v) x = rng.normal();
    passes += ks_statistic(v) < crit;
  }
  EXPECT_GE(passes, 99);
}

TEST(KsTest, KnownValues) {
  EXPECT_GE(ks_statistic(std::vector<double>(200, 0.0)), 0.5);
  // One point at zero: sup gap is 1/2 on either side.
  EXPECT_DOUBLE_EQ(ks_statistic(std::vector<double>{0.0}), 0.5);
  const std::vector<double> two{-1.0, 1.0};
  EXPECT_NEAR(ks_statistic(two), std::max(std_normal_cdf(-1.0), 0.5 - std_normal_cdf(-1.0)), 1e-15);
  const std::vector<float> f{-1.0f, 1.0f};
  EXPECT_NEAR(ks_statistic(f), ks_statistic(two), 1e-15);
}

TEST(ChiSquareTest, StatisticAndPValue) {
  const std::vector<std::size_t> observed{10, 20, 30, 40};
  const std::vector<double> probs{0.25, 0.25, 0.25, 0.25};
  const auto r = chi_square_gof(observed, probs);
  EXPECT_DOUBLE_EQ(r.statistic, 20.0);
  EXPECT_EQ(r.dof, 3u);
  // Upper tail of chi2(3) at 20; reference value from arbitrary-precision evaluation.
  EXPECT_NEAR(r.p_value, 1.6974243555282632e-4, 1e-15);
  const std::vector<std::size_t> perfect{25, 25, 25, 25};
  EXPECT_DOUBLE_EQ(chi_square_gof(perfect, probs).p_value, 1.0);
  EXPECT_THROW(chi_square_gof(perfect, std::vector<double>{0.5, 0.5}), ParameterError);
}

TEST(BitAccuracyTest, Counts) {
  const auto a = MessageBits::from_bit_string("1100");
  EXPECT_DOUBLE_EQ(bit_accuracy(a, a), 1.0);
  EXPECT_DOUBLE_EQ(bit_accuracy(a, MessageBits::from_bit_string("1010")), 0.5);
  EXPECT_THROW(bit_accuracy(a, MessageBits::from_bit_string("1")), ShapeError);
}

}  // namespace
}  // namespace tagwm
