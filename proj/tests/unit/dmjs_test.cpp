#include "tagwm/dmjs.hpp"

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "tagwm/error.hpp"
#include "tagwm/metrics.hpp"
#include "tagwm/normal.hpp"
#include "tagwm/watermark.hpp"

namespace tagwm {
namespace {

constexpr IntervalKind kKinds[] = {IntervalKind::Three, IntervalKind::Four};
constexpr BitPair kPairs[] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(BoundariesTest, ReferenceValues) {
  for (auto kind : kKinds) {
    const auto b = boundaries({kind, 0.5});
    EXPECT_NEAR(b.a, -0.674489750196081743, 1e-12);
    EXPECT_NEAR(b.b, 0.674489750196081743, 1e-12);
  }
  EXPECT_NEAR(boundaries({IntervalKind::Three, 0.3}).a, -1.0364333894937895797, 1e-12);
  EXPECT_NEAR(boundaries({IntervalKind::Three, 0.3}).b, 1.0364333894937895797, 1e-12);
  EXPECT_NEAR(boundaries({IntervalKind::Four, 0.3}).b, 0.38532046640756762381, 1e-12);
  EXPECT_NEAR(boundaries({IntervalKind::Four, 0.7}).a, -0.38532046640756762381, 1e-12);
  EXPECT_NEAR(boundaries({IntervalKind::Four, 0.7}).b, 1.0364333894937895797, 1e-12);
  EXPECT_NEAR(boundaries({IntervalKind::Three, 0.7}).b, 0.38532046640756762381, 1e-12);
}

TEST(BoundariesTest, RejectsBadTheta) {
  EXPECT_THROW(boundaries({IntervalKind::Three, 0.0}), ParameterError);
  EXPECT_THROW(boundaries({IntervalKind::Four, 1.2}), ParameterError);
}

TEST(IntervalTableTest, RowOrder) {
  const IntervalTable three({IntervalKind::Three, 0.5});
  const double a = three.bounds().a, b = three.bounds().b;
  EXPECT_EQ(three.interval({0, 0}).lower, -kInf);
  EXPECT_EQ(three.interval({0, 0}).upper, a);
  EXPECT_EQ(three.interval({0, 1}).upper, 0.0);
  EXPECT_EQ(three.interval({1, 0}).lower, b);
  EXPECT_EQ(three.interval({1, 0}).upper, kInf);
  EXPECT_EQ(three.interval({1, 1}).lower, 0.0);
  EXPECT_EQ(three.interval({1, 1}).upper, b);

  const IntervalTable four({IntervalKind::Four, 0.3});
  EXPECT_EQ(four.interval({1, 0}).lower, 0.0);
  EXPECT_EQ(four.interval({1, 0}).upper, four.bounds().b);
  EXPECT_EQ(four.interval({1, 1}).lower, four.bounds().b);
  EXPECT_EQ(four.interval({1, 1}).upper, kInf);
}

TEST(IntervalTableTest, ClassifiesExamples) {
  const IntervalTable t({IntervalKind::Three, 0.5});
  EXPECT_EQ(t.classify(-0.1), (BitPair{0, 1}));
  EXPECT_EQ(t.classify(0.9), (BitPair{1, 0}));
  EXPECT_EQ(t.classify(0.0), (BitPair{1, 1}));
  EXPECT_EQ(t.classify(-5.0), (BitPair{0, 0}));
}

TEST(IntervalTableTest, MassesFactorise) {
  for (auto kind : kKinds) {
    for (double theta : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const IntervalTable t({kind, theta});
      double total = 0.0;
      for (auto bits : kPairs) {
        const double expected = 0.5 * (bits.localization ? 1.0 - theta : theta);
        EXPECT_NEAR(t.mass(bits), expected, 1e-14);
        total += t.mass(bits);
      }
      EXPECT_NEAR(total, 1.0, 1e-14);
    }
  }
}

TEST(IntervalTableTest, PartitionAndSignBit) {
  Rng rng(Seed{99});
  for (auto kind : kKinds) {
    for (double theta : {0.3, 0.5, 0.7}) {
      const IntervalTable t({kind, theta});
      for (int i = 0; i < 20000; ++i) {
        const double z = 6.0 * (rng.uniform() - 0.5);
        int hits = 0;
        for (auto bits : kPairs) hits += t.interval(bits).contains(z);
        ASSERT_EQ(hits, 1) << z;
        const auto bits = t.classify(z);
        ASSERT_TRUE(t.interval(bits).contains(z));
        ASSERT_EQ(bits.copyright, z >= 0.0 ? 1 : 0);
      }
    }
  }
}

TEST(IntervalTableTest, MixtureRecoversStandardNormalDensity) {
  // sum_{pairs} P(pair) * phi(z) 1[z in I(pair)] / mass(I(pair)) == phi(z).
  for (auto kind : kKinds) {
    for (double theta : {0.3, 0.5, 0.7}) {
      const IntervalTable t({kind, theta});
      for (double z = -5.0; z <= 5.0; z += 0.01) {
        double mix = 0.0;
        for (auto bits : kPairs) {
          const double prior = 0.5 * (bits.localization ? 1.0 - theta : theta);
          if (t.interval(bits).contains(z)) mix += prior * std_normal_pdf(z) / t.mass(bits);
        }
        ASSERT_NEAR(mix, std_normal_pdf(z), 1e-9) << z;
      }
    }
  }
}

BitGrid random_bits(Shape shape, Seed seed) {
  Rng rng(seed);
  std::vector<std::uint8_t> bits(shape.size());
  for (auto& b : bits) b = rng.bit();
  return {shape, std::move(bits)};
}

TEST(SampleNoiseTest, StaysInsideIntervals) {
  const Shape shape{2, 16, 16};
  const IntervalStrategy s{IntervalKind::Three, 0.5};
  const IntervalTable t(s);
  const auto wc = random_bits(shape, Seed{1});
  const auto wl = make_localization_watermark({Seed{2}, 0.5}, shape);
  const auto z = sample_noise(wc, wl, s, Seed{3});
  for (std::size_t i = 0; i < shape.size(); ++i) {
    ASSERT_TRUE(t.interval({wc[i], wl[i]}).contains(z[i])) << i;
    if (wc[i] == 0 && wl[i] == 0) ASSERT_LT(z[i], t.bounds().a);
  }
}

TEST(SampleNoiseTest, ExactRoundTrip) {
  int config = 0;
  for (auto kind : kKinds) {
    for (double theta : {0.3, 0.5, 0.7}) {
      for (Shape shape : {Shape{4, 64, 64}, Shape{1, 3, 5}, Shape{3, 7, 2}}) {
        const IntervalStrategy s{kind, theta};
        const auto wc = random_bits(shape, derive_seed(Seed{4}, config));
        const auto wl = make_localization_watermark({derive_seed(Seed{5}, config), theta}, shape);
        const auto rec = reconstruct_bits(sample_noise(wc, wl, s, derive_seed(Seed{6}, config)), s);
        EXPECT_EQ(rec.copyright, wc);
        EXPECT_EQ(rec.localization, wl);
        ++config;
      }
    }
  }
}

TEST(SampleNoiseTest, DeterministicPerSeed) {
  const IntervalStrategy s{};
  const auto wc = random_bits(kDefaultShape, Seed{7});
  const auto wl = make_localization_watermark({Seed{8}, 0.5}, kDefaultShape);
  EXPECT_EQ(sample_noise(wc, wl, s, Seed{9}), sample_noise(wc, wl, s, Seed{9}));
  EXPECT_NE(sample_noise(wc, wl, s, Seed{9}), sample_noise(wc, wl, s, Seed{10}));
}

TEST(SampleNoiseTest, ShapeMismatch) {
  const auto wc = random_bits(Shape{1, 4, 4}, Seed{1});
  const auto wl = random_bits(Shape{1, 4, 5}, Seed{2});
  EXPECT_THROW(sample_noise(wc, wl, {}, Seed{3}), ShapeError);
}

TEST(SampleNoiseTest, MarginalIsStandardNormal) {
  for (auto kind : kKinds) {
    const IntervalStrategy s{kind, 0.5};
    const auto m = MessageBits::random(256, Seed{11});
    const auto wc = make_copyright_watermark(m, CipherKey::random(Seed{12}), kDefaultShape);
    const auto wl = make_localization_watermark({Seed{13}, 0.5}, kDefaultShape);
    const auto z = sample_noise(wc, wl, s, Seed{14});
    EXPECT_LT(ks_statistic(z.values()), ks_critical_value_1pct(z.values().size()));
    EXPECT_NEAR(ks_critical_value_1pct(16384), 0.01272, 5e-6);
  }
}

TEST(SampleNoiseTest, OccupancyMatchesMasses) {
  const IntervalStrategy s{IntervalKind::Three, 0.3};
  const IntervalTable t(s);
  const auto wc = random_bits(kDefaultShape, Seed{15});
  const auto wl = make_localization_watermark({Seed{16}, 0.3}, kDefaultShape);
  const auto counts = interval_occupancy(sample_noise(wc, wl, s, Seed{17}), t);
  const std::array<double, 4> probs{0.15, 0.35, 0.15, 0.35};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(t.mass(kPairs[i]), probs[i], 1e-14);
  EXPECT_GT(chi_square_gof(counts, probs).p_value, 0.01);
}

TEST(SampleNoiseTest, ExtremeThetaStaysFinite) {
  const IntervalStrategy s{IntervalKind::Four, 1e-6};
  const auto wc = random_bits(Shape{1, 32, 32}, Seed{18});
  const auto wl = make_localization_watermark({Seed{19}, 1e-6}, Shape{1, 32, 32});
  const auto z = sample_noise(wc, wl, s, Seed{20});
  for (float v : z.values()) ASSERT_TRUE(std::isfinite(v));
  EXPECT_EQ(reconstruct_bits(z, s).localization, wl);
}

}  // namespace
}  // namespace tagwm
