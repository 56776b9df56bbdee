#include "tagwm/normal.hpp"

#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

namespace tagwm {
namespace {

struct QuantilePoint {
  double p;
  double z;
};

// 30-digit reference values from arbitrary-precision evaluation.
constexpr QuantilePoint kQuantiles[] = {
    {0.25, -0.674489750196081743202227},  {1e-10, -6.361340902404056204695376},
    {0.15, -1.036433389493789579713244},  {0.65, 0.3853204664075676238107624},
    {0.975, 1.959963984540054235524594},  {0.999, 3.0902323061678135415404},
    {1e-5, -4.264890793922824628498525},  {0.3, -0.5244005127080407840382893},
    {0.01, -2.326347874040841100885606},
};

constexpr QuantilePoint kCdf[] = {
    {0.9750021048517795658634157, 1.96},       {0.1586552539314570514147675, -1.0},
    {0.6914624612740131036377046, 0.5},        {0.001349898031630094526651815, -3.0},
    {0.9986501019683699054733482, 3.0},        {6.220960574271784123515995e-16, -8.0},
    {0.9999997133484281208060883, 5.0},
};

TEST(NormalTest, QuantileMatchesReference) {
  EXPECT_EQ(std_normal_quantile(0.5), 0.0);
  for (const auto& q : kQuantiles) EXPECT_NEAR(std_normal_quantile(q.p), q.z, 1e-9) << q.p;
}

TEST(NormalTest, CdfMatchesReference) {
  for (const auto& c : kCdf) EXPECT_NEAR(std_normal_cdf(c.z), c.p, 1e-15 + 1e-13 * c.p) << c.z;
}

TEST(NormalTest, QuantileIsAntisymmetric) {
  for (double p : {1e-8, 0.01, 0.2, 0.4999}) EXPECT_NEAR(std_normal_quantile(p), -std_normal_quantile(1 - p), 1e-9);
}

TEST(NormalTest, CdfInvertsQuantileAcrossRange) {
  // Log-spaced lower tail plus a linear sweep through the body.
  for (double e = -10.0; e <= -0.31; e += 0.05) {
    const double p = std::pow(10.0, e);
    EXPECT_LE(std::abs(std_normal_cdf(std_normal_quantile(p)) - p), 1e-12) << p;
    EXPECT_LE(std::abs(std_normal_cdf(std_normal_quantile(1 - p)) - (1 - p)), 1e-12) << 1 - p;
  }
  for (int i = 1; i < 1000; ++i) {
    const double p = i / 1000.0;
    EXPECT_LE(std::abs(std_normal_cdf(std_normal_quantile(p)) - p), 1e-12) << p;
  }
}

TEST(NormalTest, QuantileIsMonotone) {
  double prev = -INFINITY;
  for (int i = 1; i < 10000; ++i) {
    const double z = std_normal_quantile(i / 10000.0);
    ASSERT_GT(z, prev);
    prev = z;
  }
}

TEST(NormalTest, PdfValues) {
  EXPECT_NEAR(std_normal_pdf(0.0), 0.3989422804014326779399461, 1e-16);
  EXPECT_NEAR(std_normal_pdf(1.0), 0.2419707245191433497978301, 1e-16);
}

TEST(NormalTest, QuantileDomain) {
  EXPECT_THROW(std_normal_quantile(0.0), std::domain_error);
  EXPECT_THROW(std_normal_quantile(1.0), std::domain_error);
  EXPECT_THROW(std_normal_quantile(-0.1), std::domain_error);
  EXPECT_THROW(std_normal_quantile(NAN), std::domain_error);
}

}  // namespace
}  // namespace tagwm
