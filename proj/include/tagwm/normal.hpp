#pragma once

namespace tagwm {

double std_normal_pdf(double z) noexcept;

/// Phi(z) through erfc, accurate to full relative precision in the lower tail.
double std_normal_cdf(double z) noexcept;

/// Inverse standard normal CDF.
///
/// Acklam's rational approximation (relative error below 1.15e-9) followed by
/// one Halley refinement step against std_normal_cdf, which brings the result
/// to within a few ulps on [1e-300, 1 - 1e-16]. Only the lower half is
/// evaluated directly; p > 0.5 uses the exact complement 1 - p.
///
/// Throws std::domain_error unless 0 < p < 1.
double std_normal_quantile(double p);

}  // namespace tagwm
