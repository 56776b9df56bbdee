#pragma once

#include <cstddef>
#include <optional>

#include "tagwm/dmjs.hpp"
#include "tagwm/rng.hpp"
#include "tagwm/tensor.hpp"

namespace tagwm {

/// Simulated generate -> tamper -> invert round trip.
struct ChannelSpec {
  /// Additive noise scale on untampered positions (latent units).
  double sigma = 0.0;
  /// H x W positions whose latents are re-drawn; broadcast over channels.
  std::optional<SpatialMask> tamper_mask;
  Seed seed{};
};

/// Outside the mask: Z + sigma * eta with eta iid N(0,1). Inside the mask (all
/// channels): a fresh iid N(0,1) draw independent of Z. Each position uses the
/// same eta and fresh values for a given seed whatever the mask is.
LatentGrid apply_channel(const LatentGrid& noise, const ChannelSpec& spec);

/// Which reconstructed bit a calibration tracks.
enum class ErrorTarget { Localization, Copyright };

struct CalibrationOptions {
  ErrorTarget target = ErrorTarget::Localization;
  double target_error = 0.14513;
  IntervalStrategy strategy{};
  double tol = 0.003;
  std::size_t samples = std::size_t{1} << 20;
  Seed seed{0x7a67776dULL};
  double sigma_max = 16.0;
};

struct CalibrationResult {
  double sigma = 0.0;
  /// Error measured at `sigma` on the calibration sample.
  double achieved_error = 0.0;
  int iterations = 0;
};

/// Monte-Carlo bit error of the untampered channel at `sigma`: random W_cop,
/// W_loc ~ B(1 - theta), DMJS sampling, channel, reconstruction.
double measure_bit_error(double sigma, const IntervalStrategy& strategy, ErrorTarget target, std::size_t samples,
                         Seed seed);

/// Bisection on sigma with common random numbers, so the measured error is a
/// deterministic function of sigma. Throws CalibrationError when the target
/// cannot be reached within [0, sigma_max] or the converged error misses it
/// by more than tol.
CalibrationResult calibrate_sigma(const CalibrationOptions& options);

}  // namespace tagwm
