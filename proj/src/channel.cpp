#include "tagwm/channel.hpp"

#include <cmath>

#include "tagwm/error.hpp"
#include "tagwm/watermark.hpp"

namespace tagwm {

namespace {

constexpr std::uint64_t kNoiseStream = 1;
constexpr std::uint64_t kTamperStream = 2;

struct CalibrationSample {
  IntervalStrategy strategy;
  BitGrid copyright;
  BitGrid localization;
  LatentGrid noise;
};

CalibrationSample make_sample(const IntervalStrategy& strategy, std::size_t samples, Seed seed) {
  const Shape shape{1, 1, samples};
  Rng bit_rng(derive_seed(seed, 10));
  std::vector<std::uint8_t> wc(samples);
  for (auto& b : wc) b = bit_rng.bit();
  BitGrid copyright(shape, std::move(wc));
  BitGrid localization = make_localization_watermark({derive_seed(seed, 11), strategy.theta}, shape);
  LatentGrid noise = sample_noise(copyright, localization, strategy, derive_seed(seed, 12));
  return {strategy, std::move(copyright), std::move(localization), std::move(noise)};
}

// eta stream of apply_channel for `channel_seed`, drawn once so bisection
// steps only redo the arithmetic.
std::vector<double> channel_noise(std::size_t n, Seed channel_seed) {
  Rng eta(derive_seed(channel_seed, kNoiseStream));
  std::vector<double> out(n);
  for (auto& v : out) v = eta.normal();
  return out;
}

// Same arithmetic as apply_channel without a mask.
double sample_error(const CalibrationSample& sample, double sigma, ErrorTarget target,
                    const std::vector<double>& eta) {
  const IntervalTable table(sample.strategy);
  const BitGrid& truth = target == ErrorTarget::Localization ? sample.localization : sample.copyright;
  std::size_t errors = 0;
  for (std::size_t j = 0; j < eta.size(); ++j) {
    const auto z = sigma > 0.0 ? static_cast<float>(static_cast<double>(sample.noise[j]) + sigma * eta[j])
                               : sample.noise[j];
    const BitPair bits = table.classify(z);
    const std::uint8_t got = target == ErrorTarget::Localization ? bits.localization : bits.copyright;
    errors += truth[j] != got;
  }
  return static_cast<double>(errors) / static_cast<double>(eta.size());
}

}  // namespace

LatentGrid apply_channel(const LatentGrid& noise, const ChannelSpec& spec) {
  if (!std::isfinite(spec.sigma) || spec.sigma < 0.0) throw ParameterError("channel sigma must be finite and >= 0");
  const Shape& shape = noise.shape();
  if (spec.tamper_mask && (spec.tamper_mask->height() != shape.height || spec.tamper_mask->width() != shape.width)) {
    throw ShapeError("channel mask does not match latent plane " + std::to_string(shape.height) + "x" +
                     std::to_string(shape.width));
  }
  const std::size_t plane = shape.plane();
  std::vector<float> out(noise.values().begin(), noise.values().end());

  if (spec.sigma > 0.0) {
    Rng eta(derive_seed(spec.seed, kNoiseStream));
    for (std::size_t j = 0; j < out.size(); ++j) {
      out[j] = static_cast<float>(static_cast<double>(noise[j]) + spec.sigma * eta.normal());
    }
  }
  if (spec.tamper_mask) {
    const SpatialMask& mask = *spec.tamper_mask;
    Rng fresh(derive_seed(spec.seed, kTamperStream));
    for (std::size_t j = 0; j < out.size(); ++j) {
      const double draw = fresh.normal();
      if (mask[j % plane]) out[j] = static_cast<float>(draw);
    }
  }
  return LatentGrid(shape, std::move(out));
}

double measure_bit_error(double sigma, const IntervalStrategy& strategy, ErrorTarget target, std::size_t samples,
                         Seed seed) {
  const auto sample = make_sample(strategy, samples, seed);
  return sample_error(sample, sigma, target, channel_noise(samples, derive_seed(seed, 13)));
}

CalibrationResult calibrate_sigma(const CalibrationOptions& options) {
  options.strategy.validate();
  if (!(options.tol > 0.0)) throw ParameterError("calibration tolerance must be positive");
  // Localization errors beyond the fully tampered rate 2 theta (1 - theta) are
  // not a meaningful operating point; sign errors saturate at 1/2.
  const double theta = options.strategy.theta;
  const double ceiling = options.target == ErrorTarget::Localization ? 2.0 * theta * (1.0 - theta) : 0.5;
  if (!(options.target_error > 0.0 && options.target_error < ceiling)) {
    throw CalibrationError("calibration target must lie in (0, " + std::to_string(ceiling) + ")");
  }
  if (options.samples == 0) throw ParameterError("calibration needs at least one sample");

  const auto sample = make_sample(options.strategy, options.samples, options.seed);
  const auto eta = channel_noise(options.samples, derive_seed(options.seed, 13));
  const auto error_at = [&](double sigma) { return sample_error(sample, sigma, options.target, eta); };

  double lo = 0.0;
  double hi = options.sigma_max;
  const double hi_error = error_at(hi);
  if (hi_error < options.target_error) {
    throw CalibrationError("target error " + std::to_string(options.target_error) + " not reachable below sigma " +
                           std::to_string(options.sigma_max) + " (max " + std::to_string(hi_error) + ")");
  }

  CalibrationResult best{hi, hi_error, 0};
  int iter = 0;
  while (hi - lo > 1e-5 && iter < 64) {
    ++iter;
    const double mid = 0.5 * (lo + hi);
    const double err = error_at(mid);
    if (std::abs(err - options.target_error) < std::abs(best.achieved_error - options.target_error)) {
      best = {mid, err, iter};
    }
    if (err < options.target_error) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  best.iterations = iter;
  if (std::abs(best.achieved_error - options.target_error) > options.tol) {
    throw CalibrationError("calibration converged to error " + std::to_string(best.achieved_error) +
                           ", outside tolerance of target " + std::to_string(options.target_error));
  }
  return best;
}

}  // namespace tagwm
