#include "tagwm/pipeline.hpp"

#include "tagwm/error.hpp"
#include "tagwm/metrics.hpp"

namespace tagwm {

Embedding embed(const MessageBits& message, const EmbedConfig& config) {
  config.strategy.validate();
  auto copyright = make_copyright_watermark(message, config.key, config.shape);
  auto localization = make_localization_watermark(config.localization_template(), config.shape);
  auto noise = sample_noise(copyright, localization, config.strategy, config.noise_seed);
  return {std::move(copyright), std::move(localization), std::move(noise)};
}

Extraction extract(const LatentGrid& received, const EmbedConfig& config, std::size_t message_length,
                   const DvrdConfig& dvrd) {
  if (received.shape() != config.shape) {
    throw ShapeError("received latent " + received.shape().to_string() + " does not match embedding shape " +
                     config.shape.to_string());
  }
  auto bits = reconstruct_bits(received, config.strategy);
  const auto reference = make_localization_watermark(config.localization_template(), config.shape);
  auto variation = xor_map(reference, bits.localization);
  auto detection = detect(variation, dvrd);
  auto tad = tamper_aware_decode(bits.copyright, detection.mask, config.key, message_length);
  auto plain = plain_decode(bits.copyright, config.key, message_length);
  return {std::move(bits), std::move(variation), std::move(detection), std::move(tad), std::move(plain)};
}

TrialResult run_trial(const TrialConfig& config, Seed trial_seed) {
  const auto message = MessageBits::random(config.message_length, derive_seed(trial_seed, 1));
  EmbedConfig ec;
  ec.shape = config.shape;
  ec.strategy = config.strategy;
  ec.key = CipherKey::random(derive_seed(trial_seed, 2));
  ec.localization_seed = derive_seed(trial_seed, 3);
  ec.noise_seed = derive_seed(trial_seed, 4);
  const auto embedding = embed(message, ec);

  auto truth = make_tamper_mask(config.tamper, config.shape.height, config.shape.width, derive_seed(trial_seed, 5));
  const ChannelSpec channel{config.sigma, truth, derive_seed(trial_seed, 6)};
  const auto received = apply_channel(embedding.noise, channel);
  auto ex = extract(received, ec, config.message_length, config.dvrd);

  TrialResult r;
  r.bit_acc_plain = bit_accuracy(message, ex.plain);
  r.bit_acc_tad = bit_accuracy(message, ex.tamper_aware.message);
  const auto with_truth = tamper_aware_decode(ex.bits.copyright, truth, ec.key, config.message_length);
  r.bit_acc_tad_truth = bit_accuracy(message, with_truth.message);
  r.plain = decide(message, ex.plain, config.thresholds);
  r.tad = decide(message, ex.tamper_aware.message, config.thresholds);
  r.iou = iou(ex.detection.mask, truth);
  r.dice = dice(ex.detection.mask, truth);
  if (truth.count() > 0 && truth.count() < truth.size()) r.auc = auc(ex.detection.score, truth);

  const std::size_t plane = config.shape.plane();
  std::size_t clean_n = 0, clean_err = 0, tamp_n = 0, tamp_err = 0;
  for (std::size_t j = 0; j < ex.variation.shape().size(); ++j) {
    if (truth[j % plane]) {
      ++tamp_n;
      tamp_err += ex.variation[j];
    } else {
      ++clean_n;
      clean_err += ex.variation[j];
    }
  }
  r.localization_error_clean = clean_n ? static_cast<double>(clean_err) / static_cast<double>(clean_n) : 0.0;
  r.localization_error_tampered = tamp_n ? static_cast<double>(tamp_err) / static_cast<double>(tamp_n) : 0.0;
  r.truth = std::move(truth);
  r.predicted = ex.detection.mask;
  return r;
}

std::vector<SweepRow> run_sweep(const TrialConfig& base, const std::vector<double>& ratios, std::size_t trials,
                                Seed seed) {
  if (trials == 0) throw ParameterError("sweep needs at least one trial");
  std::vector<SweepRow> rows;
  rows.reserve(ratios.size());
  for (std::size_t ri = 0; ri < ratios.size(); ++ri) {
    TrialConfig cfg = base;
    cfg.tamper.ratio = ratios[ri];
    SweepRow row;
    row.ratio = ratios[ri];
    row.trials = trials;
    std::size_t d_plain = 0, t_plain = 0, d_tad = 0, t_tad = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      const auto r = run_trial(cfg, derive_seed(seed, (static_cast<std::uint64_t>(ri) << 32) + t));
      row.bit_acc_plain += r.bit_acc_plain;
      row.bit_acc_tad += r.bit_acc_tad;
      row.bit_acc_tad_truth += r.bit_acc_tad_truth;
      row.iou += r.iou;
      row.dice += r.dice;
      d_plain += r.plain.detected;
      t_plain += r.plain.traced;
      d_tad += r.tad.detected;
      t_tad += r.tad.traced;
    }
    const double n = static_cast<double>(trials);
    row.bit_acc_plain /= n;
    row.bit_acc_tad /= n;
    row.bit_acc_tad_truth /= n;
    row.iou /= n;
    row.dice /= n;
    row.d_tpr_plain = static_cast<double>(d_plain) / n;
    row.t_tpr_plain = static_cast<double>(t_plain) / n;
    row.d_tpr_tad = static_cast<double>(d_tad) / n;
    row.t_tpr_tad = static_cast<double>(t_tad) / n;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace tagwm
