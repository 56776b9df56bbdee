#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tagwm/channel.hpp"
#include "tagwm/dmjs.hpp"
#include "tagwm/dvrd.hpp"
#include "tagwm/masks.hpp"
#include "tagwm/tad.hpp"
#include "tagwm/watermark.hpp"

namespace tagwm {

/// Everything the embedder and the verifier share.
struct EmbedConfig {
  Shape shape = kDefaultShape;
  IntervalStrategy strategy{};
  CipherKey key{};
  Seed localization_seed{};
  Seed noise_seed{};

  [[nodiscard]] TemplateSpec localization_template() const { return {localization_seed, strategy.theta}; }
};

struct Embedding {
  BitGrid copyright;
  BitGrid localization;
  LatentGrid noise;
};

Embedding embed(const MessageBits& message, const EmbedConfig& config);

struct Extraction {
  ReconstructedBits bits;
  /// W_loc XOR reconstructed W_loc.
  BitGrid variation;
  Detection detection;
  /// Tamper-aware decode guided by detection.mask.
  DecodeResult tamper_aware;
  MessageBits plain;
};

/// Reconstruction, localization and both decoders for one received latent.
Extraction extract(const LatentGrid& received, const EmbedConfig& config, std::size_t message_length,
                   const DvrdConfig& dvrd = {});

/// One simulated embed -> channel -> extract run.
struct TrialConfig {
  Shape shape = kDefaultShape;
  IntervalStrategy strategy{};
  std::size_t message_length = 256;
  double sigma = 0.0;
  TamperSpec tamper{};
  DvrdConfig dvrd{};
  DecisionThresholds thresholds = DecisionThresholds::make(256);
};

struct TrialResult {
  SpatialMask truth;
  SpatialMask predicted;
  double bit_acc_plain = 0.0;
  /// TAD guided by the DVRD mask.
  double bit_acc_tad = 0.0;
  /// TAD guided by the ground-truth mask.
  double bit_acc_tad_truth = 0.0;
  Decision plain;
  Decision tad;
  double iou = 0.0;
  double dice = 0.0;
  /// Absent when the truth mask has a single class.
  std::optional<double> auc;
  double localization_error_clean = 0.0;
  double localization_error_tampered = 0.0;
};

/// Message, key, seeds and mask are all derived from `trial_seed`.
TrialResult run_trial(const TrialConfig& config, Seed trial_seed);

struct SweepRow {
  double ratio = 0.0;
  std::size_t trials = 0;
  double bit_acc_plain = 0.0;
  double bit_acc_tad = 0.0;
  double bit_acc_tad_truth = 0.0;
  double d_tpr_plain = 0.0;
  double t_tpr_plain = 0.0;
  double d_tpr_tad = 0.0;
  double t_tpr_tad = 0.0;
  double iou = 0.0;
  double dice = 0.0;
};

/// Mean results per ratio; trial t at ratio index r uses derive_seed(seed, r * 2^32 + t).
std::vector<SweepRow> run_sweep(const TrialConfig& base, const std::vector<double>& ratios, std::size_t trials,
                                Seed seed);

}  // namespace tagwm
