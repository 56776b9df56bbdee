#include "commands.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "manifest.hpp"
#include "tagwm/error.hpp"
#include "tagwm/metrics.hpp"
#include "tagwm/npy.hpp"

namespace tagwm::cli {

namespace {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Shape parse_shape(const std::string& text) {
  std::vector<std::size_t> dims;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t v = 0;
    const auto res = std::from_chars(part.data(), part.data() + part.size(), v);
    if (res.ec != std::errc{} || res.ptr != part.data() + part.size() || v == 0) {
      throw ParameterError("shape must be three positive integers C,H,W");
    }
    dims.push_back(v);
  }
  if (dims.size() != 3) throw ParameterError("shape must be three positive integers C,H,W");
  return {dims[0], dims[1], dims[2]};
}

IntervalStrategy make_strategy(int intervals, double theta) {
  if (intervals != 3 && intervals != 4) throw ParameterError("--intervals must be 3 or 4");
  IntervalStrategy s{static_cast<IntervalKind>(intervals), theta};
  s.validate();
  return s;
}

void emit(const json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
  } else {
    write_json(j, path);
  }
}

json strategy_json(const IntervalStrategy& s) {
  return {{"intervals", static_cast<int>(s.kind)}, {"theta", s.theta}};
}

struct MessageInput {
  std::string hex;
  std::string bits;

  void add(CLI::App* cmd) {
    auto* h = cmd->add_option("--message", hex, "Copyright message as hex (4 bits per digit)");
    auto* b = cmd->add_option("--message-bits", bits, "Copyright message as a 0/1 string");
    h->excludes(b);
  }
  [[nodiscard]] MessageBits get() const {
    if (!hex.empty()) return MessageBits::from_hex(hex);
    if (!bits.empty()) return MessageBits::from_bit_string(bits);
    throw ParameterError("one of --message or --message-bits is required");
  }
};

struct DvrdInput {
  std::vector<std::size_t> kernels{3, 5, 9, 15};
  double tau = kDefaultDensityThreshold;
  std::string smoothing = "majority3x3";

  void add(CLI::App* cmd) {
    cmd->add_option("--kernels", kernels, "Odd box-filter sizes")->delimiter(',')->capture_default_str();
    cmd->add_option("--tau", tau, "Density threshold")->capture_default_str();
    cmd->add_option("--smoothing", smoothing, "none or majority3x3")->capture_default_str();
  }
  [[nodiscard]] DvrdConfig get() const {
    DvrdConfig cfg{kernels, tau, parse_smoothing(smoothing)};
    cfg.validate();
    return cfg;
  }
};

struct TamperInput {
  std::string kind = "none";
  double ratio = 0.0;
  std::size_t logo_count = 3;
  std::size_t smoothness = 6;

  void add(CLI::App* cmd, bool with_ratio) {
    cmd->add_option("--tamper", kind, "none, crop, drop, logo, blob or full")->capture_default_str();
    if (with_ratio) cmd->add_option("--ratio", ratio, "Tampered area fraction");
    cmd->add_option("--logo-count", logo_count, "Rectangles for logo tampering")->capture_default_str();
    cmd->add_option("--smoothness", smoothness, "Box radius for blob tampering")->capture_default_str();
  }
  [[nodiscard]] TamperSpec get() const { return {parse_tamper_kind(kind), ratio, logo_count, smoothness}; }
};

// embed ---------------------------------------------------------------------

struct EmbedOptions {
  MessageInput message;
  std::string key, nonce;
  std::uint64_t loc_seed = 0, noise_seed = 1;
  double theta = 0.5;
  int intervals = 3;
  std::string shape = "4,64,64";
  std::string out, manifest, wloc_out, wcop_out;
};

void run_embed(const EmbedOptions& o) {
  const auto message = o.message.get();
  EmbedConfig cfg;
  cfg.shape = parse_shape(o.shape);
  cfg.strategy = make_strategy(o.intervals, o.theta);
  cfg.key = CipherKey::from_hex(o.key, o.nonce);
  cfg.localization_seed = Seed{o.loc_seed};
  cfg.noise_seed = Seed{o.noise_seed};
  const auto e = embed(message, cfg);

  write_array(e.noise, o.out);
  Manifest m;
  m.embed = cfg;
  m.message_length = message.size();
  m.message_sha256 = message_digest(message);
  m.noise_path = o.out;
  if (!o.wloc_out.empty()) {
    write_array(e.localization, o.wloc_out);
    m.localization_path = o.wloc_out;
  }
  if (!o.wcop_out.empty()) {
    write_array(e.copyright, o.wcop_out);
    m.copyright_path = o.wcop_out;
  }
  write_manifest(m, o.manifest);
}

void add_embed(CLI::App& app) {
  auto o = std::make_shared<EmbedOptions>();
  auto* cmd = app.add_subcommand("embed", "Sample dual-watermarked noise");
  o->message.add(cmd);
  cmd->add_option("--key", o->key, "256-bit cipher key, 64 hex digits")->required();
  cmd->add_option("--nonce", o->nonce, "96-bit cipher nonce, 24 hex digits")->required();
  cmd->add_option("--loc-seed", o->loc_seed, "Localization template seed")->capture_default_str();
  cmd->add_option("--noise-seed", o->noise_seed, "In-interval sampling seed")->capture_default_str();
  cmd->add_option("--theta", o->theta, "Probability of a zero localization bit")->capture_default_str();
  cmd->add_option("--intervals", o->intervals, "Sampling strategy, 3 or 4")->capture_default_str();
  cmd->add_option("--shape", o->shape, "Latent shape C,H,W")->capture_default_str();
  cmd->add_option("--out", o->out, "Noise output (.npy)")->required();
  cmd->add_option("--manifest", o->manifest, "Manifest output (.json)")->required();
  cmd->add_option("--wloc-out", o->wloc_out, "Optional localization watermark output");
  cmd->add_option("--wcop-out", o->wcop_out, "Optional copyright watermark output");
  cmd->callback([o] { run_embed(*o); });
}

// channel -------------------------------------------------------------------

struct ChannelOptions {
  std::string in, out, manifest, mask_out, spec_out;
  std::optional<double> sigma;
  std::optional<double> calibrate;
  TamperInput tamper;
  std::uint64_t seed = 0;
  int intervals = 3;
  double theta = 0.5;
  std::size_t samples = CalibrationOptions{}.samples;
};

void run_channel(const ChannelOptions& o) {
  const auto noise = read_latent(o.in);
  std::optional<Manifest> manifest;
  if (!o.manifest.empty()) manifest = read_manifest(o.manifest);

  ChannelRecord record;
  record.seed = o.seed;
  record.tamper = o.tamper.get();
  if (o.calibrate) {
    CalibrationOptions copt;
    copt.target_error = *o.calibrate;
    copt.strategy = manifest ? manifest->embed.strategy : make_strategy(o.intervals, o.theta);
    copt.samples = o.samples;
    record.sigma = calibrate_sigma(copt).sigma;
    record.calibration_target = *o.calibrate;
  } else {
    record.sigma = o.sigma.value_or(0.0);
  }

  const Shape& shape = noise.shape();
  std::optional<SpatialMask> mask;
  if (record.tamper.kind != TamperKind::None) {
    mask = make_tamper_mask(record.tamper, shape.height, shape.width, derive_seed(Seed{o.seed}, 7));
    if (!o.mask_out.empty()) {
      write_array(*mask, o.mask_out);
      record.mask = o.mask_out;
    }
  }
  write_array(apply_channel(noise, {record.sigma, mask, Seed{o.seed}}), o.out);

  if (!o.spec_out.empty()) {
    write_json({{"sigma", record.sigma}, {"mask", record.mask ? json(*record.mask) : json(nullptr)},
                {"seed", record.seed}},
               o.spec_out);
  }
  if (manifest) {
    manifest->channel = record;
    write_manifest(*manifest, o.manifest);
  }
}

void add_channel(CLI::App& app) {
  auto o = std::make_shared<ChannelOptions>();
  auto* cmd = app.add_subcommand("channel", "Simulate inversion noise and tampering");
  cmd->add_option("--in", o->in, "Watermarked noise (.npy)")->required();
  cmd->add_option("--out", o->out, "Received noise output (.npy)")->required();
  cmd->add_option("--manifest", o->manifest, "Manifest to read the strategy from and record the channel in");
  auto* sigma = cmd->add_option("--sigma", o->sigma, "Additive noise scale");
  auto* cal = cmd->add_option("--calibrate", o->calibrate, "Calibrate sigma to this localization bit error");
  sigma->excludes(cal);
  o->tamper.add(cmd, true);
  cmd->add_option("--seed", o->seed, "Channel seed")->capture_default_str();
  cmd->add_option("--mask-out", o->mask_out, "Ground-truth tamper mask output (.npy)");
  cmd->add_option("--spec-out", o->spec_out, "Channel spec JSON output");
  cmd->add_option("--intervals", o->intervals, "Strategy for calibration without a manifest")->capture_default_str();
  cmd->add_option("--theta", o->theta, "Theta for calibration without a manifest")->capture_default_str();
  cmd->add_option("--calibration-samples", o->samples, "Monte-Carlo elements for calibration")
      ->capture_default_str();
  cmd->callback([o] { run_channel(*o); });
}

// extract / locate / evaluate -----------------------------------------------

struct Received {
  Manifest manifest;
  LatentGrid noise;
};

Received load_received(const std::string& in, const std::string& manifest_path) {
  Received r{read_manifest(manifest_path), read_latent(in)};
  if (r.noise.shape() != r.manifest.embed.shape) {
    throw ShapeError("received noise " + r.noise.shape().to_string() + " does not match manifest shape " +
                     r.manifest.embed.shape.to_string());
  }
  return r;
}

std::string message_text(const MessageBits& m) { return m.size() % 4 == 0 ? m.to_hex() : m.to_bit_string(); }

struct ExtractOptions {
  std::string in, manifest, report, wcop_out, wloc_out;
  DvrdInput dvrd;
};

void run_extract(const ExtractOptions& o) {
  const auto r = load_received(o.in, o.manifest);
  const auto x = extract(r.noise, r.manifest.embed, r.manifest.message_length, o.dvrd.get());
  if (!o.wcop_out.empty()) write_array(x.bits.copyright, o.wcop_out);
  if (!o.wloc_out.empty()) write_array(x.bits.localization, o.wloc_out);
  emit({{"message", message_text(x.tamper_aware.message)},
        {"message_plain", message_text(x.plain)},
        {"message_length", r.manifest.message_length},
        {"excluded_fraction", x.tamper_aware.tally.excluded_fraction()},
        {"fallback_bits", x.tamper_aware.tally.fallback_count()},
        {"predicted_area", x.detection.mask.area_ratio()}},
       o.report);
}

void add_extract(CLI::App& app) {
  auto o = std::make_shared<ExtractOptions>();
  auto* cmd = app.add_subcommand("extract", "Reconstruct watermarks and decode the message");
  cmd->add_option("--in", o->in, "Received noise (.npy)")->required();
  cmd->add_option("--manifest", o->manifest, "Embedding manifest")->required();
  cmd->add_option("--report", o->report, "JSON output, default stdout");
  cmd->add_option("--wcop-out", o->wcop_out, "Reconstructed copyright watermark output");
  cmd->add_option("--wloc-out", o->wloc_out, "Reconstructed localization watermark output");
  o->dvrd.add(cmd);
  cmd->callback([o] { run_extract(*o); });
}

struct LocateOptions {
  std::string in, manifest, score_out, mask_out, upsampled_out, report;
  std::size_t upsample = 8;
  DvrdInput dvrd;
};

void run_locate(const LocateOptions& o) {
  const auto r = load_received(o.in, o.manifest);
  const auto x = extract(r.noise, r.manifest.embed, r.manifest.message_length, o.dvrd.get());
  if (!o.score_out.empty()) write_array(x.detection.score, o.score_out);
  if (!o.mask_out.empty()) write_array(x.detection.mask, o.mask_out);
  if (!o.upsampled_out.empty()) write_array(upsample_mask(x.detection.mask, o.upsample), o.upsampled_out);
  const auto variation = static_cast<double>(x.variation.count_ones()) / static_cast<double>(x.variation.bits().size());
  emit({{"predicted_area", x.detection.mask.area_ratio()}, {"variation_density", variation}}, o.report);
}

void add_locate(CLI::App& app) {
  auto o = std::make_shared<LocateOptions>();
  auto* cmd = app.add_subcommand("locate", "Write the tamper score map and mask");
  cmd->add_option("--in", o->in, "Received noise (.npy)")->required();
  cmd->add_option("--manifest", o->manifest, "Embedding manifest")->required();
  cmd->add_option("--score-out", o->score_out, "Density score map output (.npy, f4)");
  cmd->add_option("--mask-out", o->mask_out, "Latent-resolution mask output (.npy, u1)");
  cmd->add_option("--upsampled-out", o->upsampled_out, "Image-resolution mask output (.npy, u1)");
  cmd->add_option("--upsample", o->upsample, "Nearest-neighbour factor")->capture_default_str();
  cmd->add_option("--report", o->report, "JSON summary output, default stdout");
  o->dvrd.add(cmd);
  cmd->callback([o] { run_locate(*o); });
}

struct EvaluateOptions {
  std::string in, manifest, truth, report;
  MessageInput message;
  double fpr = 1e-6;
  std::uint64_t users = 1'000'000;
  DvrdInput dvrd;
};

void run_evaluate(const EvaluateOptions& o) {
  const auto r = load_received(o.in, o.manifest);
  const auto message = o.message.get();
  if (message.size() != r.manifest.message_length || message_digest(message) != r.manifest.message_sha256) {
    throw ValidationError("message does not match the manifest hash");
  }
  const auto x = extract(r.noise, r.manifest.embed, message.size(), o.dvrd.get());
  const auto thresholds = DecisionThresholds::make(message.size(), o.fpr, o.users);
  const auto tad = decide(message, x.tamper_aware.message, thresholds);
  const auto plain = decide(message, x.plain, thresholds);

  json report = {
      {"bit_acc", tad.bit_accuracy},
      {"bit_acc_plain", plain.bit_accuracy},
      {"detected", tad.detected},
      {"traced", tad.traced},
      {"detected_plain", plain.detected},
      {"traced_plain", plain.traced},
      {"matches", tad.matches},
      {"detect_k", thresholds.detect_k},
      {"trace_k", thresholds.trace_k},
      {"fpr", thresholds.fpr_target},
      {"users", thresholds.users},
      {"excluded_fraction", x.tamper_aware.tally.excluded_fraction()},
      {"predicted_area", x.detection.mask.area_ratio()},
      {"strategy", strategy_json(r.manifest.embed.strategy)},
  };
  std::string truth_path = o.truth;
  if (truth_path.empty() && r.manifest.channel && r.manifest.channel->mask) truth_path = *r.manifest.channel->mask;
  report["iou"] = nullptr;
  report["dice"] = nullptr;
  report["auc"] = nullptr;
  if (!truth_path.empty()) {
    const auto truth = read_mask(truth_path);
    report["iou"] = iou(x.detection.mask, truth);
    report["dice"] = dice(x.detection.mask, truth);
    if (truth.count() > 0 && truth.count() < truth.size()) report["auc"] = auc(x.detection.score, truth);
  }
  emit(report, o.report);
}

void add_evaluate(CLI::App& app) {
  auto o = std::make_shared<EvaluateOptions>();
  auto* cmd = app.add_subcommand("evaluate", "Score decoding and localization against the truth");
  cmd->add_option("--in", o->in, "Received noise (.npy)")->required();
  cmd->add_option("--manifest", o->manifest, "Embedding manifest")->required();
  o->message.add(cmd);
  cmd->add_option("--truth", o->truth, "Ground-truth mask; defaults to the mask recorded by channel");
  cmd->add_option("--fpr", o->fpr, "Detection false-positive rate")->capture_default_str();
  cmd->add_option("--users", o->users, "User count for tracing")->capture_default_str();
  cmd->add_option("--report", o->report, "JSON output, default stdout");
  o->dvrd.add(cmd);
  cmd->callback([o] { run_evaluate(*o); });
}

// sweep ---------------------------------------------------------------------

struct SweepOptions {
  TamperInput tamper;
  std::vector<double> ratios{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::size_t trials = 10;
  std::optional<double> sigma;
  double calibrate = 0.14513;
  std::uint64_t seed = 0;
  int intervals = 3;
  double theta = 0.5;
  std::size_t length = 256;
  std::string shape = "4,64,64";
  double fpr = 1e-6;
  std::uint64_t users = 1'000'000;
  std::string csv, json_out;
  DvrdInput dvrd;
};

void write_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "ratio,trials,bit_acc_plain,bit_acc_tad,bit_acc_tad_truth,d_tpr_plain,t_tpr_plain,d_tpr_tad,t_tpr_tad,iou,"
         "dice\n";
  for (const auto& r : rows) {
    out << format_double(r.ratio) << ',' << r.trials;
    for (double v : {r.bit_acc_plain, r.bit_acc_tad, r.bit_acc_tad_truth, r.d_tpr_plain, r.t_tpr_plain, r.d_tpr_tad,
                     r.t_tpr_tad, r.iou, r.dice}) {
      out << ',' << format_double(v);
    }
    out << '\n';
  }
}

void run_sweep_command(const SweepOptions& o) {
  TrialConfig cfg;
  cfg.shape = parse_shape(o.shape);
  cfg.strategy = make_strategy(o.intervals, o.theta);
  cfg.message_length = o.length;
  cfg.tamper = o.tamper.get();
  cfg.dvrd = o.dvrd.get();
  cfg.thresholds = DecisionThresholds::make(o.length, o.fpr, o.users);
  if (o.sigma) {
    cfg.sigma = *o.sigma;
  } else {
    CalibrationOptions copt;
    copt.target_error = o.calibrate;
    copt.strategy = cfg.strategy;
    cfg.sigma = calibrate_sigma(copt).sigma;
  }
  const auto rows = run_sweep(cfg, o.ratios, o.trials, Seed{o.seed});

  if (o.csv.empty() || o.csv == "-") {
    write_csv(rows, std::cout);
  } else {
    std::ofstream out(o.csv);
    if (!out) throw IoError("cannot write " + o.csv);
    write_csv(rows, out);
  }
  if (!o.json_out.empty()) {
    json jr = json::array();
    for (const auto& r : rows) {
      jr.push_back({{"ratio", r.ratio}, {"trials", r.trials}, {"bit_acc_plain", r.bit_acc_plain},
                    {"bit_acc_tad", r.bit_acc_tad}, {"bit_acc_tad_truth", r.bit_acc_tad_truth},
                    {"d_tpr_plain", r.d_tpr_plain}, {"t_tpr_plain", r.t_tpr_plain}, {"d_tpr_tad", r.d_tpr_tad},
                    {"t_tpr_tad", r.t_tpr_tad}, {"iou", r.iou}, {"dice", r.dice}});
    }
    write_json({{"tamper", to_string(cfg.tamper.kind)},
                {"sigma", cfg.sigma},
                {"seed", o.seed},
                {"strategy", strategy_json(cfg.strategy)},
                {"detect_k", cfg.thresholds.detect_k},
                {"trace_k", cfg.thresholds.trace_k},
                {"rows", jr}},
               o.json_out);
  }
}

void add_sweep(CLI::App& app) {
  auto o = std::make_shared<SweepOptions>();
  auto* cmd = app.add_subcommand("sweep", "Mean decoding and localization results over tamper ratios");
  o->tamper.add(cmd, false);
  cmd->add_option("--ratios", o->ratios, "Comma-separated tamper ratios")->delimiter(',')->capture_default_str();
  cmd->add_option("--trials", o->trials, "Trials per ratio")->capture_default_str();
  auto* sigma = cmd->add_option("--sigma", o->sigma, "Additive noise scale");
  auto* cal = cmd->add_option("--calibrate", o->calibrate, "Localization bit error to calibrate sigma to")
                  ->capture_default_str();
  sigma->excludes(cal);
  cmd->add_option("--seed", o->seed, "Sweep seed")->capture_default_str();
  cmd->add_option("--intervals", o->intervals, "Sampling strategy, 3 or 4")->capture_default_str();
  cmd->add_option("--theta", o->theta, "Probability of a zero localization bit")->capture_default_str();
  cmd->add_option("--length", o->length, "Message length in bits")->capture_default_str();
  cmd->add_option("--shape", o->shape, "Latent shape C,H,W")->capture_default_str();
  cmd->add_option("--fpr", o->fpr, "Detection false-positive rate")->capture_default_str();
  cmd->add_option("--users", o->users, "User count for tracing")->capture_default_str();
  cmd->add_option("--csv", o->csv, "CSV output, default stdout");
  cmd->add_option("--json", o->json_out, "JSON output");
  o->dvrd.add(cmd);
  cmd->callback([o] { run_sweep_command(*o); });
}

// calibrate -----------------------------------------------------------------

struct CalibrateOptions {
  double target = 0.14513;
  std::string bit = "localization";
  int intervals = 3;
  double theta = 0.5;
  double tol = 0.003;
  std::size_t samples = CalibrationOptions{}.samples;
  std::uint64_t seed = CalibrationOptions{}.seed.value;
  std::string out;
};

void run_calibrate(const CalibrateOptions& o) {
  CalibrationOptions copt;
  if (o.bit == "localization") {
    copt.target = ErrorTarget::Localization;
  } else if (o.bit == "copyright") {
    copt.target = ErrorTarget::Copyright;
  } else {
    throw ParameterError("--bit must be localization or copyright");
  }
  copt.target_error = o.target;
  copt.strategy = make_strategy(o.intervals, o.theta);
  copt.tol = o.tol;
  copt.samples = o.samples;
  copt.seed = Seed{o.seed};
  const auto r = calibrate_sigma(copt);
  emit({{"sigma", r.sigma},
        {"achieved_error", r.achieved_error},
        {"target_error", o.target},
        {"bit", o.bit},
        {"iterations", r.iterations},
        {"samples", o.samples},
        {"seed", o.seed},
        {"strategy", strategy_json(copt.strategy)}},
       o.out);
}

void add_calibrate(CLI::App& app) {
  auto o = std::make_shared<CalibrateOptions>();
  auto* cmd = app.add_subcommand("calibrate", "Find the channel sigma for a target bit error");
  cmd->add_option("--target", o->target, "Target bit error rate")->capture_default_str();
  cmd->add_option("--bit", o->bit, "localization or copyright")->capture_default_str();
  cmd->add_option("--intervals", o->intervals, "Sampling strategy, 3 or 4")->capture_default_str();
  cmd->add_option("--theta", o->theta, "Probability of a zero localization bit")->capture_default_str();
  cmd->add_option("--tol", o->tol, "Accepted distance from the target")->capture_default_str();
  cmd->add_option("--samples", o->samples, "Monte-Carlo elements")->capture_default_str();
  cmd->add_option("--seed", o->seed, "Calibration seed")->capture_default_str();
  cmd->add_option("--out", o->out, "JSON output, default stdout");
  cmd->callback([o] { run_calibrate(*o); });
}

}  // namespace

void add_commands(CLI::App& app) {
  add_embed(app);
  add_channel(app);
  add_extract(app);
  add_locate(app);
  add_evaluate(app);
  add_sweep(app);
  add_calibrate(app);
}

}  // namespace tagwm::cli
