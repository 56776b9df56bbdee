#include "manifest.hpp"

#include <fstream>

#include <openssl/evp.h>

#include "tagwm/error.hpp"

namespace tagwm::cli {

namespace {

constexpr int kManifestVersion = 1;

template <typename T>
T field(const json& j, const char* name) {
  if (!j.contains(name)) throw FormatError(std::string("manifest: missing field '") + name + "'");
  try {
    return j.at(name).get<T>();
  } catch (const json::exception&) {
    throw FormatError(std::string("manifest: field '") + name + "' has the wrong type");
  }
}

template <typename T>
std::optional<T> optional_field(const json& j, const char* name) {
  if (!j.contains(name) || j.at(name).is_null()) return std::nullopt;
  return field<T>(j, name);
}

json nullable(const std::optional<std::string>& s) { return s ? json(*s) : json(nullptr); }

}  // namespace

std::string message_digest(const MessageBits& message) {
  const std::string bits = message.to_bit_string();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int size = 0;
  if (EVP_Digest(bits.data(), bits.size(), digest, &size, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  return to_hex(std::span<const std::uint8_t>(digest, size));
}

json to_json(const ChannelRecord& record) {
  json tamper = {{"kind", to_string(record.tamper.kind)}, {"ratio", record.tamper.ratio}};
  if (record.tamper.kind == TamperKind::Logo) tamper["logo_count"] = record.tamper.logo_count;
  if (record.tamper.kind == TamperKind::Blob) tamper["smoothness"] = record.tamper.smoothness;
  json j = {{"sigma", record.sigma}, {"mask", nullable(record.mask)}, {"seed", record.seed}, {"tamper", tamper}};
  j["calibration_target"] = record.calibration_target ? json(*record.calibration_target) : json(nullptr);
  return j;
}

ChannelRecord channel_from_json(const json& j) {
  ChannelRecord r;
  r.sigma = field<double>(j, "sigma");
  r.mask = optional_field<std::string>(j, "mask");
  r.seed = field<std::uint64_t>(j, "seed");
  if (j.contains("tamper")) {
    const json& t = j.at("tamper");
    r.tamper.kind = parse_tamper_kind(field<std::string>(t, "kind"));
    r.tamper.ratio = field<double>(t, "ratio");
    r.tamper.logo_count = optional_field<std::size_t>(t, "logo_count").value_or(r.tamper.logo_count);
    r.tamper.smoothness = optional_field<std::size_t>(t, "smoothness").value_or(r.tamper.smoothness);
  }
  r.calibration_target = optional_field<double>(j, "calibration_target");
  return r;
}

json to_json(const Manifest& m) {
  const auto& e = m.embed;
  json j = {
      {"version", kManifestVersion},
      {"shape", {e.shape.channels, e.shape.height, e.shape.width}},
      {"intervals", static_cast<int>(e.strategy.kind)},
      {"theta", e.strategy.theta},
      {"message_length", m.message_length},
      {"message_sha256", m.message_sha256},
      {"key", to_hex(e.key.key)},
      {"nonce", to_hex(e.key.nonce)},
      {"localization_seed", e.localization_seed.value},
      {"noise_seed", e.noise_seed.value},
      {"files",
       {{"noise", m.noise_path}, {"localization", nullable(m.localization_path)},
        {"copyright", nullable(m.copyright_path)}}},
  };
  j["channel"] = m.channel ? to_json(*m.channel) : json(nullptr);
  return j;
}

Manifest manifest_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("manifest: top level must be an object");
  if (field<int>(j, "version") != kManifestVersion) throw FormatError("manifest: unsupported version");
  Manifest m;
  const auto shape = field<std::vector<std::size_t>>(j, "shape");
  if (shape.size() != 3) throw FormatError("manifest: shape must have three entries");
  m.embed.shape = Shape{shape[0], shape[1], shape[2]};
  const int intervals = field<int>(j, "intervals");
  if (intervals != 3 && intervals != 4) throw FormatError("manifest: intervals must be 3 or 4");
  m.embed.strategy = {static_cast<IntervalKind>(intervals), field<double>(j, "theta")};
  m.embed.strategy.validate();
  m.embed.key = CipherKey::from_hex(field<std::string>(j, "key"), field<std::string>(j, "nonce"));
  m.embed.localization_seed = Seed{field<std::uint64_t>(j, "localization_seed")};
  m.embed.noise_seed = Seed{field<std::uint64_t>(j, "noise_seed")};
  m.message_length = field<std::size_t>(j, "message_length");
  m.message_sha256 = field<std::string>(j, "message_sha256");
  const json files = field<json>(j, "files");
  m.noise_path = field<std::string>(files, "noise");
  m.localization_path = optional_field<std::string>(files, "localization");
  m.copyright_path = optional_field<std::string>(files, "copyright");
  if (j.contains("channel") && !j.at("channel").is_null()) m.channel = channel_from_json(j.at("channel"));
  return m;
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_json(const json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

Manifest read_manifest(const std::filesystem::path& path) { return manifest_from_json(read_json(path)); }

void write_manifest(const Manifest& manifest, const std::filesystem::path& path) {
  write_json(to_json(manifest), path);
}

}  // namespace tagwm::cli
