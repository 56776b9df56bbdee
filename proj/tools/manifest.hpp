#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "tagwm/masks.hpp"
#include "tagwm/pipeline.hpp"

namespace tagwm::cli {

using nlohmann::json;

/// SHA-256 of the message as a '0'/'1' string, lowercase hex.
std::string message_digest(const MessageBits& message);

/// Channel parameters as applied by `tagwm channel`.
struct ChannelRecord {
  double sigma = 0.0;
  std::optional<std::string> mask;
  std::uint64_t seed = 0;
  TamperSpec tamper{};
  std::optional<double> calibration_target;
};

json to_json(const ChannelRecord& record);
ChannelRecord channel_from_json(const json& j);

/// Everything needed to re-run or verify an embedding, minus the message.
struct Manifest {
  EmbedConfig embed;
  std::size_t message_length = 0;
  std::string message_sha256;
  std::string noise_path;
  std::optional<std::string> localization_path;
  std::optional<std::string> copyright_path;
  std::optional<ChannelRecord> channel;
};

json to_json(const Manifest& manifest);
/// Throws FormatError on missing or ill-typed fields.
Manifest manifest_from_json(const json& j);

Manifest read_manifest(const std::filesystem::path& path);
void write_manifest(const Manifest& manifest, const std::filesystem::path& path);

json read_json(const std::filesystem::path& path);
/// Pretty-printed with a trailing newline.
void write_json(const json& j, const std::filesystem::path& path);

}  // namespace tagwm::cli
