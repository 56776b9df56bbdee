#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tagwm/chacha20.hpp"
#include "tagwm/rng.hpp"
#include "tagwm/tensor.hpp"

namespace tagwm {

/// Copyright message of L >= 1 bits.
class MessageBits {
 public:
  MessageBits() = default;
  explicit MessageBits(std::vector<std::uint8_t> bits);

  /// Each hex digit contributes four bits, most significant first.
  static MessageBits from_hex(std::string_view hex);
  /// String of '0' and '1' characters.
  static MessageBits from_bit_string(std::string_view bits);
  static MessageBits random(std::size_t length, Seed seed);

  [[nodiscard]] std::size_t size() const noexcept { return bits_.size(); }
  [[nodiscard]] std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  [[nodiscard]] std::uint8_t operator[](std::size_t i) const noexcept { return bits_[i]; }
  [[nodiscard]] std::string to_bit_string() const;
  /// Requires size() % 4 == 0.
  [[nodiscard]] std::string to_hex() const;
  /// Bits packed MSB-first into bytes, last byte zero-padded.
  [[nodiscard]] std::vector<std::uint8_t> packed() const;

  friend bool operator==(const MessageBits&, const MessageBits&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Stream-cipher secret plus its public nonce.
struct CipherKey {
  chacha20::Key key{};
  chacha20::Nonce nonce{};

  /// key_hex must be 64 hex digits, nonce_hex 24.
  static CipherKey from_hex(std::string_view key_hex, std::string_view nonce_hex);
  static CipherKey random(Seed seed);

  friend bool operator==(const CipherKey&, const CipherKey&) = default;
};

/// Seeded Bernoulli template: each bit is 0 with probability theta.
struct TemplateSpec {
  Seed seed{};
  double theta = 0.5;
};

std::vector<std::uint8_t> parse_hex(std::string_view hex);
std::string to_hex(std::span<const std::uint8_t> bytes);

/// N = D / L full copies of m followed by its first D % L bits, so element j
/// carries message bit j % L. Throws CapacityError if L > D.
std::vector<std::uint8_t> expand_message(const MessageBits& message, std::size_t total);

/// First `count` keystream bits, counter 0, taken MSB-first from each byte.
std::vector<std::uint8_t> keystream_bits(const CipherKey& key, std::size_t count);

/// Expanded message XOR keystream, reshaped to `shape`.
BitGrid make_copyright_watermark(const MessageBits& message, const CipherKey& key, Shape shape);

/// Throws ParameterError unless 0 < theta < 1.
BitGrid make_localization_watermark(const TemplateSpec& spec, Shape shape);

/// Flat expanded-message layout recovered by XOR with the same keystream.
/// A wrong key yields noise; it is not detected here.
std::vector<std::uint8_t> decrypt_watermark(const BitGrid& watermark, const CipherKey& key);

}  // namespace tagwm
