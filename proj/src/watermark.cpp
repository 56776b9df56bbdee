#include "tagwm/watermark.hpp"

#include <algorithm>
#include <cmath>

#include "tagwm/error.hpp"

namespace tagwm {

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::string_view strip_prefix(std::string_view hex) {
  if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) hex.remove_prefix(2);
  return hex;
}

constexpr char kHexDigits[] = "0123456789abcdef";

}  // namespace

std::vector<std::uint8_t> parse_hex(std::string_view hex) {
  hex = strip_prefix(hex);
  if (hex.size() % 2 != 0) throw ParameterError("hex string must have an even number of digits");
  std::vector<std::uint8_t> out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int hi = hex_value(hex[2 * i]);
    const int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw ParameterError("invalid hex digit in '" + std::string(hex) + "'");
    out[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return out;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out += kHexDigits[b >> 4];
    out += kHexDigits[b & 0xf];
  }
  return out;
}

MessageBits::MessageBits(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  if (bits_.empty()) throw ParameterError("message must contain at least one bit");
  if (std::any_of(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b > 1; })) {
    throw ValidationError("message bits must be 0 or 1");
  }
}

MessageBits MessageBits::from_hex(std::string_view hex) {
  hex = strip_prefix(hex);
  std::vector<std::uint8_t> bits;
  bits.reserve(hex.size() * 4);
  for (char c : hex) {
    const int v = hex_value(c);
    if (v < 0) throw ParameterError("invalid hex digit in message");
    for (int k = 3; k >= 0; --k) bits.push_back(static_cast<std::uint8_t>((v >> k) & 1));
  }
  return MessageBits(std::move(bits));
}

MessageBits MessageBits::from_bit_string(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') throw ParameterError("bit string may contain only '0' and '1'");
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return MessageBits(std::move(bits));
}

MessageBits MessageBits::random(std::size_t length, Seed seed) {
  Rng rng(seed);
  std::vector<std::uint8_t> bits(length);
  for (auto& b : bits) b = rng.bit();
  return MessageBits(std::move(bits));
}

std::string MessageBits::to_bit_string() const {
  std::string out(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) out[i] = static_cast<char>('0' + bits_[i]);
  return out;
}

std::string MessageBits::to_hex() const {
  if (bits_.size() % 4 != 0) throw ParameterError("message length is not a multiple of 4 bits");
  std::string out;
  out.reserve(bits_.size() / 4);
  for (std::size_t i = 0; i < bits_.size(); i += 4) {
    const int v = bits_[i] << 3 | bits_[i + 1] << 2 | bits_[i + 2] << 1 | bits_[i + 3];
    out += kHexDigits[v];
  }
  return out;
}

std::vector<std::uint8_t> MessageBits::packed() const {
  std::vector<std::uint8_t> out((bits_.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    out[i / 8] |= static_cast<std::uint8_t>(bits_[i] << (7 - i % 8));
  }
  return out;
}

CipherKey CipherKey::from_hex(std::string_view key_hex, std::string_view nonce_hex) {
  const auto k = parse_hex(key_hex);
  const auto n = parse_hex(nonce_hex);
  if (k.size() != 32) throw ParameterError("key must be 32 bytes (64 hex digits)");
  if (n.size() != 12) throw ParameterError("nonce must be 12 bytes (24 hex digits)");
  CipherKey out;
  std::copy(k.begin(), k.end(), out.key.begin());
  std::copy(n.begin(), n.end(), out.nonce.begin());
  return out;
}

CipherKey CipherKey::random(Seed seed) {
  Rng rng(seed);
  CipherKey out;
  for (auto& b : out.key) b = static_cast<std::uint8_t>(rng.next() >> 56);
  for (auto& b : out.nonce) b = static_cast<std::uint8_t>(rng.next() >> 56);
  return out;
}

std::vector<std::uint8_t> expand_message(const MessageBits& message, std::size_t total) {
  const std::size_t length = message.size();
  if (length == 0 || length > total) {
    throw CapacityError("message of " + std::to_string(length) + " bits does not fit " + std::to_string(total) +
                        " latent elements");
  }
  std::vector<std::uint8_t> out(total);
  for (std::size_t j = 0; j < total; ++j) out[j] = message[j % length];
  return out;
}

std::vector<std::uint8_t> keystream_bits(const CipherKey& key, std::size_t count) {
  const auto bytes = chacha20::keystream(key.key, key.nonce, 0, (count + 7) / 8);
  std::vector<std::uint8_t> bits(count);
  for (std::size_t j = 0; j < count; ++j) bits[j] = (bytes[j / 8] >> (7 - j % 8)) & 1;
  return bits;
}

BitGrid make_copyright_watermark(const MessageBits& message, const CipherKey& key, Shape shape) {
  auto bits = expand_message(message, shape.size());
  const auto stream = keystream_bits(key, bits.size());
  for (std::size_t j = 0; j < bits.size(); ++j) bits[j] ^= stream[j];
  return BitGrid(shape, std::move(bits));
}

BitGrid make_localization_watermark(const TemplateSpec& spec, Shape shape) {
  if (!(spec.theta > 0.0 && spec.theta < 1.0)) throw ParameterError("theta must lie in (0, 1)");
  Rng rng(spec.seed);
  std::vector<std::uint8_t> bits(shape.size());
  for (auto& b : bits) b = rng.uniform() < spec.theta ? 0 : 1;
  return BitGrid(shape, std::move(bits));
}

std::vector<std::uint8_t> decrypt_watermark(const BitGrid& watermark, const CipherKey& key) {
  std::vector<std::uint8_t> out(watermark.bits().begin(), watermark.bits().end());
  const auto stream = keystream_bits(key, out.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] ^= stream[j];
  return out;
}

}  // namespace tagwm
