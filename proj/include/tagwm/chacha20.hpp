#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace tagwm {

/// ChaCha20, IETF variant (RFC 8439): 256-bit key, 96-bit nonce, 32-bit
/// block counter.
namespace chacha20 {

using Key = std::array<std::uint8_t, 32>;
using Nonce = std::array<std::uint8_t, 12>;
using Block = std::array<std::uint8_t, 64>;

void quarter_round(std::uint32_t& a, std::uint32_t& b, std::uint32_t& c, std::uint32_t& d) noexcept;

/// Initial state matrix (constants, key, counter, nonce).
std::array<std::uint32_t, 16> initial_state(const Key& key, std::uint32_t counter, const Nonce& nonce) noexcept;

/// Serialized output of the block function.
Block block(const Key& key, std::uint32_t counter, const Nonce& nonce) noexcept;

/// `length` keystream bytes starting at block `counter`.
std::vector<std::uint8_t> keystream(const Key& key, const Nonce& nonce, std::uint32_t counter, std::size_t length);

/// data XOR keystream; encryption and decryption are the same operation.
std::vector<std::uint8_t> apply(const Key& key, const Nonce& nonce, std::uint32_t counter,
                                std::span<const std::uint8_t> data);

}  // namespace chacha20
}  // namespace tagwm
