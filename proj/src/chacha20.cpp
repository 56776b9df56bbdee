#include "tagwm/chacha20.hpp"

#include "tagwm/error.hpp"

namespace tagwm::chacha20 {

namespace {

constexpr std::uint32_t rotl(std::uint32_t x, int n) noexcept { return (x << n) | (x >> (32 - n)); }

std::uint32_t load_le32(const std::uint8_t* p) noexcept {
  return std::uint32_t{p[0]} | (std::uint32_t{p[1]} << 8) | (std::uint32_t{p[2]} << 16) |
         (std::uint32_t{p[3]} << 24);
}

}  // namespace

void quarter_round(std::uint32_t& a, std::uint32_t& b, std::uint32_t& c, std::uint32_t& d) noexcept {
  a += b; d ^= a; d = rotl(d, 16);
  c += d; b ^= c; b = rotl(b, 12);
  a += b; d ^= a; d = rotl(d, 8);
  c += d; b ^= c; b = rotl(b, 7);
}

std::array<std::uint32_t, 16> initial_state(const Key& key, std::uint32_t counter, const Nonce& nonce) noexcept {
  std::array<std::uint32_t, 16> s{0x61707865, 0x3320646e, 0x79622d32, 0x6b206574};
  for (int i = 0; i < 8; ++i) s[4 + i] = load_le32(key.data() + 4 * i);
  s[12] = counter;
  for (int i = 0; i < 3; ++i) s[13 + i] = load_le32(nonce.data() + 4 * i);
  return s;
}

Block block(const Key& key, std::uint32_t counter, const Nonce& nonce) noexcept {
  const auto init = initial_state(key, counter, nonce);
  auto x = init;
  for (int round = 0; round < 10; ++round) {
    quarter_round(x[0], x[4], x[8], x[12]);
    quarter_round(x[1], x[5], x[9], x[13]);
    quarter_round(x[2], x[6], x[10], x[14]);
    quarter_round(x[3], x[7], x[11], x[15]);
    quarter_round(x[0], x[5], x[10], x[15]);
    quarter_round(x[1], x[6], x[11], x[12]);
    quarter_round(x[2], x[7], x[8], x[13]);
    quarter_round(x[3], x[4], x[9], x[14]);
  }
  Block out{};
  for (int i = 0; i < 16; ++i) {
    const std::uint32_t w = x[i] + init[i];
    out[4 * i + 0] = static_cast<std::uint8_t>(w);
    out[4 * i + 1] = static_cast<std::uint8_t>(w >> 8);
    out[4 * i + 2] = static_cast<std::uint8_t>(w >> 16);
    out[4 * i + 3] = static_cast<std::uint8_t>(w >> 24);
  }
  return out;
}

std::vector<std::uint8_t> keystream(const Key& key, const Nonce& nonce, std::uint32_t counter, std::size_t length) {
  const std::size_t blocks = (length + 63) / 64;
  if (blocks > 0 && std::uint64_t{counter} + blocks - 1 > 0xffffffffULL) {
    throw ParameterError("chacha20: keystream request overflows the 32-bit block counter");
  }
  std::vector<std::uint8_t> out;
  out.reserve(blocks * 64);
  for (std::size_t i = 0; i < blocks; ++i) {
    const auto b = block(key, counter + static_cast<std::uint32_t>(i), nonce);
    out.insert(out.end(), b.begin(), b.end());
  }
  out.resize(length);
  return out;
}

std::vector<std::uint8_t> apply(const Key& key, const Nonce& nonce, std::uint32_t counter,
                                std::span<const std::uint8_t> data) {
  auto out = keystream(key, nonce, counter, data.size());
  for (std::size_t i = 0; i < data.size(); ++i) out[i] ^= data[i];
  return out;
}

}  // namespace tagwm::chacha20
