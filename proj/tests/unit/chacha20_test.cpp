#include "tagwm/chacha20.hpp"

#include <string>

#include <gtest/gtest.h>

#include "tagwm/watermark.hpp"

namespace tagwm {
namespace {

template <std::size_t N>
std::array<std::uint8_t, N> fixed(const std::string& hex) {
  const auto bytes = parse_hex(hex);
  std::array<std::uint8_t, N> out{};
  EXPECT_EQ(bytes.size(), N);
  std::copy_n(bytes.begin(), std::min(N, bytes.size()), out.begin());
  return out;
}

const std::string kSequentialKey = "000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f";
const std::string kZeroKey(64, '0');

TEST(ChaCha20Test, QuarterRound) {
  std::uint32_t a = 0x11111111, b = 0x01020304, c = 0x9b8d6f43, d = 0x01234567;
  chacha20::quarter_round(a, b, c, d);
  EXPECT_EQ(a, 0xea2a92f4u);
  EXPECT_EQ(b, 0xcb1cf8ceu);
  EXPECT_EQ(c, 0x4581472eu);
  EXPECT_EQ(d, 0x5881c4bbu);
}

TEST(ChaCha20Test, InitialStateLayout) {
  const auto state = chacha20::initial_state(fixed<32>(kSequentialKey), 1,
                                             fixed<12>("000000090000004a00000000"));
  EXPECT_EQ(state[0], 0x61707865u);
  EXPECT_EQ(state[3], 0x6b206574u);
  EXPECT_EQ(state[4], 0x03020100u);
  EXPECT_EQ(state[11], 0x1f1e1d1cu);
  EXPECT_EQ(state[12], 1u);
  EXPECT_EQ(state[13], 0x09000000u);
  EXPECT_EQ(state[14], 0x4a000000u);
  EXPECT_EQ(state[15], 0u);
}

TEST(ChaCha20Test, BlockFunctionVector) {
  const auto out = chacha20::block(fixed<32>(kSequentialKey), 1, fixed<12>("000000090000004a00000000"));
  EXPECT_EQ(to_hex(out),
            "10f1e7e4d13b5915500fdd1fa32071c4c7d1f4c733c068030422aa9ac3d46c4e"
            "d2826446079faa0914c2d705d98b02a2b5129cd1de164eb9cbd083e8a2503c4e");
}

TEST(ChaCha20Test, ZeroKeyBlocks) {
  const auto key = fixed<32>(kZeroKey);
  const auto nonce = fixed<12>(std::string(24, '0'));
  EXPECT_EQ(to_hex(chacha20::block(key, 0, nonce)),
            "76b8e0ada0f13d90405d6ae55386bd28bdd219b8a08ded1aa836efcc8b770dc7"
            "da41597c5157488d7724e03fb8d84a376a43b8f41518a11cc387b669b2ee6586");
  EXPECT_EQ(to_hex(chacha20::block(key, 1, nonce)),
            "9f07e7be5551387a98ba977c732d080dcb0f29a048e3656912c6533e32ee7aed"
            "29b721769ce64e43d57133b074d839d531ed1f28510afb45ace10a1f4b794d6f");
}

TEST(ChaCha20Test, KeyAndCounterVariants) {
  const auto nonce = fixed<12>(std::string(24, '0'));
  EXPECT_EQ(to_hex(chacha20::block(fixed<32>(std::string(63, '0') + "1"), 1, nonce)),
            "3aeb5224ecf849929b9d828db1ced4dd832025e8018b8160b82284f3c949aa5a"
            "8eca00bbb4a73bdad192b5c42f73f2fd4e273644c8b36125a64addeb006c13a0");
  EXPECT_EQ(to_hex(chacha20::block(fixed<32>("00ff" + std::string(60, '0')), 2, nonce)),
            "72d54dfbf12ec44b362692df94137f328fea8da73990265ec1bbbea1ae9af0ca"
            "13b25aa26cb4a648cb9b9d1be65b2c0924a66c54d545ec1b7374f4872e99f096");
}

TEST(ChaCha20Test, NonceVariant) {
  EXPECT_EQ(to_hex(chacha20::block(fixed<32>(kZeroKey), 0, fixed<12>("000000000000000000000002"))),
            "c2c64d378cd536374ae204b9ef933fcd1a8b2288b3dfa49672ab765b54ee27c7"
            "8a970e0e955c14f3a88e741b97c286f75f8fc299e8148362fa198a39531bed6d");
}

TEST(ChaCha20Test, EncryptsMultiBlockMessage) {
  const std::string text =
      "Ladies and Gentlemen of the class of '99: If I could offer you only one tip for the future, "
      "sunscreen would be it.";
  const std::vector<std::uint8_t> plain(text.begin(), text.end());
  const auto key = fixed<32>(kSequentialKey);
  const auto nonce = fixed<12>("000000000000004a00000000");
  const auto cipher = chacha20::apply(key, nonce, 1, plain);
  EXPECT_EQ(to_hex(cipher),
            "6e2e359a2568f98041ba0728dd0d6981e97e7aec1d4360c20a27afccfd9fae0b"
            "f91b65c5524733ab8f593dabcd62b3571639d624e65152ab8f530c359f0861d8"
            "07ca0dbf500d6a6156a38e088a22b65e52bc514d16ccf806818ce91ab7793736"
            "5af90bbf74a35be6b40b8eedf2785e42874d");
  EXPECT_EQ(chacha20::apply(key, nonce, 1, cipher), plain);
}

TEST(ChaCha20Test, KeystreamIsPrefixConsistent) {
  const auto key = fixed<32>(kSequentialKey);
  const auto nonce = fixed<12>("000000000000004a00000000");
  const auto long_stream = chacha20::keystream(key, nonce, 0, 200);
  const auto short_stream = chacha20::keystream(key, nonce, 0, 70);
  EXPECT_TRUE(std::equal(short_stream.begin(), short_stream.end(), long_stream.begin()));
  const auto second = chacha20::keystream(key, nonce, 1, 64);
  EXPECT_TRUE(std::equal(second.begin(), second.end(), long_stream.begin() + 64));
  EXPECT_TRUE(chacha20::keystream(key, nonce, 0, 0).empty());
}

TEST(ChaCha20Test, CounterOverflowRejected) {
  const auto key = fixed<32>(kZeroKey);
  const auto nonce = fixed<12>(std::string(24, '0'));
  EXPECT_NO_THROW(chacha20::keystream(key, nonce, 0xffffffffu, 64));
  EXPECT_ANY_THROW(chacha20::keystream(key, nonce, 0xffffffffu, 65));
}

}  // namespace
}  // namespace tagwm
