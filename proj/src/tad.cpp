#include "tagwm/tad.hpp"

#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

#include "tagwm/error.hpp"

namespace tagwm {

namespace {

using boost::multiprecision::cpp_int;

std::vector<std::uint8_t> vote(const std::vector<BitVote>& tallies, const std::vector<std::size_t>& all_ones,
                               const std::vector<std::size_t>& all_total) {
  std::vector<std::uint8_t> bits(tallies.size());
  for (std::size_t i = 0; i < tallies.size(); ++i) {
    const auto& t = tallies[i];
    if (t.fallback) {
      bits[i] = 2 * all_ones[i] > all_total[i] ? 1 : 0;
    } else {
      bits[i] = t.ones > t.zeros ? 1 : 0;
    }
  }
  return bits;
}

// Tail counts T(k) = sum_{i >= k} C(L, i), for k = 0..L+1.
std::vector<cpp_int> tail_counts(std::size_t length) {
  std::vector<cpp_int> coeff(length + 1);
  coeff[0] = 1;
  for (std::size_t i = 1; i <= length; ++i) coeff[i] = coeff[i - 1] * (length - i + 1) / i;
  std::vector<cpp_int> tail(length + 2);
  tail[length + 1] = 0;
  for (std::size_t k = length + 1; k-- > 0;) tail[k] = tail[k + 1] + coeff[k];
  return tail;
}

}  // namespace

std::size_t VoteTally::excluded_total() const noexcept {
  std::size_t n = 0;
  for (const auto& v : votes) n += v.excluded;
  return n;
}

std::size_t VoteTally::fallback_count() const noexcept {
  std::size_t n = 0;
  for (const auto& v : votes) n += v.fallback ? 1 : 0;
  return n;
}

double VoteTally::excluded_fraction() const noexcept {
  std::size_t total = 0;
  for (const auto& v : votes) total += v.ones + v.zeros + v.excluded;
  return total == 0 ? 0.0 : static_cast<double>(excluded_total()) / static_cast<double>(total);
}

DecodeResult tamper_aware_decode(const BitGrid& copyright, const SpatialMask& mask, const CipherKey& key,
                                 std::size_t length) {
  const Shape& s = copyright.shape();
  if (mask.height() != s.height || mask.width() != s.width) {
    throw ShapeError("tamper_aware_decode: mask does not match latent plane");
  }
  if (length == 0 || length > s.size()) throw CapacityError("message length does not fit the latent grid");

  const auto expanded = decrypt_watermark(copyright, key);
  const std::size_t plane = s.plane();
  std::vector<BitVote> tallies(length);
  std::vector<std::size_t> all_ones(length, 0), all_total(length, 0);
  for (std::size_t j = 0; j < expanded.size(); ++j) {
    const std::size_t i = j % length;
    const std::uint8_t bit = expanded[j];
    all_ones[i] += bit;
    ++all_total[i];
    if (mask[j % plane]) {
      ++tallies[i].excluded;
    } else if (bit) {
      ++tallies[i].ones;
    } else {
      ++tallies[i].zeros;
    }
  }
  for (auto& t : tallies) t.fallback = t.ones + t.zeros == 0;
  auto bits = vote(tallies, all_ones, all_total);
  return {MessageBits(std::move(bits)), VoteTally{std::move(tallies)}};
}

MessageBits plain_decode(const BitGrid& copyright, const CipherKey& key, std::size_t length) {
  const Shape& s = copyright.shape();
  return tamper_aware_decode(copyright, SpatialMask(s.height, s.width), key, length).message;
}

std::size_t detection_threshold(std::size_t length, double fpr) {
  if (!(fpr > 0.0 && fpr < 1.0)) throw ParameterError("false-positive rate must lie in (0, 1)");
  if (length == 0) throw ParameterError("message length must be positive");
  // fpr = mantissa * 2^exponent exactly, with an integer mantissa.
  int exponent = 0;
  const double frac = std::frexp(fpr, &exponent);
  const auto mantissa = static_cast<std::uint64_t>(std::ldexp(frac, 53));
  exponent -= 53;
  // tail / 2^L <= mantissa * 2^exponent  <=>  tail * 2^-(L + exponent) <= mantissa.
  const long long shift = static_cast<long long>(length) + exponent;
  const cpp_int rhs = shift >= 0 ? cpp_int(mantissa) << static_cast<unsigned>(shift) : cpp_int(mantissa);
  const unsigned lhs_shift = shift >= 0 ? 0u : static_cast<unsigned>(-shift);

  const auto tail = tail_counts(length);
  for (std::size_t k = 0; k <= length; ++k) {
    if ((tail[k] << lhs_shift) <= rhs) return k;
  }
  throw ParameterError("false-positive rate " + std::to_string(fpr) + " unattainable with " +
                       std::to_string(length) + " bits");
}

double binomial_upper_tail(std::size_t length, std::size_t k) {
  if (k > length) return 0.0;
  const auto tail = tail_counts(length);
  // Scale to ~64 significant bits before converting to avoid overflow.
  const std::size_t bits = msb(tail[k]) + 1;
  const std::size_t drop = bits > 64 ? bits - 64 : 0;
  const auto top = static_cast<double>(static_cast<std::uint64_t>(tail[k] >> drop));
  return std::ldexp(top, static_cast<int>(drop) - static_cast<int>(length));
}

DecisionThresholds DecisionThresholds::make(std::size_t length, double fpr, std::uint64_t users) {
  if (users == 0) throw ParameterError("user count must be positive");
  DecisionThresholds t;
  t.length = length;
  t.fpr_target = fpr;
  t.users = users;
  t.detect_k = detection_threshold(length, fpr);
  t.trace_k = detection_threshold(length, fpr / static_cast<double>(users));
  return t;
}

Decision decide(const MessageBits& truth, const MessageBits& decoded, const DecisionThresholds& thresholds) {
  if (truth.size() != decoded.size()) throw ShapeError("decide: message lengths differ");
  std::size_t matches = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) matches += truth[i] == decoded[i];
  Decision d;
  d.matches = matches;
  d.bit_accuracy = static_cast<double>(matches) / static_cast<double>(truth.size());
  d.detected = matches >= thresholds.detect_k;
  d.traced = matches >= thresholds.trace_k;
  return d;
}

}  // namespace tagwm
