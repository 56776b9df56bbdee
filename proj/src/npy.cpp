#include "tagwm/npy.hpp"

#include <bit>
#include <cctype>
#include <cstring>
#include <fstream>
#include <iterator>

#include "tagwm/error.hpp"

namespace tagwm {

namespace {

constexpr std::uint8_t kMagic[] = {0x93, 'N', 'U', 'M', 'P', 'Y'};
constexpr std::size_t kPreludeV1 = 10;  // magic + version + u16 length
constexpr std::size_t kAlignment = 64;

static_assert(std::endian::native == std::endian::little, "npy codec assumes a little-endian host");

std::size_t item_size(DType dtype) { return dtype == DType::Float32 ? 4 : 1; }

const char* descr(DType dtype) { return dtype == DType::Float32 ? "<f4" : "|u1"; }

// Minimal parser for the header dict written by numpy.lib.format.
class HeaderParser {
 public:
  explicit HeaderParser(std::string_view text) : text_(text) {}

  void parse(DType& dtype, std::vector<std::size_t>& shape) {
    bool have_descr = false, have_order = false, have_shape = false;
    expect('{');
    while (true) {
      skip_ws();
      if (peek() == '}') {
        ++pos_;
        break;
      }
      const std::string key = quoted();
      expect(':');
      skip_ws();
      if (key == "descr") {
        const std::string d = quoted();
        if (d == "<f4") {
          dtype = DType::Float32;
        } else if (d == "|u1" || d == "<u1" || d == "u1") {
          dtype = DType::UInt8;
        } else {
          throw FormatError("npy: unsupported dtype '" + d + "'");
        }
        have_descr = true;
      } else if (key == "fortran_order") {
        if (text_.substr(pos_, 5) == "False") {
          pos_ += 5;
        } else if (text_.substr(pos_, 4) == "True") {
          throw FormatError("npy: Fortran-ordered arrays are not supported");
        } else {
          throw FormatError("npy: bad fortran_order value");
        }
        have_order = true;
      } else if (key == "shape") {
        shape = tuple();
        have_shape = true;
      } else {
        throw FormatError("npy: unexpected header key '" + key + "'");
      }
      skip_ws();
      if (peek() == ',') {
        ++pos_;
      } else if (peek() != '}') {
        throw FormatError("npy: expected ',' or '}' in header");
      }
    }
    if (!have_descr || !have_order || !have_shape) throw FormatError("npy: header is missing a required key");
    skip_ws();
    if (pos_ != text_.size()) throw FormatError("npy: trailing characters after header dict");
  }

 private:
  char peek() const {
    if (pos_ >= text_.size()) throw FormatError("npy: truncated header");
    return text_[pos_];
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip_ws();
    if (peek() != c) throw FormatError(std::string("npy: expected '") + c + "' in header");
    ++pos_;
  }
  std::string quoted() {
    skip_ws();
    const char q = peek();
    if (q != '\'' && q != '"') throw FormatError("npy: expected quoted string in header");
    const auto end = text_.find(q, pos_ + 1);
    if (end == std::string_view::npos) throw FormatError("npy: unterminated string in header");
    std::string out(text_.substr(pos_ + 1, end - pos_ - 1));
    pos_ = end + 1;
    return out;
  }
  std::vector<std::size_t> tuple() {
    expect('(');
    std::vector<std::size_t> dims;
    while (true) {
      skip_ws();
      if (peek() == ')') {
        ++pos_;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(peek()))) throw FormatError("npy: bad shape entry");
      std::size_t v = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        v = v * 10 + static_cast<std::size_t>(text_[pos_] - '0');
        if (v > (std::size_t{1} << 40)) throw FormatError("npy: shape entry too large");
        ++pos_;
      }
      dims.push_back(v);
      skip_ws();
      if (peek() == ',') ++pos_;
    }
    return dims;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::size_t product(std::span<const std::size_t> dims) {
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  return n;
}

void check_rank(std::span<const std::size_t> shape) {
  if (shape.size() != 2 && shape.size() != 3) throw FormatError("npy: only 2-D and 3-D arrays are supported");
  for (auto d : shape) {
    if (d == 0) throw FormatError("npy: zero-length dimension");
  }
}

template <typename T>
std::vector<std::uint8_t> as_bytes(std::span<const T> values) {
  std::vector<std::uint8_t> out(values.size_bytes());
  if (!out.empty()) std::memcpy(out.data(), values.data(), out.size());
  return out;
}

}  // namespace

std::size_t NpyArray::element_count() const noexcept { return shape.empty() ? 0 : product(shape); }

std::string npy_header(DType dtype, std::span<const std::size_t> shape) {
  std::string dict = "{'descr': '";
  dict += descr(dtype);
  dict += "', 'fortran_order': False, 'shape': (";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i > 0) dict += ", ";
    dict += std::to_string(shape[i]);
  }
  if (shape.size() == 1) dict += ",";
  dict += "), }";
  // Pad with spaces so prelude + header is a multiple of 64, ending in '\n'.
  const std::size_t unpadded = kPreludeV1 + dict.size() + 1;
  const std::size_t pad = (kAlignment - unpadded % kAlignment) % kAlignment;
  dict.append(pad, ' ');
  dict += '\n';
  return dict;
}

std::vector<std::uint8_t> encode_npy(const NpyArray& array) {
  check_rank(array.shape);
  if (array.payload.size() != array.element_count() * item_size(array.dtype)) {
    throw FormatError("npy: payload size does not match shape");
  }
  const std::string header = npy_header(array.dtype, array.shape);
  if (header.size() > 0xffff) throw FormatError("npy: header too long for version 1.0");
  std::vector<std::uint8_t> out(kPreludeV1 + header.size() + array.payload.size());
  std::memcpy(out.data(), kMagic, sizeof kMagic);
  out[6] = 1;
  out[7] = 0;
  out[8] = static_cast<std::uint8_t>(header.size() & 0xff);
  out[9] = static_cast<std::uint8_t>(header.size() >> 8);
  std::memcpy(out.data() + kPreludeV1, header.data(), header.size());
  if (!array.payload.empty()) {
    std::memcpy(out.data() + kPreludeV1 + header.size(), array.payload.data(), array.payload.size());
  }
  return out;
}

NpyArray decode_npy(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kPreludeV1 || std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0) {
    throw FormatError("npy: missing magic string");
  }
  const std::uint8_t major = bytes[6];
  std::size_t header_len = 0;
  std::size_t offset = 0;
  if (major == 1) {
    header_len = bytes[8] | (std::size_t{bytes[9]} << 8);
    offset = 10;
  } else if (major == 2 || major == 3) {
    if (bytes.size() < 12) throw FormatError("npy: truncated prelude");
    header_len = bytes[8] | (std::size_t{bytes[9]} << 8) | (std::size_t{bytes[10]} << 16) |
                 (std::size_t{bytes[11]} << 24);
    offset = 12;
  } else {
    throw FormatError("npy: unsupported format version " + std::to_string(major));
  }
  if (bytes.size() < offset + header_len) throw FormatError("npy: truncated header");
  const std::string_view header(reinterpret_cast<const char*>(bytes.data() + offset), header_len);

  NpyArray array;
  HeaderParser(header).parse(array.dtype, array.shape);
  check_rank(array.shape);

  const std::size_t expected = array.element_count() * item_size(array.dtype);
  const std::size_t available = bytes.size() - offset - header_len;
  if (available != expected) {
    throw FormatError("npy: payload has " + std::to_string(available) + " bytes, header declares " +
                      std::to_string(expected));
  }
  array.payload.assign(bytes.begin() + static_cast<std::ptrdiff_t>(offset + header_len), bytes.end());
  return array;
}

NpyArray read_npy(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
  return decode_npy(bytes);
}

void write_npy(const std::filesystem::path& path, const NpyArray& array) {
  const auto bytes = encode_npy(array);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

NpyArray to_npy(const LatentGrid& grid) {
  const auto& s = grid.shape();
  return {DType::Float32, {s.channels, s.height, s.width}, as_bytes(grid.values())};
}

NpyArray to_npy(const BitGrid& grid) {
  const auto& s = grid.shape();
  return {DType::UInt8, {s.channels, s.height, s.width}, as_bytes(grid.bits())};
}

NpyArray to_npy(const SpatialMask& mask) {
  return {DType::UInt8, {mask.height(), mask.width()}, as_bytes(mask.cells())};
}

NpyArray to_npy(const DensityMap& map) {
  std::vector<float> narrowed(map.values().begin(), map.values().end());
  return {DType::Float32, {map.height(), map.width()}, as_bytes(std::span<const float>(narrowed))};
}

AnyArray from_npy(const NpyArray& array) {
  check_rank(array.shape);
  const std::size_t n = array.element_count();
  if (array.dtype == DType::Float32) {
    std::vector<float> values(n);
    std::memcpy(values.data(), array.payload.data(), n * sizeof(float));
    if (array.shape.size() == 3) {
      return LatentGrid(Shape{array.shape[0], array.shape[1], array.shape[2]}, std::move(values));
    }
    return DensityMap(array.shape[0], array.shape[1], std::vector<double>(values.begin(), values.end()));
  }
  if (array.shape.size() == 3) {
    return BitGrid(Shape{array.shape[0], array.shape[1], array.shape[2]}, array.payload);
  }
  return SpatialMask(array.shape[0], array.shape[1], array.payload);
}

AnyArray read_array(const std::filesystem::path& path) { return from_npy(read_npy(path)); }

namespace {

template <typename T>
T read_as(const std::filesystem::path& path, const char* what) {
  auto any = read_array(path);
  if (auto* v = std::get_if<T>(&any)) return std::move(*v);
  throw FormatError("'" + path.string() + "' does not hold a " + what);
}

}  // namespace

LatentGrid read_latent(const std::filesystem::path& path) {
  return read_as<LatentGrid>(path, "3-D float32 latent grid");
}
BitGrid read_bits(const std::filesystem::path& path) { return read_as<BitGrid>(path, "3-D uint8 bit grid"); }
SpatialMask read_mask(const std::filesystem::path& path) {
  return read_as<SpatialMask>(path, "2-D uint8 mask");
}
DensityMap read_density(const std::filesystem::path& path) {
  return read_as<DensityMap>(path, "2-D float32 density map");
}

}  // namespace tagwm
