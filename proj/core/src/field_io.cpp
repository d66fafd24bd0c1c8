#include "dmt/field_io.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

namespace dmt {
namespace {

constexpr std::uint8_t kDmtfVersion = 1;
constexpr std::size_t kDmtfPrefix = 8;

class ByteWriter {
 public:
  void bytes(const char* s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out_.push_back(static_cast<std::byte>(s[i]));
  }
  void u8(std::uint8_t v) { out_.push_back(static_cast<std::byte>(v)); }
  void u16(std::uint16_t v) {
    u8(static_cast<std::uint8_t>(v & 0xff));
    u8(static_cast<std::uint8_t>(v >> 8));
  }
  void u32(std::uint32_t v) {
    for (int k = 0; k < 4; ++k) u8(static_cast<std::uint8_t>((v >> (8 * k)) & 0xff));
  }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }

  std::vector<std::byte> take() { return std::move(out_); }

 private:
  std::vector<std::byte> out_;
};

class ByteReader {
 public:
  explicit ByteReader(const std::vector<std::byte>& in) : in_(in) {}

  std::size_t offset() const { return pos_; }
  std::size_t remaining() const { return in_.size() - pos_; }

  std::uint8_t u8() {
    need(1, "truncated header");
    return static_cast<std::uint8_t>(in_[pos_++]);
  }
  std::uint16_t u16() {
    need(2, "truncated header");
    std::uint16_t lo = u8();
    std::uint16_t hi = u8();
    return static_cast<std::uint16_t>(lo | (hi << 8));
  }
  std::uint32_t u32(const char* what) {
    need(4, what);
    std::uint32_t v = 0;
    for (int k = 0; k < 4; ++k) v |= static_cast<std::uint32_t>(u8()) << (8 * k);
    return v;
  }

 private:
  void need(std::size_t n, const char* what) const {
    if (remaining() < n) throw FormatError(what, pos_);
  }

  const std::vector<std::byte>& in_;
  std::size_t pos_ = 0;
};

std::vector<std::byte> slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::vector<std::byte> out(raw.size());
  std::memcpy(out.data(), raw.data(), raw.size());
  return out;
}

void write_atomically(const std::filesystem::path& path, const std::vector<std::byte>& bytes) {
  auto tmp = path;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
      out.close();
      std::filesystem::remove(tmp);
      throw IoError("short write to " + path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw IoError("cannot write " + path.string() + ": " + ec.message());
  }
}

// PGM header tokens are whitespace separated; '#' starts a comment to end of line.
std::size_t pgm_token(const std::vector<std::byte>& in, std::size_t& pos, const char* what) {
  auto ch = [&](std::size_t i) { return static_cast<char>(in[i]); };
  while (pos < in.size()) {
    if (ch(pos) == '#') {
      while (pos < in.size() && ch(pos) != '\n') ++pos;
    } else if (std::isspace(static_cast<unsigned char>(ch(pos)))) {
      ++pos;
    } else {
      break;
    }
  }
  std::size_t start = pos;
  std::size_t v = 0;
  while (pos < in.size() && std::isdigit(static_cast<unsigned char>(ch(pos)))) {
    v = v * 10 + static_cast<std::size_t>(ch(pos) - '0');
    if (v > 1u << 30) throw FormatError(std::string("oversized ") + what, start);
    ++pos;
  }
  if (pos == start) throw FormatError(std::string("malformed PGM header: expected ") + what, start);
  return v;
}

}  // namespace

FileFormat format_from_path(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext == ".pgm" ? FileFormat::pgm : FileFormat::dmtf;
}

std::vector<std::byte> encode_dmtf(const ScalarField& field) {
  ByteWriter w;
  w.bytes("DMTF", 4);
  w.u8(kDmtfVersion);
  w.u8(static_cast<std::uint8_t>(field.ndim()));
  w.u16(0);
  for (int a = 0; a < field.ndim(); ++a) w.u32(static_cast<std::uint32_t>(field.shape()[a]));
  for (double v : field.values()) w.f32(static_cast<float>(v));
  return w.take();
}

ScalarField decode_dmtf(const std::vector<std::byte>& bytes) {
  ByteReader r(bytes);
  if (bytes.size() < kDmtfPrefix) throw FormatError("truncated header", bytes.size());
  char magic[4];
  for (char& c : magic) c = static_cast<char>(r.u8());
  if (std::memcmp(magic, "DMTF", 4) != 0) throw FormatError("bad magic", 0);
  if (auto version = r.u8(); version != kDmtfVersion) {
    throw FormatError("unsupported version " + std::to_string(version), 4);
  }
  auto ndim = r.u8();
  if (ndim < 2 || ndim > 3) throw FormatError("unsupported ndim " + std::to_string(ndim), 5);
  if (r.u16() != 0) throw FormatError("reserved field is nonzero", 6);

  std::vector<std::size_t> extents;
  std::size_t count = 1;
  for (int a = 0; a < ndim; ++a) {
    auto at = r.offset();
    auto e = r.u32("truncated extents");
    if (e == 0) throw FormatError("extent of axis " + std::to_string(a) + " is zero", at);
    extents.push_back(e);
    count *= e;
  }
  if (count < 2) throw FormatError("raster has fewer than 2 vertices", r.offset());
  if (r.remaining() != 4 * count) {
    throw FormatError("payload holds " + std::to_string(r.remaining()) + " bytes, expected " +
                          std::to_string(4 * count),
                      r.offset());
  }
  std::vector<double> values(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto at = r.offset();
    float v = std::bit_cast<float>(r.u32("truncated payload"));
    if (!std::isfinite(v)) throw FormatError("non-finite value", at);
    values[i] = v;
  }
  return ScalarField(Shape(std::span<const std::size_t>(extents)), std::move(values));
}

std::vector<std::byte> encode_pgm(const BinaryMask& mask) {
  if (mask.ndim() != 2) throw ShapeError("PGM output requires a 2D mask, got " + mask.shape().to_string());
  auto header = "P5\n" + std::to_string(mask.shape()[1]) + " " + std::to_string(mask.shape()[0]) + "\n255\n";
  ByteWriter w;
  w.bytes(header.data(), header.size());
  for (auto b : mask.bits()) w.u8(b ? 255 : 0);
  return w.take();
}

ScalarField decode_pgm(const std::vector<std::byte>& bytes) {
  if (bytes.size() < 2 || static_cast<char>(bytes[0]) != 'P' || static_cast<char>(bytes[1]) != '5') {
    throw FormatError("not a binary PGM (missing P5 magic)", 0);
  }
  std::size_t pos = 2;
  auto width = pgm_token(bytes, pos, "width");
  auto height = pgm_token(bytes, pos, "height");
  auto maxval_at = pos;
  auto maxval = pgm_token(bytes, pos, "maxval");
  if (maxval == 0 || maxval > 255) throw FormatError("only 8-bit PGM is supported", maxval_at);
  if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
    throw FormatError("malformed PGM header", pos);
  }
  ++pos;
  if (width == 0 || height == 0) throw FormatError("extent is zero", 2);
  std::size_t count = width * height;
  if (bytes.size() - pos != count) {
    throw FormatError("payload holds " + std::to_string(bytes.size() - pos) + " bytes, expected " +
                          std::to_string(count),
                      pos);
  }
  if (count < 2) throw FormatError("raster has fewer than 2 vertices", pos);
  std::vector<double> values(count);
  for (std::size_t i = 0; i < count; ++i) {
    values[i] = static_cast<double>(static_cast<std::uint8_t>(bytes[pos + i])) / static_cast<double>(maxval);
  }
  return ScalarField(Shape{height, width}, std::move(values));
}

ScalarField read_field(const std::filesystem::path& path, FileFormat format) {
  auto bytes = slurp(path);
  return format == FileFormat::pgm ? decode_pgm(bytes) : decode_dmtf(bytes);
}

ScalarField read_field(const std::filesystem::path& path) { return read_field(path, format_from_path(path)); }

void write_mask(const BinaryMask& mask, const std::filesystem::path& path, FileFormat format) {
  write_atomically(path, format == FileFormat::pgm ? encode_pgm(mask) : encode_dmtf(to_field(mask)));
}

void write_field(const ScalarField& field, const std::filesystem::path& path) {
  write_atomically(path, encode_dmtf(field));
}

}  // namespace dmt
