#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "dmt/field.hpp"

namespace dmt {

enum class FileFormat { dmtf, pgm };

/// Parse failure; `offset()` is the byte position where decoding stopped.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at byte offset " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Thrown for filesystem failures (missing file, unwritable path).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Picks the format from the extension: ".pgm" is PGM, anything else DMTF.
FileFormat format_from_path(const std::filesystem::path& path);

// DMTF container, little-endian:
//   "DMTF" | u8 version=1 | u8 ndim | u16 reserved=0 | u32 extent[ndim] | f32 values[]
std::vector<std::byte> encode_dmtf(const ScalarField& field);
ScalarField decode_dmtf(const std::vector<std::byte>& bytes);

std::vector<std::byte> encode_pgm(const BinaryMask& mask);
/// 8-bit binary PGM (P5). Sample v maps to v / maxval, so v / 255 for the usual maxval.
ScalarField decode_pgm(const std::vector<std::byte>& bytes);

ScalarField read_field(const std::filesystem::path& path, FileFormat format);
ScalarField read_field(const std::filesystem::path& path);

/// Writes atomically: the target either receives the full payload or is untouched.
void write_mask(const BinaryMask& mask, const std::filesystem::path& path, FileFormat format);
void write_field(const ScalarField& field, const std::filesystem::path& path);

}  // namespace dmt
