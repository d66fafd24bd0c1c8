#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dmt {

/// Thrown when a raster violates its shape or value invariants.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Extents of a 2D or 3D raster, row-major with the last axis fastest.
class Shape {
 public:
  static constexpr int kMaxDims = 3;

  Shape() = default;
  Shape(std::initializer_list<std::size_t> extents);
  explicit Shape(std::span<const std::size_t> extents);

  int ndim() const { return ndim_; }
  std::size_t operator[](int axis) const { return extents_[static_cast<std::size_t>(axis)]; }
  std::size_t size() const;
  /// Element stride of `axis` in the row-major layout.
  std::size_t stride(int axis) const;

  std::array<std::size_t, kMaxDims> unravel(std::size_t flat) const;
  std::string to_string() const;

  friend bool operator==(const Shape& a, const Shape& b) {
    return a.ndim_ == b.ndim_ && a.extents_ == b.extents_;
  }

 private:
  void validate() const;

  int ndim_ = 0;
  std::array<std::size_t, kMaxDims> extents_{};
};

/// Real values on the vertices of a pixel/voxel grid.
class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(Shape shape, std::vector<double> values);
  /// Constant-valued field.
  ScalarField(Shape shape, double fill);

  const Shape& shape() const { return shape_; }
  int ndim() const { return shape_.ndim(); }
  std::size_t size() const { return values_.size(); }

  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }

 private:
  Shape shape_;
  std::vector<double> values_;
};

/// One boolean per vertex, same layout as the field it came from.
class BinaryMask {
 public:
  BinaryMask() = default;
  explicit BinaryMask(Shape shape, bool fill = false);
  BinaryMask(Shape shape, std::vector<std::uint8_t> bits);

  const Shape& shape() const { return shape_; }
  int ndim() const { return shape_.ndim(); }
  std::size_t size() const { return bits_.size(); }

  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i, bool on = true) { bits_[i] = on ? 1 : 0; }
  std::span<const std::uint8_t> bits() const { return bits_; }

  std::size_t count() const;
  BinaryMask& operator|=(const BinaryMask& other);

  friend bool operator==(const BinaryMask& a, const BinaryMask& b) {
    return a.shape_ == b.shape_ && a.bits_ == b.bits_;
  }

 private:
  Shape shape_;
  std::vector<std::uint8_t> bits_;
};

/// Bit i is set iff field[i] > threshold (strict).
BinaryMask binarize(const ScalarField& field, double threshold);

/// Mask as a 0/1-valued field.
ScalarField to_field(const BinaryMask& mask);

}  // namespace dmt
