#include "dmt/field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dmt {

Shape::Shape(std::initializer_list<std::size_t> extents)
    : Shape(std::span<const std::size_t>(extents.begin(), extents.size())) {}

Shape::Shape(std::span<const std::size_t> extents) {
  if (extents.size() < 2 || extents.size() > kMaxDims) {
    throw ShapeError("unsupported ndim " + std::to_string(extents.size()));
  }
  ndim_ = static_cast<int>(extents.size());
  std::copy(extents.begin(), extents.end(), extents_.begin());
  validate();
}

void Shape::validate() const {
  for (int a = 0; a < ndim_; ++a) {
    if (extents_[static_cast<std::size_t>(a)] == 0) {
      throw ShapeError("extent of axis " + std::to_string(a) + " is zero");
    }
  }
  // A complex with no edge at all carries no structure; singleton axes are
  // fine as long as some axis has an edge.
  if (size() < 2) throw ShapeError("raster " + to_string() + " has fewer than 2 vertices");
}

std::size_t Shape::size() const {
  if (ndim_ == 0) return 0;
  std::size_t n = 1;
  for (int a = 0; a < ndim_; ++a) n *= extents_[static_cast<std::size_t>(a)];
  return n;
}

std::size_t Shape::stride(int axis) const {
  std::size_t s = 1;
  for (int a = ndim_ - 1; a > axis; --a) s *= extents_[static_cast<std::size_t>(a)];
  return s;
}

std::array<std::size_t, Shape::kMaxDims> Shape::unravel(std::size_t flat) const {
  std::array<std::size_t, kMaxDims> c{};
  for (int a = ndim_ - 1; a >= 0; --a) {
    auto e = extents_[static_cast<std::size_t>(a)];
    c[static_cast<std::size_t>(a)] = flat % e;
    flat /= e;
  }
  return c;
}

std::string Shape::to_string() const {
  std::string s = "(";
  for (int a = 0; a < ndim_; ++a) {
    if (a) s += ",";
    s += std::to_string(extents_[static_cast<std::size_t>(a)]);
  }
  return s + ")";
}

ScalarField::ScalarField(Shape shape, std::vector<double> values)
    : shape_(shape), values_(std::move(values)) {
  if (shape_.size() != values_.size()) {
    throw ShapeError("shape " + shape_.to_string() + " expects " + std::to_string(shape_.size()) +
                     " values, got " + std::to_string(values_.size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw ShapeError("non-finite value at index " + std::to_string(i));
    }
  }
}

ScalarField::ScalarField(Shape shape, double fill)
    : ScalarField(shape, std::vector<double>(shape.size(), fill)) {}

BinaryMask::BinaryMask(Shape shape, bool fill) : shape_(shape), bits_(shape.size(), fill ? 1 : 0) {}

BinaryMask::BinaryMask(Shape shape, std::vector<std::uint8_t> bits)
    : shape_(shape), bits_(std::move(bits)) {
  if (shape_.size() != bits_.size()) {
    throw ShapeError("shape " + shape_.to_string() + " expects " + std::to_string(shape_.size()) +
                     " bits, got " + std::to_string(bits_.size()));
  }
  for (auto& b : bits_) b = b ? 1 : 0;
}

std::size_t BinaryMask::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

BinaryMask& BinaryMask::operator|=(const BinaryMask& other) {
  if (!(shape_ == other.shape_)) {
    throw ShapeError("mask shapes differ: " + shape_.to_string() + " vs " + other.shape_.to_string());
  }
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= other.bits_[i];
  return *this;
}

BinaryMask binarize(const ScalarField& field, double threshold) {
  std::vector<std::uint8_t> bits(field.size());
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = field[i] > threshold ? 1 : 0;
  return BinaryMask(field.shape(), std::move(bits));
}

ScalarField to_field(const BinaryMask& mask) {
  std::vector<double> v(mask.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = mask[i] ? 1.0 : 0.0;
  return ScalarField(mask.shape(), std::move(v));
}

}  // namespace dmt
