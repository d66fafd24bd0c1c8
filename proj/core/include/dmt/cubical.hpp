#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dmt/field.hpp"

namespace dmt {

/// Flat position of a cell in the doubled grid. Index order is the
/// lexicographic order of cell coordinates.
using CellIndex = std::int64_t;

/// A cell of the cubical complex in doubled-grid coordinates: coordinate 2k
/// is vertex k along that axis, odd coordinates span an edge between 2k and
/// 2k+2. The cell dimension is the number of odd coordinates.
struct CellId {
  std::array<std::int64_t, Shape::kMaxDims> coords{};
  int ndim = 0;

  int dim() const {
    int d = 0;
    for (int a = 0; a < ndim; ++a) d += static_cast<int>(coords[static_cast<std::size_t>(a)] & 1);
    return d;
  }
  std::string to_string() const;

  friend auto operator<=>(const CellId&, const CellId&) = default;
};

enum class Polarity { superlevel, sublevel };

/// Cubical complex on a pixel/voxel grid: vertices, edges, squares and cubes
/// whose corners are grid vertices.
class CubicalComplex {
 public:
  explicit CubicalComplex(const Shape& shape);

  const Shape& shape() const { return shape_; }
  int ndim() const { return shape_.ndim(); }

  CellIndex cell_count() const { return cell_count_; }
  std::int64_t doubled_extent(int axis) const { return dext_[static_cast<std::size_t>(axis)]; }
  std::int64_t doubled_stride(int axis) const { return dstride_[static_cast<std::size_t>(axis)]; }
  /// Number of p-cells.
  std::int64_t count_of_dim(int p) const;
  std::int64_t euler_characteristic() const;

  bool contains(const CellId& cell) const;
  /// Throws std::out_of_range for coordinates outside the complex.
  CellIndex index(const CellId& cell) const;
  CellId cell(CellIndex index) const;
  int dim(CellIndex index) const;

  std::vector<CellId> faces(const CellId& cell) const;
  std::vector<CellId> cofaces(const CellId& cell) const;

  /// Codimension-1 faces: for each odd coordinate, the copies at c-1 and c+1.
  template <class Fn>
  void for_each_face(CellIndex c, Fn&& fn) const {
    auto coords = decode(c);
    for (int a = 0; a < ndim(); ++a) {
      auto s = dstride_[static_cast<std::size_t>(a)];
      if (coords[static_cast<std::size_t>(a)] & 1) {
        fn(c - s);
        fn(c + s);
      }
    }
  }

  /// Codimension-1 cofaces that lie inside the complex.
  template <class Fn>
  void for_each_coface(CellIndex c, Fn&& fn) const {
    auto coords = decode(c);
    for (int a = 0; a < ndim(); ++a) {
      auto k = coords[static_cast<std::size_t>(a)];
      auto s = dstride_[static_cast<std::size_t>(a)];
      if ((k & 1) == 0) {
        if (k > 0) fn(c - s);
        if (k + 1 < dext_[static_cast<std::size_t>(a)]) fn(c + s);
      }
    }
  }

  /// Flat vertex (pixel) indices of all corners of a cell.
  template <class Fn>
  void for_each_vertex(CellIndex c, Fn&& fn) const {
    auto coords = decode(c);
    std::array<std::size_t, Shape::kMaxDims> lo{};
    int odd_axes[Shape::kMaxDims];
    int n_odd = 0;
    for (int a = 0; a < ndim(); ++a) {
      auto k = coords[static_cast<std::size_t>(a)];
      lo[static_cast<std::size_t>(a)] = static_cast<std::size_t>(k / 2);
      if (k & 1) odd_axes[n_odd++] = a;
    }
    std::size_t base = 0;
    for (int a = 0; a < ndim(); ++a) base += lo[static_cast<std::size_t>(a)] * vstride_[static_cast<std::size_t>(a)];
    for (unsigned m = 0; m < (1u << n_odd); ++m) {
      std::size_t v = base;
      for (int j = 0; j < n_odd; ++j) {
        if (m & (1u << j)) v += vstride_[static_cast<std::size_t>(odd_axes[j])];
      }
      fn(v);
    }
  }

  /// Cell of the vertex at flat pixel index `v`.
  CellIndex vertex_cell(std::size_t v) const;
  /// Flat pixel index of a 0-cell.
  std::size_t vertex_of(CellIndex c) const;
  /// Edge from pixel `v` to its successor along `axis` (which must exist).
  CellIndex edge_cell(std::size_t v, int axis) const { return vertex_cell(v) + dstride_[static_cast<std::size_t>(axis)]; }

 private:
  std::array<std::int64_t, Shape::kMaxDims> decode(CellIndex c) const {
    std::array<std::int64_t, Shape::kMaxDims> k{};
    for (int a = ndim() - 1; a >= 0; --a) {
      auto e = dext_[static_cast<std::size_t>(a)];
      k[static_cast<std::size_t>(a)] = c % e;
      c /= e;
    }
    return k;
  }

  Shape shape_;
  std::array<std::int64_t, Shape::kMaxDims> dext_{};
  std::array<std::int64_t, Shape::kMaxDims> dstride_{};
  std::array<std::size_t, Shape::kMaxDims> vstride_{};
  CellIndex cell_count_ = 0;
};

/// Extension of the vertex function to all cells: the vertex maximum for
/// sublevel filtrations, the vertex minimum for superlevel ones. Either choice
/// keeps every face at or before its cofaces in the filtration.
double rho(const CubicalComplex& complex, CellIndex cell, const ScalarField& field, Polarity polarity);
double rho(const CubicalComplex& complex, const CellId& cell, const ScalarField& field, Polarity polarity);

}  // namespace dmt
