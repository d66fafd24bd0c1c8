#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "dmt/cubical.hpp"
#include "dmt/field.hpp"

namespace dmt::detail {

// A 1-cell of the grid from pixel u to u + stride(axis), with its filtration key.
struct GridEdge {
  double key;
  std::uint64_t packed;  // u * 4 + axis

  std::size_t u() const { return static_cast<std::size_t>(packed >> 2); }
  int axis() const { return static_cast<int>(packed & 3); }
};

inline std::array<std::size_t, Shape::kMaxDims> strides(const Shape& shape) {
  std::array<std::size_t, Shape::kMaxDims> s{};
  for (int a = 0; a < shape.ndim(); ++a) s[static_cast<std::size_t>(a)] = shape.stride(a);
  return s;
}

// All grid edges sorted by the filtration order key (key, CellIndex), where
// key = filtration_key(rho(edge)).
std::vector<GridEdge> sorted_edges(const ScalarField& field, Polarity polarity);

// Vertex order of the same filtration: (key of the pixel value, pixel index).
inline bool vertex_before(const ScalarField& field, Polarity polarity, std::size_t a, std::size_t b) {
  double ka = polarity == Polarity::superlevel ? -field[a] : field[a];
  double kb = polarity == Polarity::superlevel ? -field[b] : field[b];
  return ka < kb || (ka == kb && a < b);
}

// Visits every pair of 4/6-adjacent pixels (u, v, axis) with v = u + stride(axis).
template <class Fn>
void for_each_adjacent_pair(const Shape& shape, Fn&& fn) {
  const std::size_t n = shape.size();
  for (int a = 0; a < shape.ndim(); ++a) {
    const std::size_t stride = shape.stride(a);
    const std::size_t extent = shape[a];
    for (std::size_t u = 0; u < n; ++u) {
      if ((u / stride) % extent + 1 < extent) fn(u, u + stride, a);
    }
  }
}

// Visits every edge (u, axis) in increasing CellIndex order, i.e. the
// lexicographic order of doubled coordinates.
template <class Fn>
void for_each_edge_in_cell_order(const Shape& shape, Fn&& fn) {
  const int last = shape.ndim() - 1;
  const auto st = strides(shape);
  // `odd` is the axis of the odd doubled coordinate in the prefix, or -1.
  auto level = [&](auto&& self, int a, std::size_t base, int odd) -> void {
    const std::size_t ext = shape[a], s = st[static_cast<std::size_t>(a)];
    if (a == last) {
      if (odd >= 0) {
        for (std::size_t j = 0; j < ext; ++j) fn(base + j * s, odd);
      } else {
        for (std::size_t j = 0; j + 1 < ext; ++j) fn(base + j * s, a);
      }
      return;
    }
    for (std::size_t j = 0; j < ext; ++j) {
      self(self, a + 1, base + j * s, odd);
      if (odd < 0 && j + 1 < ext) self(self, a + 1, base + j * s, a);
    }
  };
  level(level, 0, 0, -1);
}

// A dimension-0 pair in pixel terms; edge < 0 marks the essential class.
struct VertexEdgePair {
  std::size_t vertex;
  CellIndex edge;
  double birth_rho;
  double death_rho;
  double persistence;
};

// Elder-rule union-find pairs, in the order their deaths occur, essential last.
std::vector<VertexEdgePair> vertex_edge_pairs(const ScalarField& field, const CubicalComplex& complex,
                                              Polarity polarity);

}  // namespace dmt::detail
