#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dmt/field.hpp"

namespace dmt {

/// Spanning-forest basins of the minima whose persistence is at least eps.
struct BasinLabeling {
  Shape shape;
  /// 1-based basin id per pixel, numbered in order of first appearance in
  /// raster order.
  std::vector<std::int32_t> labels;
  /// Pixel index of the representative minimum of basin id k at minima[k-1].
  std::vector<std::size_t> minima;
  /// Adjacent pixel pairs (u < v) whose labels differ.
  std::vector<std::pair<std::size_t, std::size_t>> separating_edges;

  std::size_t basin_count() const { return minima.size(); }
};

/// Kruskal-style union-find over the pixel graph (4/6-adjacency) with edges in
/// increasing max(f(u), f(v)), ties by edge cell. Two components merge iff the
/// one with the higher minimum is shallower than eps at the merge level.
BasinLabeling basin_labels(const ScalarField& field, double eps);

/// Both endpoints of every adjacent pixel pair whose labels differ.
BinaryMask boundary_mask(const BasinLabeling& labeling);

/// Basin ids as a float field (for export).
ScalarField label_field(const BasinLabeling& labeling);

}  // namespace dmt
