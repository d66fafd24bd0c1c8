#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dmt/field.hpp"

namespace dmt {

/// Betti numbers b0..b_ndim of the foreground cubical complex (a cell is
/// present iff all of its vertices are foreground, i.e. 4/6-connectivity).
struct BettiProfile {
  std::vector<std::int64_t> betti;

  std::int64_t operator[](int k) const { return betti.at(static_cast<std::size_t>(k)); }
  std::int64_t euler_characteristic() const;

  friend bool operator==(const BettiProfile&, const BettiProfile&) = default;
};

BettiProfile betti_numbers(const BinaryMask& mask);
/// Euler characteristic of the foreground cubical complex.
std::int64_t foreground_euler_characteristic(const BinaryMask& mask);

struct BettiErrorOptions {
  /// Patch extents per axis; empty means 64 per axis in 2D, 48 in 3D, capped
  /// to the volume.
  std::vector<std::size_t> patch;
  std::size_t n_patches = 100;
  std::uint64_t seed = 0;
  /// Betti index compared; empty means 1 in 2D and 2 in 3D.
  std::optional<int> dim;
  /// Worker threads for patch evaluation; 0 means hardware concurrency.
  unsigned threads = 1;
};

/// Mean |b_k(seg patch) - b_k(gt patch)| over randomly placed aligned patches.
/// Patch origins are drawn serially from a seeded mt19937_64, so the value
/// depends only on the inputs and options.
double betti_error(const BinaryMask& seg, const BinaryMask& gt, const BettiErrorOptions& options);

/// Patch origins used by betti_error (exposed for reproducibility checks).
std::vector<std::vector<std::size_t>> sample_patch_origins(const Shape& shape, const std::vector<std::size_t>& patch,
                                                           std::size_t n_patches, std::uint64_t seed);
std::vector<std::size_t> default_patch(const Shape& shape);

/// Label 0 marks boundary pixels; positive labels are the connected
/// components of non-boundary pixels.
struct RegionLabeling {
  Shape shape;
  std::vector<std::int64_t> labels;
};

/// Components of the unset pixels of `boundary` under 4/6-adjacency, numbered
/// from 1 in raster order of first appearance.
RegionLabeling region_labeling(const BinaryMask& boundary);

/// Raised when ARI/VOI are undefined (ground truth has no labelled pixel).
class UndefinedMetric : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Adapted Rand F-score over pixels whose ground-truth label is nonzero.
double ari(const RegionLabeling& seg, const RegionLabeling& gt);
/// Variation of information H(S|G) + H(G|S) in nats, same pixel restriction.
double voi(const RegionLabeling& seg, const RegionLabeling& gt);

struct DiceAccuracy {
  double dice = 0.0;
  double accuracy = 0.0;
};

DiceAccuracy dice_and_accuracy(const BinaryMask& seg, const BinaryMask& gt);

}  // namespace dmt
