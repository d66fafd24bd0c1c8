#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dmt/cubical.hpp"
#include "dmt/field.hpp"
#include "dmt/persistence.hpp"

namespace dmt {

/// Discrete gradient vector field: a partial matching of cells into V-pairs
/// (tau, sigma) with sigma a codimension-1 face of tau. Unmatched cells are
/// critical.
class GradientField {
 public:
  explicit GradientField(CubicalComplex complex);

  const CubicalComplex& complex() const { return complex_; }

  bool is_critical(CellIndex c) const { return partner_[static_cast<std::size_t>(c)] < 0; }
  std::optional<CellIndex> partner(CellIndex c) const {
    auto p = partner_[static_cast<std::size_t>(c)];
    return p < 0 ? std::nullopt : std::optional<CellIndex>(p);
  }

  /// Adds the V-pair (higher, lower). Both cells must be critical and
  /// `lower` must be a face of `higher`.
  void add_pair(CellIndex higher, CellIndex lower);
  /// Removes the V-pair containing `c`, if any.
  void remove_pair(CellIndex c);

  std::size_t pair_count() const { return pair_count_; }
  /// V-pairs as (higher, lower), ordered by the lower cell.
  std::vector<std::pair<CellIndex, CellIndex>> pairs() const;
  /// Number of critical cells per dimension 0..ndim.
  std::vector<std::int64_t> critical_counts() const;

  /// Every cell is in at most one pair and each pair is a face incidence.
  bool is_matching() const;
  /// No closed V-path exists.
  bool is_acyclic() const;

 private:
  CubicalComplex complex_;
  std::vector<CellIndex> partner_;
  std::size_t pair_count_ = 0;
};

struct CancellationStats {
  std::size_t cancelled = 0;
  /// Pairs below the threshold that had no unique V-path.
  std::size_t skipped = 0;
};

enum class StructureKind { skeleton1, boundary2 };

/// Union of the V-paths that end at one critical edge.
struct MorseStructure {
  CellIndex saddle = 0;
  double persistence = 0.0;
  /// The saddle, then the path from each of its endpoints in face order.
  std::vector<CellIndex> cells;
  StructureKind kind = StructureKind::skeleton1;
};

/// Every cell critical, no V-pairs.
GradientField init_trivial_field(const CubicalComplex& complex);

/// Morse cancellation of vertex-edge persistence pairs with persistence < eps,
/// taken in persistence_order(). A pair is cancelled when both cells are still
/// critical and exactly one V-path joins the edge to the vertex; the V-pairs
/// along that path are reversed. Other pairs are skipped.
GradientField cancel_below(GradientField field, std::span<const PersistencePair> pairs, double eps,
                           CancellationStats* stats = nullptr);

/// Traces the 1-stable manifold of every surviving critical edge that is the
/// death of a dimension-0 pair with persistence >= eps.
std::vector<MorseStructure> trace_skeleton(const GradientField& field, std::span<const PersistencePair> pairs,
                                           double eps);

/// Pixels touched by any cell of the given structures.
BinaryMask rasterize(const CubicalComplex& complex, std::span<const MorseStructure> structures);

struct SkeletonResult {
  BinaryMask mask;
  std::size_t structures = 0;
  CancellationStats stats;
};

/// Superlevel dimension-0 pairs, cancellation below eps, tracing and
/// rasterization of the pruned ridge skeleton S1(eps).
SkeletonResult extract_skeleton(const ScalarField& field, double eps);
BinaryMask skeleton_mask(const ScalarField& field, double eps);

}  // namespace dmt
