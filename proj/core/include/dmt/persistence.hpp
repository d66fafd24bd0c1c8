#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dmt/cubical.hpp"
#include "dmt/field.hpp"

namespace dmt {

struct FiltrationEntry {
  CellIndex cell;
  double rho;
  int dim;
};

/// Cells of a (sub)complex in filtration order. The order key is
/// (rho in the filtration direction, dimension, CellIndex), a total order in
/// which faces precede cofaces.
class Filtration {
 public:
  Filtration(CubicalComplex complex, Polarity polarity, std::vector<FiltrationEntry> entries)
      : complex_(std::move(complex)), polarity_(polarity), entries_(std::move(entries)) {}

  const CubicalComplex& complex() const { return complex_; }
  Polarity polarity() const { return polarity_; }
  const std::vector<FiltrationEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  CubicalComplex complex_;
  Polarity polarity_;
  std::vector<FiltrationEntry> entries_;
};

struct PersistencePair {
  CellId birth;
  std::optional<CellId> death;  // empty for essential classes
  double birth_rho = 0.0;
  double death_rho = 0.0;
  /// |rho(birth) - rho(death)|, +inf for essential classes.
  double persistence = 0.0;
  int dim = 0;
  Polarity polarity = Polarity::superlevel;

  bool essential() const { return !death.has_value(); }

  friend bool operator==(const PersistencePair& a, const PersistencePair& b) {
    return a.birth == b.birth && a.death == b.death && a.persistence == b.persistence && a.dim == b.dim &&
           a.polarity == b.polarity;
  }
};

/// Signed sort key: smaller keys enter the filtration first.
inline double filtration_key(double rho, Polarity polarity) {
  return polarity == Polarity::superlevel ? -rho : rho;
}

/// Strict total order on pairs: persistence ascending, then the order key of
/// the death cell (essentials last), then the birth cell.
bool persistence_order(const PersistencePair& a, const PersistencePair& b);

Filtration build_filtration(const ScalarField& field, Polarity polarity);

/// Constant filtration on the complex of foreground cells (a cell is present
/// iff all of its vertices are set). Order is by (dimension, CellIndex).
Filtration binary_filtration(const BinaryMask& mask);

/// Column reduction of the Z/2 boundary matrix with clearing. Pairs are
/// returned sorted by (dim, birth position in the filtration).
std::vector<PersistencePair> reduce(const Filtration& filtration);

/// Dimension-0 pairs by union-find over vertices with edges taken in
/// filtration order; the younger component dies at each merge. Same output as
/// the dim-0 subset of reduce().
std::vector<PersistencePair> zero_dim_pairs(const ScalarField& field, Polarity polarity);

/// Essential classes per dimension, i.e. the Betti numbers of the filtered complex.
std::vector<std::int64_t> essential_counts(const std::vector<PersistencePair>& pairs, int ndim);

}  // namespace dmt
