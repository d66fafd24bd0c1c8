#include "dmt/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "dmt/detail/grid_edges.hpp"
#include "dmt/detail/radix_sort.hpp"
#include "dmt/detail/union_find.hpp"

namespace dmt {

namespace detail {

std::vector<GridEdge> sorted_edges(const ScalarField& field, Polarity polarity) {
  const auto& shape = field.shape();
  const auto st = strides(shape);
  std::vector<GridEdge> edges;
  std::size_t n_edges = 0;
  for (int a = 0; a < field.ndim(); ++a) n_edges += field.size() / shape[a] * (shape[a] - 1);
  edges.reserve(n_edges);
  // Generated in cell order, so a stable sort on the key gives (key, cell).
  for_each_edge_in_cell_order(shape, [&](std::size_t u, int axis) {
    const double fu = field[u], fv = field[u + st[static_cast<std::size_t>(axis)]];
    const double r = polarity == Polarity::superlevel ? std::min(fu, fv) : std::max(fu, fv);
    edges.push_back({filtration_key(r, polarity), (static_cast<std::uint64_t>(u) << 2) | static_cast<std::uint64_t>(axis)});
  });
  radix_sort(edges, [](const GridEdge& e) { return ordered_bits(e.key); });
  return edges;
}

std::vector<VertexEdgePair> vertex_edge_pairs(const ScalarField& field, const CubicalComplex& complex,
                                              Polarity polarity) {
  const auto edges = sorted_edges(field, polarity);
  const auto st = strides(field.shape());
  UnionFind uf(field.size());
  std::vector<std::size_t> eldest(field.size());
  for (std::size_t v = 0; v < eldest.size(); ++v) eldest[v] = v;

  std::vector<VertexEdgePair> out;
  out.reserve(field.size());
  for (const auto& e : edges) {
    const auto u = e.u();
    auto a = uf.find(u), b = uf.find(u + st[static_cast<std::size_t>(e.axis())]);
    if (a == b) continue;
    auto ea = eldest[a], eb = eldest[b];
    bool a_older = vertex_before(field, polarity, ea, eb);
    auto young = a_older ? eb : ea;
    double death_rho = polarity == Polarity::superlevel ? -e.key : e.key;
    out.push_back({young, complex.edge_cell(u, e.axis()), field[young], death_rho, std::abs(field[young] - death_rho)});
    eldest[uf.unite(a, b)] = a_older ? ea : eb;
  }
  const auto inf = std::numeric_limits<double>::infinity();
  auto root = eldest[uf.find(0)];
  out.push_back({root, -1, field[root], inf, inf});
  return out;
}

}  // namespace detail

namespace {

void require_dims(const ScalarField& field) {
  if (field.ndim() < 2 || field.ndim() > 3) throw ShapeError("unsupported ndim " + std::to_string(field.ndim()));
}

PersistencePair make_pair(const CubicalComplex& complex, CellIndex birth, std::optional<CellIndex> death,
                          double birth_rho, double death_rho, int dim, Polarity polarity) {
  PersistencePair p;
  p.birth = complex.cell(birth);
  p.birth_rho = birth_rho;
  p.dim = dim;
  p.polarity = polarity;
  if (death) {
    p.death = complex.cell(*death);
    p.death_rho = death_rho;
    p.persistence = std::abs(birth_rho - death_rho);
  } else {
    p.death_rho = std::numeric_limits<double>::infinity();
    p.persistence = std::numeric_limits<double>::infinity();
  }
  return p;
}

// Sorted sparse Z/2 column: target ^= other.
void add_column(std::vector<std::int64_t>& target, const std::vector<std::int64_t>& other,
                std::vector<std::int64_t>& scratch) {
  scratch.clear();
  std::set_symmetric_difference(target.begin(), target.end(), other.begin(), other.end(),
                                std::back_inserter(scratch));
  target.swap(scratch);
}

}  // namespace

bool persistence_order(const PersistencePair& a, const PersistencePair& b) {
  if (a.persistence != b.persistence) return a.persistence < b.persistence;
  if (a.essential() != b.essential()) return b.essential();
  if (!a.essential()) {
    double ka = filtration_key(a.death_rho, a.polarity);
    double kb = filtration_key(b.death_rho, b.polarity);
    if (ka != kb) return ka < kb;
    int da = a.death->dim(), db = b.death->dim();
    if (da != db) return da < db;
    if (*a.death != *b.death) return *a.death < *b.death;
  }
  return a.birth < b.birth;
}

Filtration build_filtration(const ScalarField& field, Polarity polarity) {
  require_dims(field);
  CubicalComplex complex(field.shape());
  std::vector<FiltrationEntry> entries;
  entries.reserve(static_cast<std::size_t>(complex.cell_count()));
  for (CellIndex c = 0; c < complex.cell_count(); ++c) {
    entries.push_back({c, rho(complex, c, field, polarity), complex.dim(c)});
  }
  std::sort(entries.begin(), entries.end(), [polarity](const FiltrationEntry& a, const FiltrationEntry& b) {
    double ka = filtration_key(a.rho, polarity), kb = filtration_key(b.rho, polarity);
    return std::tie(ka, a.dim, a.cell) < std::tie(kb, b.dim, b.cell);
  });
  return Filtration(std::move(complex), polarity, std::move(entries));
}

Filtration binary_filtration(const BinaryMask& mask) {
  CubicalComplex complex(mask.shape());
  std::vector<FiltrationEntry> entries;
  for (CellIndex c = 0; c < complex.cell_count(); ++c) {
    bool present = true;
    complex.for_each_vertex(c, [&](std::size_t v) { present = present && mask[v]; });
    if (present) entries.push_back({c, 0.0, complex.dim(c)});
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const FiltrationEntry& a, const FiltrationEntry& b) { return a.dim < b.dim; });
  return Filtration(std::move(complex), Polarity::sublevel, std::move(entries));
}

std::vector<PersistencePair> reduce(const Filtration& filtration) {
  const auto& complex = filtration.complex();
  const auto& entries = filtration.entries();
  const auto n = static_cast<std::int64_t>(entries.size());

  std::vector<std::int64_t> position(static_cast<std::size_t>(complex.cell_count()), -1);
  int top_dim = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    position[static_cast<std::size_t>(entries[static_cast<std::size_t>(i)].cell)] = i;
    top_dim = std::max(top_dim, entries[static_cast<std::size_t>(i)].dim);
  }

  std::vector<std::vector<std::int64_t>> columns(static_cast<std::size_t>(n));
  std::vector<std::int64_t> pivot_owner(static_cast<std::size_t>(n), -1);  // row -> column with that low
  std::vector<std::int64_t> partner(static_cast<std::size_t>(n), -1);
  std::vector<std::int64_t> column, scratch;

  // Highest dimension first so that each pivot found clears the column of its
  // row, which is known to reduce to zero.
  for (int d = top_dim; d >= 1; --d) {
    for (std::int64_t j = 0; j < n; ++j) {
      const auto& e = entries[static_cast<std::size_t>(j)];
      if (e.dim != d || partner[static_cast<std::size_t>(j)] >= 0) continue;
      column.clear();
      complex.for_each_face(e.cell, [&](CellIndex f) {
        auto p = position[static_cast<std::size_t>(f)];
        if (p < 0) throw std::logic_error("filtration is not closed under faces");
        if (p >= j) throw std::logic_error("filtration places a face after its coface");
        column.push_back(p);
      });
      std::sort(column.begin(), column.end());
      while (!column.empty()) {
        auto owner = pivot_owner[static_cast<std::size_t>(column.back())];
        if (owner < 0) break;
        add_column(column, columns[static_cast<std::size_t>(owner)], scratch);
      }
      if (!column.empty()) {
        auto low = column.back();
        pivot_owner[static_cast<std::size_t>(low)] = j;
        partner[static_cast<std::size_t>(low)] = j;
        partner[static_cast<std::size_t>(j)] = low;
        columns[static_cast<std::size_t>(j)] = column;
      }
    }
  }

  std::vector<PersistencePair> pairs;
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& birth = entries[static_cast<std::size_t>(i)];
    auto j = partner[static_cast<std::size_t>(i)];
    if (j >= 0 && j < i) continue;  // i is a death cell
    if (j < 0) {
      pairs.push_back(make_pair(complex, birth.cell, std::nullopt, birth.rho, 0.0, birth.dim, filtration.polarity()));
    } else {
      const auto& death = entries[static_cast<std::size_t>(j)];
      pairs.push_back(make_pair(complex, birth.cell, death.cell, birth.rho, death.rho, birth.dim, filtration.polarity()));
    }
  }
  // Already in birth order; group by dimension.
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const PersistencePair& a, const PersistencePair& b) { return a.dim < b.dim; });
  return pairs;
}

std::vector<PersistencePair> zero_dim_pairs(const ScalarField& field, Polarity polarity) {
  require_dims(field);
  CubicalComplex complex(field.shape());
  auto raw = detail::vertex_edge_pairs(field, complex, polarity);
  std::sort(raw.begin(), raw.end(), [&](const detail::VertexEdgePair& x, const detail::VertexEdgePair& y) {
    return detail::vertex_before(field, polarity, x.vertex, y.vertex);
  });
  std::vector<PersistencePair> pairs;
  pairs.reserve(raw.size());
  for (const auto& r : raw) {
    auto birth_cell = complex.vertex_cell(r.vertex);
    if (r.edge >= 0) {
      pairs.push_back(make_pair(complex, birth_cell, r.edge, r.birth_rho, r.death_rho, 0, polarity));
    } else {
      pairs.push_back(make_pair(complex, birth_cell, std::nullopt, r.birth_rho, 0.0, 0, polarity));
    }
  }
  return pairs;
}

std::vector<std::int64_t> essential_counts(const std::vector<PersistencePair>& pairs, int ndim) {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(ndim) + 1, 0);
  for (const auto& p : pairs) {
    if (p.essential()) ++counts[static_cast<std::size_t>(p.dim)];
  }
  return counts;
}

}  // namespace dmt
