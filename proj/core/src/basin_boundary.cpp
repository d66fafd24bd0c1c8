#include "dmt/basin_boundary.hpp"

#include <cmath>

#include "dmt/detail/grid_edges.hpp"
#include "dmt/detail/union_find.hpp"

namespace dmt {

BasinLabeling basin_labels(const ScalarField& field, double eps) {
  const auto edges = detail::sorted_edges(field, Polarity::sublevel);
  const auto st = detail::strides(field.shape());
  const std::size_t n = field.size();

  detail::UnionFind uf(n);
  std::vector<std::size_t> lowest(n);
  for (std::size_t v = 0; v < n; ++v) lowest[v] = v;

  for (const auto& e : edges) {
    const auto u = e.u();
    auto a = uf.find(u), b = uf.find(u + st[static_cast<std::size_t>(e.axis())]);
    if (a == b) continue;
    auto ma = lowest[a], mb = lowest[b];
    if (detail::vertex_before(field, Polarity::sublevel, mb, ma)) std::swap(ma, mb);
    // ma is the elder minimum; the basin of mb dies here with depth e.key - f(mb).
    // Depth 0 means mb is not a strict minimum, so it never forms a basin.
    const double depth = e.key - field[mb];
    if (depth < eps || depth == 0.0) lowest[uf.unite(a, b)] = ma;
  }

  BasinLabeling out;
  out.shape = field.shape();
  out.labels.assign(n, 0);
  std::vector<std::int32_t> id_of_root(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    auto r = uf.find(v);
    if (id_of_root[r] == 0) {
      out.minima.push_back(lowest[r]);
      id_of_root[r] = static_cast<std::int32_t>(out.minima.size());
    }
    out.labels[v] = id_of_root[r];
  }
  detail::for_each_adjacent_pair(field.shape(), [&](std::size_t u, std::size_t v, int) {
    if (out.labels[u] != out.labels[v]) out.separating_edges.emplace_back(u, v);
  });
  return out;
}

BinaryMask boundary_mask(const BasinLabeling& labeling) {
  BinaryMask mask(labeling.shape);
  detail::for_each_adjacent_pair(labeling.shape, [&](std::size_t u, std::size_t v, int) {
    if (labeling.labels[u] != labeling.labels[v]) {
      mask.set(u);
      mask.set(v);
    }
  });
  return mask;
}

ScalarField label_field(const BasinLabeling& labeling) {
  std::vector<double> values(labeling.labels.begin(), labeling.labels.end());
  return ScalarField(labeling.shape, std::move(values));
}

}  // namespace dmt
