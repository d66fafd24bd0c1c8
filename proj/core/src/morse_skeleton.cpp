#include "dmt/morse_skeleton.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

#include "dmt/detail/grid_edges.hpp"
#include "dmt/detail/union_find.hpp"

namespace dmt {
namespace {

std::pair<std::size_t, std::size_t> edge_endpoints(const CubicalComplex& complex, CellIndex edge) {
  CellIndex ends[2];
  int n = 0;
  complex.for_each_face(edge, [&](CellIndex f) { ends[n++] = f; });
  return {complex.vertex_of(ends[0]), complex.vertex_of(ends[1])};
}

bool is_face(const CubicalComplex& complex, CellIndex face, CellIndex cell) {
  bool found = false;
  complex.for_each_face(cell, [&](CellIndex f) { found = found || f == face; });
  return found;
}

}  // namespace

GradientField::GradientField(CubicalComplex complex)
    : complex_(std::move(complex)), partner_(static_cast<std::size_t>(complex_.cell_count()), -1) {}

void GradientField::add_pair(CellIndex higher, CellIndex lower) {
  if (!is_critical(higher) || !is_critical(lower)) throw std::logic_error("V-pair cell is already matched");
  if (!is_face(complex_, lower, higher)) throw std::logic_error("V-pair cells are not incident");
  partner_[static_cast<std::size_t>(higher)] = lower;
  partner_[static_cast<std::size_t>(lower)] = higher;
  ++pair_count_;
}

void GradientField::remove_pair(CellIndex c) {
  auto p = partner_[static_cast<std::size_t>(c)];
  if (p < 0) return;
  partner_[static_cast<std::size_t>(c)] = -1;
  partner_[static_cast<std::size_t>(p)] = -1;
  --pair_count_;
}

std::vector<std::pair<CellIndex, CellIndex>> GradientField::pairs() const {
  std::vector<std::pair<CellIndex, CellIndex>> out;
  for (CellIndex c = 0; c < complex_.cell_count(); ++c) {
    auto p = partner_[static_cast<std::size_t>(c)];
    if (p >= 0 && complex_.dim(p) > complex_.dim(c)) out.emplace_back(p, c);
  }
  return out;
}

std::vector<std::int64_t> GradientField::critical_counts() const {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(complex_.ndim()) + 1, 0);
  for (CellIndex c = 0; c < complex_.cell_count(); ++c) {
    if (is_critical(c)) ++counts[static_cast<std::size_t>(complex_.dim(c))];
  }
  return counts;
}

bool GradientField::is_matching() const {
  std::size_t seen = 0;
  for (CellIndex c = 0; c < complex_.cell_count(); ++c) {
    auto p = partner_[static_cast<std::size_t>(c)];
    if (p < 0) continue;
    if (partner_[static_cast<std::size_t>(p)] != c) return false;
    int dc = complex_.dim(c), dp = complex_.dim(p);
    if (dp == dc + 1) {
      if (!is_face(complex_, c, p)) return false;
      ++seen;
    } else if (dc != dp + 1) {
      return false;
    }
  }
  return seen == pair_count_;
}

bool GradientField::is_acyclic() const {
  // Nodes are cells matched upward. A V-path step goes from sigma to its
  // partner tau and then to a face sigma' != sigma of tau that is itself
  // matched upward.
  const auto n = static_cast<std::size_t>(complex_.cell_count());
  enum : std::uint8_t { white, grey, black };
  std::vector<std::uint8_t> color(n, white);
  auto upward = [&](CellIndex c) {
    auto p = partner_[static_cast<std::size_t>(c)];
    return p >= 0 && complex_.dim(p) == complex_.dim(c) + 1;
  };
  auto successors = [&](CellIndex c) {
    std::vector<CellIndex> out;
    auto tau = partner_[static_cast<std::size_t>(c)];
    complex_.for_each_face(tau, [&](CellIndex f) {
      if (f != c && upward(f)) out.push_back(f);
    });
    return out;
  };

  struct Frame {
    CellIndex cell;
    std::vector<CellIndex> next;
    std::size_t i;
  };
  std::vector<Frame> stack;
  for (CellIndex start = 0; start < complex_.cell_count(); ++start) {
    if (color[static_cast<std::size_t>(start)] != white || !upward(start)) continue;
    color[static_cast<std::size_t>(start)] = grey;
    stack.push_back({start, successors(start), 0});
    while (!stack.empty()) {
      auto& top = stack.back();
      if (top.i == top.next.size()) {
        color[static_cast<std::size_t>(top.cell)] = black;
        stack.pop_back();
        continue;
      }
      auto nxt = top.next[top.i++];
      auto& col = color[static_cast<std::size_t>(nxt)];
      if (col == grey) return false;
      if (col == white) {
        col = grey;
        stack.push_back({nxt, successors(nxt), 0});
      }
    }
  }
  return true;
}

GradientField init_trivial_field(const CubicalComplex& complex) { return GradientField(complex); }

namespace {

// Vertex-edge V-pairs form a forest in which every tree holds exactly one
// critical vertex (its root), and each vertex is matched to the edge leading
// towards that root. Trees only ever merge under cancellation, so membership
// lives in a union-find and orientation is rebuilt once at the end.
struct VertexForest {
  explicit VertexForest(std::size_t n) : trees(n), root(n) {
    for (std::size_t v = 0; v < n; ++v) root[v] = v;
  }
  detail::UnionFind trees;
  std::vector<std::size_t> root;  // valid at tree representatives
  std::vector<CellIndex> edges;
};

struct Candidate {
  double persistence;
  double death_key;
  CellIndex edge;
  std::size_t vertex;
};

// persistence_order restricted to vertex-edge pairs.
void sort_candidates(std::vector<Candidate>& todo) {
  std::sort(todo.begin(), todo.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.persistence, a.death_key, a.edge, a.vertex) < std::tie(b.persistence, b.death_key, b.edge, b.vertex);
  });
}

// Cancels candidates in order; `edge_free(e)` says whether e is critical.
// Cancelled edges are appended to the forest and flagged in `taken`.
template <class EdgeFree>
CancellationStats cancel_in_forest(const CubicalComplex& complex, VertexForest& forest,
                                   const std::vector<Candidate>& todo, std::vector<std::uint8_t>& taken,
                                   EdgeFree&& edge_free) {
  CancellationStats stats;
  for (const auto& t : todo) {
    const auto vertex = t.vertex;
    bool vertex_critical = forest.root[forest.trees.find(vertex)] == vertex;
    bool edge_critical = edge_free(t.edge) && !taken[static_cast<std::size_t>(t.edge)];
    auto [a, b] = edge_endpoints(complex, t.edge);
    auto ta = forest.trees.find(a), tb = forest.trees.find(b);
    // From the edge, the V-path through endpoint x ends at root(x); the path
    // to `vertex` is unique iff exactly one endpoint's tree is rooted there.
    bool unique = ta != tb && (forest.root[ta] == vertex || forest.root[tb] == vertex);
    if (!vertex_critical || !edge_critical || !unique) {
      ++stats.skipped;
      continue;
    }
    auto survivor = forest.root[ta] == vertex ? forest.root[tb] : forest.root[ta];
    forest.root[forest.trees.unite(ta, tb)] = survivor;
    forest.edges.push_back(t.edge);
    taken[static_cast<std::size_t>(t.edge)] = 1;
    ++stats.cancelled;
  }
  return stats;
}

// For every vertex, the forest edge leading towards its root (-1 at roots).
std::vector<CellIndex> orient(const CubicalComplex& complex, VertexForest& forest) {
  const std::size_t nv = forest.root.size();
  std::vector<std::size_t> offset(nv + 1, 0);
  std::vector<std::pair<std::size_t, std::size_t>> ends(forest.edges.size());
  for (std::size_t i = 0; i < forest.edges.size(); ++i) {
    ends[i] = edge_endpoints(complex, forest.edges[i]);
    ++offset[ends[i].first + 1];
    ++offset[ends[i].second + 1];
  }
  for (std::size_t v = 0; v < nv; ++v) offset[v + 1] += offset[v];
  std::vector<std::size_t> adj(offset[nv]), fill(offset.begin(), offset.end() - 1);
  for (std::size_t i = 0; i < forest.edges.size(); ++i) {
    adj[fill[ends[i].first]++] = i;
    adj[fill[ends[i].second]++] = i;
  }
  std::vector<CellIndex> down(nv, -1);
  std::vector<std::uint8_t> seen(nv, 0);
  std::vector<std::size_t> queue;
  for (std::size_t r = 0; r < nv; ++r) {
    if (forest.root[forest.trees.find(r)] != r) continue;
    seen[r] = 1;
    queue.assign(1, r);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      auto x = queue[head];
      for (auto k = offset[x]; k < offset[x + 1]; ++k) {
        auto i = adj[k];
        auto y = ends[i].first == x ? ends[i].second : ends[i].first;
        if (seen[y]) continue;
        seen[y] = 1;
        down[y] = forest.edges[i];
        queue.push_back(y);
      }
    }
  }
  return down;
}

}  // namespace

GradientField cancel_below(GradientField field, std::span<const PersistencePair> pairs, double eps,
                           CancellationStats* stats) {
  const auto& complex = field.complex();
  const std::size_t nv = complex.shape().size();

  VertexForest forest(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    if (auto e = field.partner(complex.vertex_cell(v))) {
      auto [a, b] = edge_endpoints(complex, *e);
      forest.trees.unite(a, b);
      forest.edges.push_back(*e);
    }
  }
  for (std::size_t v = 0; v < nv; ++v) {
    if (field.is_critical(complex.vertex_cell(v))) forest.root[forest.trees.find(v)] = v;
  }

  std::vector<Candidate> todo;
  for (const auto& p : pairs) {
    if (p.essential() || p.dim != 0 || p.persistence >= eps) continue;
    todo.push_back({p.persistence, filtration_key(p.death_rho, p.polarity), complex.index(*p.death),
                    complex.vertex_of(complex.index(p.birth))});
  }
  sort_candidates(todo);
  std::vector<std::uint8_t> taken(static_cast<std::size_t>(complex.cell_count()), 0);
  auto local = cancel_in_forest(complex, forest, todo, taken, [&](CellIndex e) { return field.is_critical(e); });

  auto down = orient(complex, forest);
  for (std::size_t v = 0; v < nv; ++v) field.remove_pair(complex.vertex_cell(v));
  for (std::size_t v = 0; v < nv; ++v) {
    if (down[v] >= 0) field.add_pair(down[v], complex.vertex_cell(v));
  }
  if (stats) *stats = local;
  return field;
}

std::vector<MorseStructure> trace_skeleton(const GradientField& field, std::span<const PersistencePair> pairs,
                                           double eps) {
  const auto& complex = field.complex();
  const auto max_steps = static_cast<std::size_t>(complex.cell_count());
  std::vector<MorseStructure> out;
  for (const auto& p : pairs) {
    if (p.essential() || p.dim != 0 || p.persistence < eps) continue;
    auto saddle = complex.index(*p.death);
    if (!field.is_critical(saddle)) continue;
    MorseStructure s;
    s.saddle = saddle;
    s.persistence = p.persistence;
    s.cells.push_back(saddle);
    complex.for_each_face(saddle, [&](CellIndex start) {
      auto cur = start;
      for (std::size_t step = 0;; ++step) {
        if (step > max_steps) throw std::logic_error("V-path does not terminate; gradient field has a cycle");
        s.cells.push_back(cur);
        auto edge = field.partner(cur);
        if (!edge) break;
        s.cells.push_back(*edge);
        CellIndex next = cur;
        complex.for_each_face(*edge, [&](CellIndex f) {
          if (f != cur) next = f;
        });
        cur = next;
      }
    });
    out.push_back(std::move(s));
  }
  return out;
}

BinaryMask rasterize(const CubicalComplex& complex, std::span<const MorseStructure> structures) {
  BinaryMask mask(complex.shape());
  for (const auto& s : structures) {
    for (auto c : s.cells) complex.for_each_vertex(c, [&](std::size_t v) { mask.set(v); });
  }
  return mask;
}

SkeletonResult extract_skeleton(const ScalarField& field, double eps) {
  CubicalComplex complex(field.shape());
  const auto pairs = detail::vertex_edge_pairs(field, complex, Polarity::superlevel);
  SkeletonResult result{BinaryMask(field.shape()), 0, {}};

  // Same as cancel_below on the trivial field, without materializing it.
  VertexForest forest(field.size());
  std::vector<Candidate> todo;
  for (const auto& p : pairs) {
    if (p.edge >= 0 && p.persistence < eps) {
      todo.push_back({p.persistence, filtration_key(p.death_rho, Polarity::superlevel), p.edge, p.vertex});
    }
  }
  sort_candidates(todo);
  std::vector<std::uint8_t> taken(static_cast<std::size_t>(complex.cell_count()), 0);
  result.stats = cancel_in_forest(complex, forest, todo, taken, [](CellIndex) { return true; });
  const auto down = orient(complex, forest);

  // Same pixels as rasterize(trace_skeleton(...)); a walk stops early once it
  // reaches a pixel whose onward path has already been marked.
  for (const auto& p : pairs) {
    if (p.edge < 0 || p.persistence < eps || taken[static_cast<std::size_t>(p.edge)]) continue;
    ++result.structures;
    auto [a, b] = edge_endpoints(complex, p.edge);
    for (auto x : {a, b}) {
      while (!result.mask[x]) {
        result.mask.set(x);
        if (down[x] < 0) break;
        auto [s, t] = edge_endpoints(complex, down[x]);
        x = s == x ? t : s;
      }
    }
  }
  return result;
}

BinaryMask skeleton_mask(const ScalarField& field, double eps) { return extract_skeleton(field, eps).mask; }

}  // namespace dmt
