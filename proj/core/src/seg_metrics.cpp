#include "dmt/seg_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <thread>
#include <unordered_map>

#include "dmt/cubical.hpp"
#include "dmt/detail/grid_edges.hpp"
#include "dmt/detail/union_find.hpp"

namespace dmt {
namespace {

void require_same_shape(const Shape& a, const Shape& b) {
  if (!(a == b)) throw ShapeError("shapes differ: " + a.to_string() + " vs " + b.to_string());
}

std::int64_t foreground_components(const BinaryMask& mask) {
  detail::UnionFind uf(mask.size());
  detail::for_each_adjacent_pair(mask.shape(), [&](std::size_t u, std::size_t v, int) {
    if (mask[u] && mask[v]) uf.unite(u, v);
  });
  std::int64_t n = 0;
  for (std::size_t v = 0; v < mask.size(); ++v) {
    if (mask[v] && uf.find(v) == v) ++n;
  }
  return n;
}

// Background components under 26-adjacency that do not touch the volume
// border. Each one is a bounded component of the complement of the
// foreground complex, i.e. a void.
std::int64_t enclosed_voids(const BinaryMask& mask) {
  const auto& s = mask.shape();
  const auto nz = static_cast<std::int64_t>(s[0]), ny = static_cast<std::int64_t>(s[1]),
             nx = static_cast<std::int64_t>(s[2]);
  auto at = [&](std::int64_t z, std::int64_t y, std::int64_t x) {
    return static_cast<std::size_t>((z * ny + y) * nx + x);
  };
  detail::UnionFind uf(mask.size());
  for (std::int64_t z = 0; z < nz; ++z) {
    for (std::int64_t y = 0; y < ny; ++y) {
      for (std::int64_t x = 0; x < nx; ++x) {
        if (mask[at(z, y, x)]) continue;
        for (std::int64_t dz = 0; dz <= 1; ++dz) {
          for (std::int64_t dy = -1; dy <= 1; ++dy) {
            for (std::int64_t dx = -1; dx <= 1; ++dx) {
              // Forward half of the 26-neighbourhood.
              if (dz == 0 && (dy < 0 || (dy == 0 && dx <= 0))) continue;
              auto z2 = z + dz, y2 = y + dy, x2 = x + dx;
              if (z2 >= nz || y2 < 0 || y2 >= ny || x2 < 0 || x2 >= nx) continue;
              if (!mask[at(z2, y2, x2)]) uf.unite(at(z, y, x), at(z2, y2, x2));
            }
          }
        }
      }
    }
  }
  std::vector<std::uint8_t> open(mask.size(), 0);
  for (std::int64_t z = 0; z < nz; ++z) {
    for (std::int64_t y = 0; y < ny; ++y) {
      for (std::int64_t x = 0; x < nx; ++x) {
        bool border = z == 0 || y == 0 || x == 0 || z == nz - 1 || y == ny - 1 || x == nx - 1;
        if (border && !mask[at(z, y, x)]) open[uf.find(at(z, y, x))] = 1;
      }
    }
  }
  std::int64_t voids = 0;
  for (std::size_t v = 0; v < mask.size(); ++v) {
    if (!mask[v] && uf.find(v) == v && !open[v]) ++voids;
  }
  return voids;
}

BinaryMask crop(const BinaryMask& mask, const std::vector<std::size_t>& origin, const std::vector<std::size_t>& patch) {
  const auto& s = mask.shape();
  Shape ps(std::span<const std::size_t>(patch.data(), patch.size()));
  std::vector<std::uint8_t> bits(ps.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    auto c = ps.unravel(i);
    std::size_t src = 0;
    for (int a = 0; a < s.ndim(); ++a) src += (c[static_cast<std::size_t>(a)] + origin[static_cast<std::size_t>(a)]) * s.stride(a);
    bits[i] = mask[src] ? 1 : 0;
  }
  return BinaryMask(ps, std::move(bits));
}

struct Contingency {
  std::vector<std::pair<std::pair<std::int64_t, std::int64_t>, double>> joint;
  std::unordered_map<std::int64_t, double> seg_sums;
  std::unordered_map<std::int64_t, double> gt_sums;
  double total = 0.0;
};

Contingency contingency(const RegionLabeling& seg, const RegionLabeling& gt) {
  require_same_shape(seg.shape, gt.shape);
  std::vector<std::pair<std::int64_t, std::int64_t>> cells;
  cells.reserve(gt.labels.size());
  for (std::size_t i = 0; i < gt.labels.size(); ++i) {
    if (gt.labels[i] != 0) cells.emplace_back(seg.labels[i], gt.labels[i]);
  }
  if (cells.empty()) throw UndefinedMetric("ground truth has no labelled region pixels");
  std::sort(cells.begin(), cells.end());
  Contingency t;
  for (std::size_t i = 0; i < cells.size();) {
    std::size_t j = i;
    while (j < cells.size() && cells[j] == cells[i]) ++j;
    double n = static_cast<double>(j - i);
    t.joint.emplace_back(cells[i], n);
    t.seg_sums[cells[i].first] += n;
    t.gt_sums[cells[i].second] += n;
    i = j;
  }
  t.total = static_cast<double>(cells.size());
  return t;
}

}  // namespace

std::int64_t BettiProfile::euler_characteristic() const {
  std::int64_t chi = 0;
  for (std::size_t k = 0; k < betti.size(); ++k) chi += (k % 2 ? -1 : 1) * betti[k];
  return chi;
}

std::int64_t foreground_euler_characteristic(const BinaryMask& mask) {
  CubicalComplex complex(mask.shape());
  std::int64_t chi = 0;
  for (CellIndex c = 0; c < complex.cell_count(); ++c) {
    bool present = true;
    complex.for_each_vertex(c, [&](std::size_t v) { present = present && mask[v]; });
    if (present) chi += complex.dim(c) % 2 ? -1 : 1;
  }
  return chi;
}

BettiProfile betti_numbers(const BinaryMask& mask) {
  const auto chi = foreground_euler_characteristic(mask);
  const auto b0 = foreground_components(mask);
  if (mask.ndim() == 2) return BettiProfile{{b0, b0 - chi}};
  const auto b2 = enclosed_voids(mask);
  return BettiProfile{{b0, b0 + b2 - chi, b2}};
}

std::vector<std::size_t> default_patch(const Shape& shape) {
  const std::size_t side = shape.ndim() == 2 ? 64 : 48;
  std::vector<std::size_t> patch(static_cast<std::size_t>(shape.ndim()));
  for (int a = 0; a < shape.ndim(); ++a) patch[static_cast<std::size_t>(a)] = std::min(side, shape[a]);
  return patch;
}

std::vector<std::vector<std::size_t>> sample_patch_origins(const Shape& shape, const std::vector<std::size_t>& patch,
                                                           std::size_t n_patches, std::uint64_t seed) {
  if (patch.size() != static_cast<std::size_t>(shape.ndim())) {
    throw ShapeError("patch has " + std::to_string(patch.size()) + " axes, volume has " +
                     std::to_string(shape.ndim()));
  }
  for (int a = 0; a < shape.ndim(); ++a) {
    if (patch[static_cast<std::size_t>(a)] == 0 || patch[static_cast<std::size_t>(a)] > shape[a]) {
      throw ShapeError("patch extent " + std::to_string(patch[static_cast<std::size_t>(a)]) + " on axis " +
                       std::to_string(a) + " does not fit volume " + shape.to_string());
    }
  }
  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::size_t>> origins(n_patches, std::vector<std::size_t>(patch.size()));
  for (auto& o : origins) {
    for (int a = 0; a < shape.ndim(); ++a) {
      auto range = shape[a] - patch[static_cast<std::size_t>(a)] + 1;
      o[static_cast<std::size_t>(a)] = static_cast<std::size_t>(rng() % range);
    }
  }
  return origins;
}

double betti_error(const BinaryMask& seg, const BinaryMask& gt, const BettiErrorOptions& options) {
  require_same_shape(seg.shape(), gt.shape());
  auto patch = options.patch.empty() ? default_patch(seg.shape()) : options.patch;
  const int k = options.dim.value_or(seg.ndim() == 2 ? 1 : 2);
  if (k < 0 || k > seg.ndim()) throw std::invalid_argument("Betti index " + std::to_string(k) + " out of range");
  if (options.n_patches == 0) throw std::invalid_argument("n_patches must be positive");

  const auto origins = sample_patch_origins(seg.shape(), patch, options.n_patches, options.seed);
  std::vector<std::int64_t> diffs(origins.size(), 0);
  auto work = [&](std::size_t first, std::size_t step) {
    for (std::size_t i = first; i < origins.size(); i += step) {
      auto bs = betti_numbers(crop(seg, origins[i], patch));
      auto bg = betti_numbers(crop(gt, origins[i], patch));
      diffs[i] = std::abs(bs[k] - bg[k]);
    }
  };
  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, origins.size()));
  if (threads <= 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
  }
  double sum = 0.0;
  for (auto d : diffs) sum += static_cast<double>(d);
  return sum / static_cast<double>(origins.size());
}

RegionLabeling region_labeling(const BinaryMask& boundary) {
  detail::UnionFind uf(boundary.size());
  detail::for_each_adjacent_pair(boundary.shape(), [&](std::size_t u, std::size_t v, int) {
    if (!boundary[u] && !boundary[v]) uf.unite(u, v);
  });
  RegionLabeling out{boundary.shape(), std::vector<std::int64_t>(boundary.size(), 0)};
  std::vector<std::int64_t> id(boundary.size(), 0);
  std::int64_t next = 0;
  for (std::size_t v = 0; v < boundary.size(); ++v) {
    if (boundary[v]) continue;
    auto r = uf.find(v);
    if (id[r] == 0) id[r] = ++next;
    out.labels[v] = id[r];
  }
  return out;
}

double ari(const RegionLabeling& seg, const RegionLabeling& gt) {
  auto t = contingency(seg, gt);
  double joint_sq = 0.0, seg_sq = 0.0, gt_sq = 0.0;
  for (const auto& [key, n] : t.joint) joint_sq += n * n;
  for (const auto& [key, n] : t.seg_sums) seg_sq += n * n;
  for (const auto& [key, n] : t.gt_sums) gt_sq += n * n;
  double precision = joint_sq / seg_sq;
  double recall = joint_sq / gt_sq;
  return 2.0 * precision * recall / (precision + recall);
}

double voi(const RegionLabeling& seg, const RegionLabeling& gt) {
  auto t = contingency(seg, gt);
  double h_seg_given_gt = 0.0, h_gt_given_seg = 0.0;
  for (const auto& [key, n] : t.joint) {
    double p = n / t.total;
    h_seg_given_gt -= p * std::log(n / t.gt_sums.at(key.second));
    h_gt_given_seg -= p * std::log(n / t.seg_sums.at(key.first));
  }
  return h_seg_given_gt + h_gt_given_seg;
}

DiceAccuracy dice_and_accuracy(const BinaryMask& seg, const BinaryMask& gt) {
  require_same_shape(seg.shape(), gt.shape());
  std::size_t both = 0, n_seg = 0, n_gt = 0, agree = 0;
  for (std::size_t i = 0; i < seg.size(); ++i) {
    bool s = seg[i], g = gt[i];
    both += s && g;
    n_seg += s;
    n_gt += g;
    agree += s == g;
  }
  DiceAccuracy out;
  out.dice = n_seg + n_gt == 0 ? 1.0 : 2.0 * static_cast<double>(both) / static_cast<double>(n_seg + n_gt);
  out.accuracy = static_cast<double>(agree) / static_cast<double>(seg.size());
  return out;
}

}  // namespace dmt
