#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace dmt::detail {

// Disjoint sets with path halving and union by rank. 32-bit parents keep the
// working set small; this bounds the element count below 2^32.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
    if (n > std::numeric_limits<std::uint32_t>::max()) throw std::length_error("union-find supports < 2^32 elements");
    std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
  }

  std::size_t find(std::size_t i) {
    auto x = static_cast<std::uint32_t>(i);
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Returns the surviving root.
  std::size_t unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = static_cast<std::uint32_t>(a);
    if (rank_[a] == rank_[b]) ++rank_[a];
    return a;
  }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint8_t> rank_;
};

}  // namespace dmt::detail
