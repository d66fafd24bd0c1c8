#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace dmt::detail {

// Unsigned image of a finite double with the same order; -0.0 maps like 0.0.
inline std::uint64_t ordered_bits(double x) {
  auto b = std::bit_cast<std::uint64_t>(x + 0.0);
  return (b >> 63) ? ~b : b | (std::uint64_t{1} << 63);
}

// Stable LSD radix sort of `items` by key(item) -> uint64. Digits that are
// constant across all keys are skipped.
template <class T, class Key>
void radix_sort(std::vector<T>& items, Key&& key) {
  constexpr int kBits = 8;
  constexpr std::size_t kBuckets = std::size_t{1} << kBits;
  const std::size_t n = items.size();
  if (n < 2) return;
  std::vector<std::uint64_t> keys(n), key_buf(n);
  std::uint64_t varying = 0;
  for (std::size_t i = 0; i < n; ++i) {
    keys[i] = key(items[i]);
    varying |= keys[i] ^ keys[0];
  }
  std::vector<T> item_buf(n);
  for (int shift = 0; shift < 64; shift += kBits) {
    if (((varying >> shift) & (kBuckets - 1)) == 0) continue;
    std::array<std::size_t, kBuckets + 1> start{};
    for (auto k : keys) ++start[((k >> shift) & (kBuckets - 1)) + 1];
    for (std::size_t b = 0; b < kBuckets; ++b) start[b + 1] += start[b];
    for (std::size_t i = 0; i < n; ++i) {
      auto pos = start[(keys[i] >> shift) & (kBuckets - 1)]++;
      key_buf[pos] = keys[i];
      item_buf[pos] = std::move(items[i]);
    }
    keys.swap(key_buf);
    items.swap(item_buf);
  }
}

}  // namespace dmt::detail
