#include <doctest.h>

#include <cmath>
#include <random>

#include "dmt/seg_metrics.hpp"
#include "support/oracles.hpp"

using namespace dmt;

namespace {

BinaryMask mask_from(const Shape& s, std::initializer_list<int> bits) {
  std::vector<std::uint8_t> b;
  for (int x : bits) b.push_back(static_cast<std::uint8_t>(x));
  return BinaryMask(s, b);
}

BinaryMask hollow_shell() {
  BinaryMask m(Shape{3, 3, 3}, true);
  m.set(13, false);
  return m;
}

RegionLabeling labels(const Shape& s, std::vector<std::int64_t> l) { return RegionLabeling{s, std::move(l)}; }

}  // namespace

TEST_CASE("Betti numbers of small masks") {
  CHECK(betti_numbers(BinaryMask(Shape{3, 3}, true)).betti == std::vector<std::int64_t>{1, 0});
  auto ring = mask_from(Shape{3, 3}, {1, 1, 1, 1, 0, 1, 1, 1, 1});
  CHECK(foreground_euler_characteristic(ring) == 0);
  CHECK(betti_numbers(ring).betti == std::vector<std::int64_t>{1, 1});
  CHECK(betti_numbers(hollow_shell()).betti == std::vector<std::int64_t>{1, 0, 1});
  CHECK(foreground_euler_characteristic(hollow_shell()) == 2);
  CHECK(betti_numbers(BinaryMask(Shape{4, 4})).betti == std::vector<std::int64_t>{0, 0});
  // Diagonal neighbours are not connected under 4-adjacency.
  CHECK(betti_numbers(mask_from(Shape{2, 2}, {1, 0, 0, 1})).betti == std::vector<std::int64_t>{2, 0});
  // A solid torus in 3D: one tunnel.
  BinaryMask torus(Shape{3, 3, 3}, false);
  for (std::size_t z = 0; z < 3; ++z) {
    for (std::size_t i = 0; i < 9; ++i) {
      if (i != 4) torus.set(z * 9 + i);
    }
  }
  CHECK(betti_numbers(torus).betti == std::vector<std::int64_t>{1, 1, 0});
}

TEST_CASE("Betti numbers agree with the rank oracle") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 60; ++t) {
    std::bernoulli_distribution coin(t % 2 ? 0.75 : 0.55);
    auto shape = testing::random_shape(rng, t % 3 ? 2 : 3, t % 3 ? 9 : 6);
    std::vector<std::uint8_t> bits(shape.size());
    for (auto& b : bits) b = coin(rng);
    BinaryMask m(shape, bits);
    auto b = betti_numbers(m);
    CHECK(b.betti == testing::betti_by_rank(m));
    CHECK(b.euler_characteristic() == foreground_euler_characteristic(m));
  }
}

TEST_CASE("betti_error") {
  std::mt19937_64 rng(9);
  std::bernoulli_distribution coin(0.6);
  std::vector<std::uint8_t> bits(40 * 40);
  for (auto& b : bits) b = coin(rng);
  BinaryMask seg(Shape{40, 40}, bits);
  BettiErrorOptions opt;
  opt.seed = 42;
  opt.patch = {16, 16};
  opt.n_patches = 30;
  CHECK(betti_error(seg, seg, opt) == 0.0);

  auto gt = mask_from(Shape{3, 3}, {1, 1, 1, 1, 0, 1, 1, 1, 1});
  auto broken = mask_from(Shape{3, 3}, {1, 0, 1, 1, 0, 1, 1, 1, 1});
  BettiErrorOptions whole;
  whole.patch = {3, 3};
  whole.n_patches = 1;
  CHECK(betti_error(broken, gt, whole) == 1.0);

  auto other = seg;
  for (std::size_t i = 0; i < other.size(); i += 7) other.set(i, !other[i]);
  auto a = betti_error(seg, other, opt);
  CHECK(betti_error(seg, other, opt) == a);
  opt.threads = 4;
  CHECK(betti_error(seg, other, opt) == a);
  CHECK(sample_patch_origins(seg.shape(), opt.patch, 5, 1) == sample_patch_origins(seg.shape(), opt.patch, 5, 1));

  opt.patch = {41, 16};
  CHECK_THROWS_AS(betti_error(seg, other, opt), ShapeError);
  CHECK(default_patch(Shape{100, 30}) == std::vector<std::size_t>{64, 30});
  CHECK(default_patch(Shape{10, 60, 60}) == std::vector<std::size_t>{10, 48, 48});
}

TEST_CASE("3D betti_error compares voids") {
  BettiErrorOptions opt;
  opt.patch = {3, 3, 3};
  opt.n_patches = 1;
  CHECK(betti_error(hollow_shell(), BinaryMask(Shape{3, 3, 3}, true), opt) == 1.0);
}

TEST_CASE("region labeling") {
  CHECK(region_labeling(BinaryMask(Shape{3, 3}, true)).labels == std::vector<std::int64_t>(9, 0));
  auto split = mask_from(Shape{4, 4}, {0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0});
  auto r = region_labeling(split);
  CHECK(r.labels[0] == 1);
  CHECK(r.labels[1] == 0);
  CHECK(r.labels[2] == 2);
  CHECK(r.labels[15] == 2);
  CHECK(region_labeling(BinaryMask(Shape{3, 3})).labels == std::vector<std::int64_t>(9, 1));
}

TEST_CASE("ARI and VOI") {
  Shape s{4, 4};
  std::vector<std::int64_t> halves(16), one(16, 1);
  for (std::size_t i = 0; i < 16; ++i) halves[i] = i % 4 < 2 ? 1 : 2;

  CHECK(ari(labels(s, halves), labels(s, halves)) == 1.0);
  CHECK(voi(labels(s, halves), labels(s, halves)) == 0.0);

  CHECK(ari(labels(s, one), labels(s, halves)) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(voi(labels(s, one), labels(s, halves)) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(voi(labels(s, halves), labels(s, one)) == doctest::Approx(std::log(2.0)).epsilon(1e-12));

  std::vector<std::int64_t> permuted(16);
  for (std::size_t i = 0; i < 16; ++i) permuted[i] = halves[i] == 1 ? 7 : 3;
  CHECK(ari(labels(s, permuted), labels(s, halves)) == 1.0);
  CHECK(voi(labels(s, permuted), labels(s, halves)) == 0.0);

  CHECK_THROWS_AS(ari(labels(s, one), labels(s, std::vector<std::int64_t>(16, 0))), UndefinedMetric);
  CHECK_THROWS_AS(voi(labels(s, one), labels(s, std::vector<std::int64_t>(16, 0))), UndefinedMetric);
}

TEST_CASE("ARI and VOI properties on random labelings") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<std::int64_t> lab(0, 4);
  for (int t = 0; t < 30; ++t) {
    Shape s{6, 7};
    std::vector<std::int64_t> a(s.size()), b(s.size());
    for (auto& x : a) x = lab(rng);
    for (auto& x : b) x = lab(rng);
    b[0] = 1;
    double r = ari(labels(s, a), labels(s, b));
    CHECK(r > 0.0);
    CHECK(r <= 1.0);
    CHECK(voi(labels(s, a), labels(s, b)) >= 0.0);
    // Pixels with gt label 0 are ignored.
    auto a2 = a;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (b[i] == 0) a2[i] = 99;
    }
    CHECK(ari(labels(s, a2), labels(s, b)) == doctest::Approx(r).epsilon(1e-12));
  }
}

TEST_CASE("DICE and accuracy") {
  auto m = mask_from(Shape{2, 2}, {1, 1, 0, 0});
  auto d = dice_and_accuracy(m, m);
  CHECK(d.dice == 1.0);
  CHECK(d.accuracy == 1.0);
  auto inv = mask_from(Shape{2, 2}, {0, 0, 1, 1});
  d = dice_and_accuracy(m, inv);
  CHECK(d.dice == 0.0);
  CHECK(d.accuracy == 0.0);
  CHECK(dice_and_accuracy(BinaryMask(Shape{2, 2}), BinaryMask(Shape{2, 2})).dice == 1.0);

  BinaryMask gt(Shape{10, 10});
  for (std::size_t i = 0; i < 9; ++i) gt.set(i);
  auto seg = gt;
  seg.set(50);
  d = dice_and_accuracy(seg, gt);
  CHECK(d.dice == doctest::Approx(18.0 / 19.0).epsilon(1e-12));
  CHECK(d.accuracy == doctest::Approx(0.99).epsilon(1e-12));
}
