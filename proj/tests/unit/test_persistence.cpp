#include <doctest.h>

#include <random>
#include <set>

#include "dmt/persistence.hpp"
#include "support/oracles.hpp"

using namespace dmt;

namespace {

CellId c2(std::int64_t a, std::int64_t b) { return CellId{{a, b, 0}, 2}; }

std::vector<PersistencePair> dim0(const std::vector<PersistencePair>& pairs) {
  std::vector<PersistencePair> out;
  for (const auto& p : pairs) {
    if (p.dim == 0) out.push_back(p);
  }
  return out;
}

}  // namespace

TEST_CASE("filtration order on a 1x2 field") {
  ScalarField f(Shape{1, 2}, std::vector<double>{0.7, 0.3});
  auto sup = build_filtration(f, Polarity::superlevel);
  REQUIRE(sup.size() == 3);
  CHECK(sup.entries()[0].cell == sup.complex().index(c2(0, 0)));
  CHECK(sup.entries()[1].cell == sup.complex().index(c2(0, 2)));
  CHECK(sup.entries()[2].cell == sup.complex().index(c2(0, 1)));
  CHECK(sup.entries()[2].rho == 0.3);

  auto sub = build_filtration(f, Polarity::sublevel);
  CHECK(sub.entries()[0].cell == sub.complex().index(c2(0, 2)));
  CHECK(sub.entries()[1].cell == sub.complex().index(c2(0, 0)));
  CHECK(sub.entries()[2].rho == 0.7);
}

TEST_CASE("constant field orders by dimension, then cell") {
  ScalarField f(Shape{2, 3}, 0.5);
  auto filt = build_filtration(f, Polarity::superlevel);
  for (std::size_t i = 1; i < filt.size(); ++i) {
    const auto& a = filt.entries()[i - 1];
    const auto& b = filt.entries()[i];
    CHECK((a.dim < b.dim || (a.dim == b.dim && a.cell < b.cell)));
  }
}

TEST_CASE("filtration puts faces before cofaces") {
  std::mt19937_64 rng(2);
  for (auto pol : {Polarity::superlevel, Polarity::sublevel}) {
    auto f = testing::random_field(rng, Shape{4, 3, 3}, 4);
    auto filt = build_filtration(f, pol);
    std::vector<std::size_t> pos(static_cast<std::size_t>(filt.complex().cell_count()));
    for (std::size_t i = 0; i < filt.size(); ++i) pos[static_cast<std::size_t>(filt.entries()[i].cell)] = i;
    for (const auto& e : filt.entries()) {
      filt.complex().for_each_face(e.cell, [&](CellIndex s) {
        CHECK(pos[static_cast<std::size_t>(s)] < pos[static_cast<std::size_t>(e.cell)]);
      });
    }
  }
}

TEST_CASE("reduce on the 1x3 ridge") {
  ScalarField f(Shape{1, 3}, std::vector<double>{0.9, 0.2, 0.8});
  auto pairs = reduce(build_filtration(f, Polarity::superlevel));
  REQUIRE(pairs.size() == 3);
  // Birth order: v@0.9 (essential), v@0.8, v@0.2.
  CHECK(pairs[0].birth == c2(0, 0));
  CHECK(pairs[0].essential());
  CHECK(pairs[1].birth == c2(0, 4));
  CHECK(pairs[1].death == c2(0, 3));
  CHECK(pairs[1].persistence == doctest::Approx(0.6));
  CHECK(pairs[2].birth == c2(0, 2));
  CHECK(pairs[2].death == c2(0, 1));
  CHECK(pairs[2].persistence == 0.0);
}

TEST_CASE("constant 2x2 field pairs everything at zero persistence") {
  ScalarField f(Shape{2, 2}, 0.3);
  auto pairs = reduce(build_filtration(f, Polarity::superlevel));
  int essential = 0;
  for (const auto& p : pairs) {
    if (p.essential()) {
      ++essential;
      CHECK(p.dim == 0);
    } else {
      CHECK(p.persistence == 0.0);
    }
  }
  CHECK(essential == 1);
}

TEST_CASE("zero_dim_pairs examples") {
  SUBCASE("1x3 matches the reduction") {
    ScalarField f(Shape{1, 3}, std::vector<double>{0.9, 0.2, 0.8});
    CHECK(zero_dim_pairs(f, Polarity::superlevel) == dim0(reduce(build_filtration(f, Polarity::superlevel))));
  }
  SUBCASE("strictly monotone field has one maximum") {
    ScalarField f(Shape{1, 6}, std::vector<double>{0.1, 0.2, 0.3, 0.4, 0.5, 0.6});
    auto pairs = zero_dim_pairs(f, Polarity::superlevel);
    int essential = 0;
    for (const auto& p : pairs) {
      if (p.essential()) {
        ++essential;
        CHECK(p.birth == c2(0, 10));
      } else {
        CHECK(p.persistence == 0.0);
      }
    }
    CHECK(essential == 1);
  }
  SUBCASE("two plateaus") {
    ScalarField f(Shape{1, 5}, std::vector<double>{1, 1, 0, 1, 1});
    auto pairs = zero_dim_pairs(f, Polarity::superlevel);
    int positive = 0, essential = 0;
    for (const auto& p : pairs) {
      if (p.essential()) {
        ++essential;
      } else if (p.persistence > 0) {
        ++positive;
        CHECK(p.persistence == 1.0);
        CHECK(p.birth == c2(0, 6));
        CHECK(p.death == c2(0, 5));
      }
    }
    CHECK(positive == 1);
    CHECK(essential == 1);
  }
}

TEST_CASE("union-find pairs equal the dim-0 reduction on random fields") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 60; ++t) {
    int ndim = t % 3 == 0 ? 3 : 2;
    auto f = testing::random_field(rng, testing::random_shape(rng, ndim, ndim == 2 ? 9 : 4), t % 2 ? 5 : 0);
    for (auto pol : {Polarity::superlevel, Polarity::sublevel}) {
      auto full = reduce(build_filtration(f, pol));
      CHECK(zero_dim_pairs(f, pol) == dim0(full));

      CubicalComplex K(f.shape());
      std::set<CellId> seen;
      std::size_t finite = 0;
      for (const auto& p : full) {
        CHECK(seen.insert(p.birth).second);
        if (p.death) {
          CHECK(seen.insert(*p.death).second);
          CHECK(p.death->dim() == p.birth.dim() + 1);
          CHECK(p.persistence >= 0.0);
          ++finite;
        }
      }
      CHECK(seen.size() == static_cast<std::size_t>(K.cell_count()));
      CHECK(2 * finite + (full.size() - finite) == static_cast<std::size_t>(K.cell_count()));
      auto ess = essential_counts(full, f.ndim());
      CHECK(ess[0] == 1);
      for (std::size_t d = 1; d < ess.size(); ++d) CHECK(ess[d] == 0);
    }
  }
}

TEST_CASE("reduce is deterministic") {
  std::mt19937_64 rng(4);
  auto f = testing::random_field(rng, Shape{6, 5}, 3);
  CHECK(reduce(build_filtration(f, Polarity::superlevel)) == reduce(build_filtration(f, Polarity::superlevel)));
}

TEST_CASE("binary filtration essentials are the Betti numbers") {
  std::mt19937_64 rng(8);
  std::bernoulli_distribution coin(0.65);
  for (int t = 0; t < 25; ++t) {
    auto shape = testing::random_shape(rng, t % 2 ? 3 : 2, t % 2 ? 5 : 8);
    std::vector<std::uint8_t> bits(shape.size());
    for (auto& b : bits) b = coin(rng);
    BinaryMask m(shape, bits);
    auto ess = essential_counts(reduce(binary_filtration(m)), m.ndim());
    CHECK(ess.back() == 0);
    ess.pop_back();
    CHECK(ess == testing::betti_by_rank(m));
  }
}

TEST_CASE("persistence_order is strict and puts essentials last") {
  ScalarField f(Shape{3, 3}, std::vector<double>{0.1, 0.5, 0.1, 0.5, 0.5, 0.5, 0.1, 0.5, 0.1});
  auto pairs = zero_dim_pairs(f, Polarity::superlevel);
  std::sort(pairs.begin(), pairs.end(), persistence_order);
  CHECK(pairs.back().essential());
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    CHECK(persistence_order(pairs[i - 1], pairs[i]));
    CHECK_FALSE(persistence_order(pairs[i], pairs[i - 1]));
  }
}
