#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "dmt/cubical.hpp"
#include "support/oracles.hpp"

using namespace dmt;

namespace {

CellId c2(std::int64_t a, std::int64_t b) { return CellId{{a, b, 0}, 2}; }

std::set<CellId> as_set(const std::vector<CellId>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("faces in the doubled grid") {
  CubicalComplex K(Shape{3, 3});
  CHECK(as_set(K.faces(c2(0, 1))) == std::set<CellId>{c2(0, 0), c2(0, 2)});
  CHECK(as_set(K.faces(c2(1, 1))) == std::set<CellId>{c2(0, 1), c2(2, 1), c2(1, 0), c2(1, 2)});
  CHECK(K.faces(c2(0, 0)).empty());
  CHECK_THROWS_AS(K.faces(c2(5, 0)), std::out_of_range);
  CHECK_THROWS_AS(K.faces(c2(-1, 0)), std::out_of_range);
}

TEST_CASE("cofaces in the doubled grid") {
  CubicalComplex K(Shape{3, 3});
  CHECK(as_set(K.cofaces(c2(0, 0))) == std::set<CellId>{c2(1, 0), c2(0, 1)});
  CHECK(K.cofaces(c2(2, 2)).size() == 4);
  CHECK(K.cofaces(c2(1, 1)).empty());
  CubicalComplex K3(Shape{2, 2, 2});
  CHECK(K3.cofaces(CellId{{1, 1, 1}, 3}).empty());
  CHECK(K3.faces(CellId{{1, 1, 1}, 3}).size() == 6);
}

TEST_CASE("face/coface duality and dimensions, exhaustively") {
  for (Shape s : {Shape{3, 4}, Shape{1, 5}, Shape{2, 3, 3}}) {
    CubicalComplex K(s);
    for (CellIndex c = 0; c < K.cell_count(); ++c) {
      auto cell = K.cell(c);
      CHECK(K.dim(c) == cell.dim());
      CHECK(K.index(cell) == c);
      auto faces = K.faces(cell);
      CHECK(faces.size() == static_cast<std::size_t>(2 * cell.dim()));
      for (const auto& f : faces) {
        CHECK(f.dim() == cell.dim() - 1);
        auto co = K.cofaces(f);
        CHECK(std::find(co.begin(), co.end(), cell) != co.end());
      }
      for (const auto& t : K.cofaces(cell)) {
        auto fs = K.faces(t);
        CHECK(std::find(fs.begin(), fs.end(), cell) != fs.end());
      }
    }
  }
}

TEST_CASE("Euler characteristic of a full grid is 1") {
  for (Shape s : {Shape{2, 2}, Shape{1, 7}, Shape{5, 3}, Shape{2, 2, 2}, Shape{4, 3, 5}}) {
    CubicalComplex K(s);
    CHECK(K.euler_characteristic() == 1);
    std::int64_t total = 0;
    for (int p = 0; p <= K.ndim(); ++p) total += K.count_of_dim(p);
    CHECK(total == K.cell_count());
  }
  CubicalComplex K(Shape{2, 2});
  CHECK(K.count_of_dim(0) == 4);
  CHECK(K.count_of_dim(1) == 4);
  CHECK(K.count_of_dim(2) == 1);
}

TEST_CASE("rho extension") {
  ScalarField f(Shape{2, 2}, std::vector<double>{0.2, 0.8, 0.5, 0.1});
  CubicalComplex K(f.shape());
  CHECK(rho(K, c2(0, 1), f, Polarity::sublevel) == 0.8);
  CHECK(rho(K, c2(0, 1), f, Polarity::superlevel) == 0.2);
  CHECK(rho(K, c2(1, 1), f, Polarity::sublevel) == 0.8);
  CHECK(rho(K, c2(1, 1), f, Polarity::superlevel) == 0.1);
  CHECK(rho(K, c2(2, 0), f, Polarity::sublevel) == 0.5);
}

TEST_CASE("rho is monotone along incidence for both polarities") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 10; ++t) {
    auto f = testing::random_field(rng, testing::random_shape(rng, t % 2 ? 3 : 2, 5));
    CubicalComplex K(f.shape());
    for (CellIndex c = 0; c < K.cell_count(); ++c) {
      K.for_each_face(c, [&](CellIndex s) {
        CHECK(rho(K, c, f, Polarity::sublevel) >= rho(K, s, f, Polarity::sublevel));
        CHECK(rho(K, c, f, Polarity::superlevel) <= rho(K, s, f, Polarity::superlevel));
      });
    }
  }
}

TEST_CASE("vertex and edge cells map back to pixels") {
  CubicalComplex K(Shape{3, 4, 2});
  for (std::size_t v = 0; v < 24; ++v) {
    CHECK(K.dim(K.vertex_cell(v)) == 0);
    CHECK(K.vertex_of(K.vertex_cell(v)) == v);
  }
  auto e = K.edge_cell(0, 1);
  CHECK(K.cell(e) == CellId{{0, 1, 0}, 3});
}
