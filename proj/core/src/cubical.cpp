#include "dmt/cubical.hpp"

#include <algorithm>
#include <stdexcept>

namespace dmt {

std::string CellId::to_string() const {
  std::string s = "[";
  for (int a = 0; a < ndim; ++a) {
    if (a) s += ",";
    s += std::to_string(coords[static_cast<std::size_t>(a)]);
  }
  return s + "]";
}

CubicalComplex::CubicalComplex(const Shape& shape) : shape_(shape) {
  CellIndex stride = 1;
  for (int a = ndim() - 1; a >= 0; --a) {
    auto ua = static_cast<std::size_t>(a);
    dext_[ua] = 2 * (static_cast<std::int64_t>(shape_[a]) - 1) + 1;
    dstride_[ua] = stride;
    vstride_[ua] = shape_.stride(a);
    stride *= dext_[ua];
  }
  cell_count_ = stride;
}

std::int64_t CubicalComplex::count_of_dim(int p) const {
  // Expand prod_a (vertices_a + edges_a * t) and read off the t^p coefficient.
  std::array<std::int64_t, Shape::kMaxDims + 1> poly{1, 0, 0, 0};
  for (int a = 0; a < ndim(); ++a) {
    auto n = static_cast<std::int64_t>(shape_[a]);
    std::array<std::int64_t, Shape::kMaxDims + 1> next{};
    for (int d = 0; d <= a; ++d) {
      next[static_cast<std::size_t>(d)] += poly[static_cast<std::size_t>(d)] * n;
      next[static_cast<std::size_t>(d + 1)] += poly[static_cast<std::size_t>(d)] * (n - 1);
    }
    poly = next;
  }
  return (p < 0 || p > ndim()) ? 0 : poly[static_cast<std::size_t>(p)];
}

std::int64_t CubicalComplex::euler_characteristic() const {
  std::int64_t chi = 0;
  for (int p = 0; p <= ndim(); ++p) chi += (p % 2 ? -1 : 1) * count_of_dim(p);
  return chi;
}

bool CubicalComplex::contains(const CellId& cell) const {
  if (cell.ndim != ndim()) return false;
  for (int a = 0; a < ndim(); ++a) {
    auto k = cell.coords[static_cast<std::size_t>(a)];
    if (k < 0 || k >= dext_[static_cast<std::size_t>(a)]) return false;
  }
  return true;
}

CellIndex CubicalComplex::index(const CellId& cell) const {
  if (!contains(cell)) throw std::out_of_range("cell " + cell.to_string() + " is outside the complex");
  CellIndex c = 0;
  for (int a = 0; a < ndim(); ++a) c += cell.coords[static_cast<std::size_t>(a)] * dstride_[static_cast<std::size_t>(a)];
  return c;
}

CellId CubicalComplex::cell(CellIndex index) const {
  if (index < 0 || index >= cell_count_) {
    throw std::out_of_range("cell index " + std::to_string(index) + " is outside the complex");
  }
  return CellId{decode(index), ndim()};
}

int CubicalComplex::dim(CellIndex index) const {
  int d = 0;
  for (int a = ndim() - 1; a >= 0; --a) {
    auto e = dext_[static_cast<std::size_t>(a)];
    d += static_cast<int>((index % e) & 1);
    index /= e;
  }
  return d;
}

std::vector<CellId> CubicalComplex::faces(const CellId& cell) const {
  std::vector<CellId> out;
  for_each_face(index(cell), [&](CellIndex f) { out.push_back(this->cell(f)); });
  return out;
}

std::vector<CellId> CubicalComplex::cofaces(const CellId& cell) const {
  std::vector<CellId> out;
  for_each_coface(index(cell), [&](CellIndex f) { out.push_back(this->cell(f)); });
  return out;
}

CellIndex CubicalComplex::vertex_cell(std::size_t v) const {
  CellIndex c = 0;
  for (int a = ndim() - 1; a >= 0; --a) {
    auto ua = static_cast<std::size_t>(a);
    c += 2 * static_cast<CellIndex>(v % shape_[a]) * dstride_[ua];
    v /= shape_[a];
  }
  return c;
}

std::size_t CubicalComplex::vertex_of(CellIndex c) const {
  auto k = decode(c);
  std::size_t v = 0;
  for (int a = 0; a < ndim(); ++a) {
    v += static_cast<std::size_t>(k[static_cast<std::size_t>(a)] / 2) * vstride_[static_cast<std::size_t>(a)];
  }
  return v;
}

double rho(const CubicalComplex& complex, CellIndex cell, const ScalarField& field, Polarity polarity) {
  bool first = true;
  double r = 0.0;
  complex.for_each_vertex(cell, [&](std::size_t v) {
    double x = field[v];
    if (first) {
      r = x;
      first = false;
    } else {
      r = polarity == Polarity::sublevel ? std::max(r, x) : std::min(r, x);
    }
  });
  return r;
}

double rho(const CubicalComplex& complex, const CellId& cell, const ScalarField& field, Polarity polarity) {
  return rho(complex, complex.index(cell), field, polarity);
}

}  // namespace dmt
