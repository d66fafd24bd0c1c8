#include "dmt/topo_loss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dmt/basin_boundary.hpp"
#include "dmt/morse_skeleton.hpp"

namespace dmt {
namespace {

void check_pair(const ScalarField& f, const ScalarField& g) {
  if (!(f.shape() == g.shape())) {
    throw ShapeError("prediction shape " + f.shape().to_string() + " differs from ground truth " +
                     g.shape().to_string());
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] != 0.0 && g[i] != 1.0) {
      throw std::invalid_argument("ground truth is not binary at index " + std::to_string(i));
    }
  }
}

void check_mask(const ScalarField& f, const BinaryMask& mask) {
  if (!(f.shape() == mask.shape())) {
    throw ShapeError("mask shape " + mask.shape().to_string() + " differs from " + f.shape().to_string());
  }
}

double pixel_bce(double f, double g, double clamp) {
  double p = std::clamp(f, clamp, 1.0 - clamp);
  return g != 0.0 ? -std::log(p) : -std::log1p(-p);
}

}  // namespace

void LossConfig::validate() const {
  if (!(eps >= 0.0)) throw std::invalid_argument("eps must be >= 0");
  if (!(beta >= 0.0)) throw std::invalid_argument("beta must be >= 0");
  if (!(clamp > 0.0 && clamp < 0.5)) throw std::invalid_argument("clamp must lie in (0, 0.5)");
}

MorseMask compute_morse_mask(const ScalarField& f, const LossConfig& cfg) {
  cfg.validate();
  MorseMask out{BinaryMask(f.shape()), 0, 0};
  if (cfg.include_s1) {
    auto s1 = extract_skeleton(f, cfg.eps);
    out.mask |= s1.mask;
    out.n_s1 = s1.structures;
  }
  if (cfg.include_s2) {
    auto basins = basin_labels(f, cfg.eps);
    out.mask |= boundary_mask(basins);
    out.n_basins = basins.basin_count();
  }
  return out;
}

BinaryMask morse_mask(const ScalarField& f, const LossConfig& cfg) { return compute_morse_mask(f, cfg).mask; }

double bce(const ScalarField& f, const ScalarField& g, double clamp) {
  check_pair(f, g);
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += pixel_bce(f[i], g[i], clamp);
  return sum / static_cast<double>(f.size());
}

double dmt_loss(const ScalarField& f, const ScalarField& g, const BinaryMask& mask, double clamp) {
  check_pair(f, g);
  check_mask(f, mask);
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (mask[i]) sum += pixel_bce(f[i], g[i], clamp);
  }
  return sum / static_cast<double>(f.size());
}

LossReport total_loss(const ScalarField& f, const ScalarField& g, const BinaryMask& mask, const LossConfig& cfg) {
  cfg.validate();
  LossReport r;
  r.l_bce = bce(f, g, cfg.clamp);
  r.l_dmt = dmt_loss(f, g, mask, cfg.clamp);
  r.beta = cfg.beta;
  r.total = r.l_bce + cfg.beta * r.l_dmt;
  r.mask_density = static_cast<double>(mask.count()) / static_cast<double>(mask.size());
  return r;
}

LossReport total_loss(const ScalarField& f, const ScalarField& g, const LossConfig& cfg) {
  check_pair(f, g);
  auto m = compute_morse_mask(f, cfg);
  auto r = total_loss(f, g, m.mask, cfg);
  r.n_s1 = m.n_s1;
  r.n_basins = m.n_basins;
  return r;
}

ScalarField loss_gradient(const ScalarField& f, const ScalarField& g, const BinaryMask& mask, const LossConfig& cfg) {
  cfg.validate();
  check_pair(f, g);
  check_mask(f, mask);
  const double n = static_cast<double>(f.size());
  std::vector<double> grad(f.size(), 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    double p = f[i];
    if (p < cfg.clamp || p > 1.0 - cfg.clamp) continue;
    double weight = 1.0 + (mask[i] ? cfg.beta : 0.0);
    grad[i] = weight * (p - g[i]) / (p * (1.0 - p)) / n;
  }
  return ScalarField(f.shape(), std::move(grad));
}

}  // namespace dmt
