#pragma once

#include <cstddef>

#include "dmt/field.hpp"

namespace dmt {

struct LossConfig {
  /// Persistence threshold for pruning, in likelihood units.
  double eps = 0.2;
  /// Weight of the Morse-restricted term.
  double beta = 3.0;
  bool include_s1 = true;
  bool include_s2 = true;
  /// Likelihoods are clipped to [clamp, 1 - clamp] before taking logs.
  double clamp = 1e-7;

  /// Throws std::invalid_argument unless eps >= 0, beta >= 0 and 0 < clamp < 0.5.
  void validate() const;
};

struct LossReport {
  double l_bce = 0.0;
  double l_dmt = 0.0;
  double beta = 0.0;
  double total = 0.0;
  /// Fraction of pixels in the Morse mask.
  double mask_density = 0.0;
  std::size_t n_s1 = 0;
  std::size_t n_basins = 0;
};

/// Morse mask together with the structure counts that produced it.
struct MorseMask {
  BinaryMask mask;
  std::size_t n_s1 = 0;
  std::size_t n_basins = 0;
};

MorseMask compute_morse_mask(const ScalarField& f, const LossConfig& cfg);
/// Union of the pruned ridge skeleton and the basin boundaries of f.
BinaryMask morse_mask(const ScalarField& f, const LossConfig& cfg);

/// Mean binary cross-entropy of clipped f against binary g.
double bce(const ScalarField& f, const ScalarField& g, double clamp);
/// Per-pixel cross-entropy summed over the mask, divided by the total pixel
/// count, so an all-ones mask reproduces bce().
double dmt_loss(const ScalarField& f, const ScalarField& g, const BinaryMask& mask, double clamp);

/// Both loss terms with the mask held fixed.
LossReport total_loss(const ScalarField& f, const ScalarField& g, const BinaryMask& mask, const LossConfig& cfg);
/// Recomputes the Morse mask from f, then evaluates both terms.
LossReport total_loss(const ScalarField& f, const ScalarField& g, const LossConfig& cfg);

/// d total / d f with the mask held constant; zero where clipping is active.
ScalarField loss_gradient(const ScalarField& f, const ScalarField& g, const BinaryMask& mask, const LossConfig& cfg);

}  // namespace dmt
