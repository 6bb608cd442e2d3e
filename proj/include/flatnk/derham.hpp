// Copyright 2026 The flatnk Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file derham.hpp
 * @brief Orthogonal splitting V = V0 + V' of a flat nearly pseudo-Kaehler model space.
 *
 * V' = L + L' carries eta, where L is the support of eta and L' an isotropic
 * Jcan-invariant complement paired nondegenerately with L. V0 is the metric
 * orthogonal of V' and carries the constant structure Jcan, i.e. a flat
 * pseudo-Kaehler factor. V0 has maximal dimension because L is the smallest
 * subspace with eta in its third exterior power.
 */

#pragma once

#include "flatnk/forms.hpp"
#include "flatnk/report.hpp"
#include "flatnk/space.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace flatnk {

struct DeRhamSplit {
  /// The input form on the full space.
  RealThreeForm eta;
  Subspace V0;
  Subspace Vprime;
  Subspace L;
  Subspace Lprime;
  /// Columns (p_1, J p_1, ..., p_m, J p_m, q_1, J q_1, ..., q_m, J q_m) with
  /// g(p_i, p_j) = delta_ij, g(q_i, q_j) = -delta_ij, g(p, q) = 0: an isometric,
  /// complex-linear identification of C^{m,m} with V'.
  Matrix adapted_basis;
  /// eta in the adapted basis, on C^{m,m}; empty when m = 0.
  std::optional<RealThreeForm> eta_restricted;
  int m = 0;
};

/// Thrown by split() for inadmissible input or a singular pairing between L and its dual candidates.
class SplitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

DeRhamSplit split(const RealThreeForm& eta, double tol = kDefaultTol);

/// Same, with a different complement L': column j of `complement_shift` (n rows, at most
/// m columns) is projected onto L^perp and added to the j-th dual vector before the
/// isotropic correction. Any such shift yields a valid split; V' and V0 move with L'.
DeRhamSplit split(const RealThreeForm& eta, const Matrix& complement_shift, double tol = kDefaultTol);

struct SplitCheck {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = true;
};

struct SplitReport {
  int dim_V0 = 0;
  int dim_Vprime = 0;
  int m = 0;
  Inertia signature_Vprime;
  Inertia signature_V0;
  std::vector<SplitCheck> checks;
  bool pass = true;
};

/// Orthogonality, J-invariance and nondegeneracy of both factors, the (2m, 2m)
/// signature of V', vanishing of eta on V0, reproduction of eta by its
/// restriction, and block-diagonality of J(x) with J = Jcan on V0.
SplitReport verify_split(const DeRhamSplit& split, double tol = kDefaultTol, const SampleConfig& cfg = {});

}  // namespace flatnk
