// Copyright 2026 The flatnk Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file nkfield.hpp
 * @brief The flat nearly pseudo-Kaehler structure induced by an admissible three-form.
 *
 * Given eta with eta_X eta_Y = 0 and {eta_X, Jcan} = 0, the almost complex
 * structure on the whole model space is
 *
 *   J(x) = exp(2 sum_i x^i eta_i) Jcan = (Id + 2 sum_i x^i eta_i) Jcan,
 *
 * the series truncating after the linear term because the generators square
 * to zero. The metric is the constant g_can, the Levi-Civita connection D is
 * the flat coordinate derivative and the canonical connection is D - eta.
 */

#pragma once

#include "flatnk/forms.hpp"
#include "flatnk/report.hpp"
#include "flatnk/space.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace flatnk {

/// Raised when a structure is requested for a form failing condition (i) or (ii).
class InadmissibleForm : public std::runtime_error {
 public:
  InadmissibleForm(const std::string& what, ConditionResult i, ConditionResult ii)
      : std::runtime_error(what), condition_i(i), condition_ii(ii) {}
  ConditionResult condition_i;
  ConditionResult condition_ii;
};

class NearlyKahlerStructure;

namespace testing {
/// Builds a structure whose J field uses generators eta_i + extra[i] instead of eta_i,
/// skipping admissibility. Only for exercising failure paths of the verifiers.
NearlyKahlerStructure perturbed_structure(const RealThreeForm& eta, std::span<const Matrix> extra);
}  // namespace testing

class NearlyKahlerStructure {
 public:
  /// Throws InadmissibleForm unless both conditions hold at `tol`.
  explicit NearlyKahlerStructure(RealThreeForm eta, double tol = kDefaultTol);
  /// The candidate field J(x) = (Id + 2 eta_x) Jcan without admissibility checks, so the
  /// verifiers can report which identities an inadmissible form breaks.
  static NearlyKahlerStructure unchecked(RealThreeForm eta);

  const PseudoHermitianSpace& space() const { return eta_.space(); }
  const RealThreeForm& eta() const { return eta_; }

  /// eta_{e_i}.
  const Matrix& eta_endo(int i) const { return endos_[static_cast<std::size_t>(i)]; }
  /// eta_X = sum_i X^i eta_{e_i}.
  Matrix eta_endo(const Vector& x) const;

  Matrix J_at(const Vector& x) const;
  /// D_X J at x, from the closed form -2 J(x) eta_X.
  Matrix DJ_at(const Vector& x, const Vector& direction) const;
  /// D_X J of the affine field J itself, 2 K_X Jcan with K the generators.
  /// Equal to DJ_at for admissible eta; independent of x.
  Matrix field_derivative(const Vector& direction) const;

  /// T(X, Y) = -2 eta_X Y.
  Vector torsion(const Vector& x, const Vector& y) const;

  /// omega(x)(X, Y) = g(J(x) X, Y) as a matrix.
  Matrix fundamental_two_form(const Vector& x) const;
  /// Same, evaluated in extended precision for finite-difference oracles.
  Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> fundamental_two_form_extended(
      const Eigen::Matrix<long double, Eigen::Dynamic, 1>& x) const;

 private:
  struct Unchecked {};
  NearlyKahlerStructure(Unchecked, RealThreeForm eta, std::vector<Matrix> generators);
  friend NearlyKahlerStructure testing::perturbed_structure(const RealThreeForm&, std::span<const Matrix>);

  Matrix generator(const Vector& x) const;

  RealThreeForm eta_;
  std::vector<Matrix> endos_;
  std::vector<Matrix> generators_;
};

IdentityReport verify_nearly_kahler(const NearlyKahlerStructure& nk, const SampleConfig& cfg,
                                    double tol = kDefaultTol);

/// Torsion skewness, nabla g = 0, nabla J = 0 and {eta_X, J(x)} = 0.
std::vector<IdentityReport> verify_canonical_connection(const NearlyKahlerStructure& nk,
                                                        const SampleConfig& cfg,
                                                        const Tolerances& tol = {});

/// g((D_X J)Y, (D_Z J)W) = 0, eta_X eta_Y = 0, [eta_X, eta_Y] = 0, eta_{eta_X Y} = 0, D^2 omega = 0.
std::vector<IdentityReport> verify_gray_identities(const NearlyKahlerStructure& nk,
                                                   const SampleConfig& cfg,
                                                   const Tolerances& tol = {});

/// J(x)^2 = -Id, g(J., J.) = g, antisymmetry of omega.
std::vector<IdentityReport> verify_almost_hermitian(const NearlyKahlerStructure& nk,
                                                    const SampleConfig& cfg,
                                                    const Tolerances& tol = {});

/// DJ_at against central differences of J_at; residual is relative to max|DJ_at|.
IdentityReport verify_derivative(const NearlyKahlerStructure& nk, const SampleConfig& cfg,
                                 double rel_tol = 1e-8, double step = 1e-5);

/// max over basis directions of max|DJ_at(0, e_i)|.
double strictness_measure(const NearlyKahlerStructure& nk);

struct Battery {
  std::vector<IdentityReport> identities;
  bool strict = false;
  /// strictness_measure() of the structure; strict iff above the strict_threshold tolerance.
  double strictness_measure = 0.0;
  bool pass = true;
};

/// Every identity above plus the consistency of strictness with eta != 0.
Battery run_battery(const NearlyKahlerStructure& nk, const SampleConfig& cfg,
                    const Tolerances& tol = {});

}  // namespace flatnk
