// Copyright 2026 The flatnk Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file forms.hpp
 * @brief Constant real three-forms on a model space.
 *
 * Forms are stored covariantly: one coefficient eta(e_a, e_b, e_c) per strictly
 * increasing triple a < b < c of real basis indices (0-based here, 1-based in
 * the JSON file format). The endomorphism eta_X is obtained by raising the last
 * index with the metric, g(eta_X Y, Z) = eta(X, Y, Z).
 *
 * Wedge products use the determinant convention without 1/3!, so
 * (e^1 ^ e^2 ^ e^3)(e_1, e_2, e_3) = 1.
 */

#pragma once

#include "flatnk/space.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace flatnk {

class RealThreeForm {
 public:
  /// Zero form.
  explicit RealThreeForm(PseudoHermitianSpace space);
  /// coeffs.size() must equal triple_count(space.real_dim()).
  RealThreeForm(PseudoHermitianSpace space, std::vector<double> coeffs);

  static std::size_t triple_count(int dim);
  /// Position of the sorted triple a < b < c in the coefficient array.
  static std::size_t triple_index(int dim, int a, int b, int c);

  const PseudoHermitianSpace& space() const { return space_; }
  int dim() const { return space_.real_dim(); }
  std::span<const double> coeffs() const { return coeffs_; }

  /// Coefficient for any index order, with the permutation sign; 0 on repeats.
  double coeff(int a, int b, int c) const;
  /// Sets the coefficient so that coeff(a, b, c) == value afterwards.
  void set(int a, int b, int c, double value);

  double operator()(const Vector& x, const Vector& y, const Vector& z) const;

  /// M(b, c) = eta(x, e_b, e_c).
  Matrix contract(const Vector& x) const;

  double max_abs() const;
  bool is_zero(double tol = 0.0) const { return max_abs() <= tol; }

  RealThreeForm& operator+=(const RealThreeForm& other);
  RealThreeForm& operator-=(const RealThreeForm& other);
  RealThreeForm& operator*=(double s);

  friend RealThreeForm operator+(RealThreeForm a, const RealThreeForm& b) { return a += b; }
  friend RealThreeForm operator-(RealThreeForm a, const RealThreeForm& b) { return a -= b; }
  friend RealThreeForm operator*(double s, RealThreeForm a) { return a *= s; }

 private:
  PseudoHermitianSpace space_;
  std::vector<double> coeffs_;
};

/// alpha ^ beta ^ gamma for covectors given by their components in the dual basis.
RealThreeForm wedge(const PseudoHermitianSpace& space, const Vector& alpha, const Vector& beta,
                    const Vector& gamma);

/// e^a ^ e^b ^ e^c (0-based indices).
RealThreeForm basis_form(const PseudoHermitianSpace& space, int a, int b, int c);

/// (A^* eta)(X, Y, Z) = eta(A X, A Y, A Z) where A maps target into eta's space.
RealThreeForm pullback(const RealThreeForm& eta, const Matrix& map, const PseudoHermitianSpace& target);

/// The endomorphism eta_X with g(eta_X Y, Z) = eta(X, Y, Z). Metric-skew.
Matrix eta_endo(const RealThreeForm& eta, const Vector& x);

/// eta_{e_a} for every basis direction a.
std::vector<Matrix> eta_endos(const RealThreeForm& eta);

/// Outcome of an admissibility condition. Witness indices are 0-based basis
/// directions; residual is the max absolute entry of the worst matrix.
struct ConditionResult {
  bool holds = true;
  double residual = 0.0;
  double tolerance = kDefaultTol;
  int witness_a = -1;
  int witness_b = -1;
};

/// eta_{e_a} eta_{e_b} = 0 for all a, b.
ConditionResult check_condition_i(const RealThreeForm& eta, double tol = kDefaultTol);

/// eta_{e_a} Jcan + Jcan eta_{e_a} = 0 for all a. witness_b stays -1.
ConditionResult check_condition_ii(const RealThreeForm& eta, double tol = kDefaultTol);

/// Span of all eta_X Y.
Subspace support(const RealThreeForm& eta, double tol = kDefaultTol);

/**
 * eta = plus + minus, where minus is the real part of the (3,0)+(0,3)
 * component:
 *   minus(X,Y,Z) = (eta(X,Y,Z) - eta(X,JY,JZ) - eta(JX,Y,JZ) - eta(JX,JY,Z)) / 4.
 */
struct TypeSplit {
  RealThreeForm plus;
  RealThreeForm minus;
};

/// The minus projector alone.
RealThreeForm pure_type_part(const RealThreeForm& eta);

TypeSplit type_split(const RealThreeForm& eta);

/// Compares two characterizations of pure type: plus == 0 and condition (ii).
struct TypeCharacterization {
  bool agree = true;
  bool plus_vanishes = true;
  bool anticommutes = true;
  double plus_max = 0.0;
  double anticommutator_residual = 0.0;
};

TypeCharacterization anticommutator_characterization(const RealThreeForm& eta,
                                                     double tol = kDefaultTol);

}  // namespace flatnk
