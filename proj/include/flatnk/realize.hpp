// Copyright 2026 The flatnk Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file realize.hpp
 * @brief Complex three-forms on C^m and the real admissible form they induce on C^{m,m}.
 *
 * Convention for C^{m,m} (canonical complex coordinates w^1..w^{2m}, Hermitian
 * form diag(+1_m, -1_m)): the null coordinates are
 *
 *   a^j = (w^j + w^{m+j}) / sqrt(2),   b^j = (w^j - w^{m+j}) / sqrt(2).
 *
 * L is the real span of the vectors A_j = (e_{x_j} + e_{x_{m+j}})/sqrt(2) and
 * their Jcan-images (the locus b = 0), L' the same with a minus sign (a = 0).
 * A complex form zeta on C^m is transported as
 *
 *   zeta~ = sum_{i<j<k} zeta_{ijk} b^i ^ b^j ^ b^k,   eta = zeta~ + conj(zeta~),
 *
 * so that raising eta with the metric lands in L. Any other identification of
 * C^m with L differs by a GL_m(C) change of basis.
 */

#pragma once

#include "flatnk/forms.hpp"
#include "flatnk/space.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace flatnk {

/// A complex form is zero iff every coefficient has modulus <= this.
inline constexpr double kZetaZeroThreshold = 1e-14;

class ComplexThreeForm {
 public:
  /// Zero form on C^m; throws std::invalid_argument for m < 1.
  explicit ComplexThreeForm(int m);
  ComplexThreeForm(int m, std::vector<Complex> coeffs);

  int m() const { return m_; }
  std::span<const Complex> coeffs() const { return coeffs_; }

  /// Antisymmetric access with 0-based indices.
  Complex coeff(int i, int j, int k) const;
  void set(int i, int j, int k, Complex value);

  Complex operator()(const CVector& x, const CVector& y, const CVector& z) const;
  /// The covector zeta(x, y, .).
  CVector contract(const CVector& x, const CVector& y) const;

  double max_modulus() const;
  bool is_zero(double threshold = kZetaZeroThreshold) const { return max_modulus() <= threshold; }

  ComplexThreeForm& operator+=(const ComplexThreeForm& other);
  ComplexThreeForm& operator*=(Complex s);
  friend ComplexThreeForm operator+(ComplexThreeForm a, const ComplexThreeForm& b) { return a += b; }
  friend ComplexThreeForm operator*(Complex s, ComplexThreeForm a) { return a *= s; }

 private:
  int m_;
  std::vector<Complex> coeffs_;
};

/// e^i ^ e^j ^ e^k on C^m (0-based).
ComplexThreeForm complex_basis_form(int m, int i, int j, int k);

struct Realization {
  PseudoHermitianSpace space;
  Subspace L;
  Subspace Lprime;
  RealThreeForm eta;
};

/// The null direction A_j (in L) and B_j (in L') of C^{m,m}, 0-based j.
Vector null_direction_a(const PseudoHermitianSpace& space, int j);
Vector null_direction_b(const PseudoHermitianSpace& space, int j);

Realization realize(const ComplexThreeForm& zeta);

/// Left inverse of realize() on C^{m,m}:
///   zeta_ijk = (eta(B_i, B_j, B_k) - i eta(Jcan B_i, B_j, B_k)) / 2.
/// Throws std::invalid_argument unless the space is C^{m,m} with m >= 1.
ComplexThreeForm complex_form_of(const RealThreeForm& eta);

struct SupportRank {
  int rank = 0;
  bool maximal = false;
};

/// Rank of the matrix with rows zeta(e_i, e_j, .), i < j.
SupportRank maximal_support(const ComplexThreeForm& zeta, double tol = kDefaultTol);

struct Strictness {
  bool strict = false;
  double max_modulus = 0.0;
  std::string diagnostic;
};

Strictness strictness(const ComplexThreeForm& zeta);

}  // namespace flatnk
