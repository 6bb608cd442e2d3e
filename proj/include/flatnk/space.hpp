// Copyright 2026 The flatnk Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file space.hpp
 * @brief Flat model spaces C^{k,l} = R^{2k,2l} and their real subspaces.
 *
 * Real coordinates are ordered (x1, y1, ..., xn, yn). The standard complex
 * structure sends d/dx_j to d/dy_j, so it is block diagonal with 2x2 blocks
 * [[0,-1],[1,0]]. The metric is diagonal: +1 on the first 2k real coordinates
 * and -1 on the last 2l.
 */

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>

namespace flatnk {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// Default rank / isotropy / residual tolerance.
inline constexpr double kDefaultTol = 1e-10;

class PseudoHermitianSpace {
 public:
  /// Throws std::invalid_argument unless k, l >= 0 and k + l >= 1.
  PseudoHermitianSpace(int k, int l);

  int k() const { return k_; }
  int l() const { return l_; }
  int n() const { return k_ + l_; }
  int real_dim() const { return 2 * (k_ + l_); }

  const Matrix& metric() const { return metric_; }
  /// Equal to metric() for the canonical layout; kept separate for clarity at call sites.
  const Matrix& metric_inverse() const { return metric_; }
  const Matrix& jcan() const { return jcan_; }

  /// Diagonal entry of the metric at real coordinate a (+1 or -1).
  double sign(int a) const { return metric_(a, a); }

  double inner(const Vector& x, const Vector& y) const;

  /// Real coordinate vector of the canonical complex coordinate vector z.
  Vector realify(const CVector& z) const;
  /// Canonical complex coordinates w^j = x^j + i y^j of a real vector.
  CVector complexify(const Vector& x) const;

  bool operator==(const PseudoHermitianSpace& other) const {
    return k_ == other.k_ && l_ == other.l_;
  }

 private:
  int k_;
  int l_;
  Matrix metric_;
  Matrix jcan_;
};

PseudoHermitianSpace make_space(int k, int l);

/// P10 = (Id - i Jcan)/2 and P01 = (Id + i Jcan)/2 on the complexification.
struct TypeProjectors {
  CMatrix p10;
  CMatrix p01;
};

TypeProjectors type_projectors(const PseudoHermitianSpace& space);

/**
 * A real subspace of a model space.
 *
 * The spanning set passed at construction is reduced to a Euclidean
 * orthonormal basis by SVD; directions whose singular value is below
 * tol * sigma_max are dropped. Membership is a least-squares residual.
 */
class Subspace {
 public:
  /// Columns of `spanning` span the subspace.
  Subspace(PseudoHermitianSpace ambient, const Matrix& spanning, double tol = kDefaultTol);

  static Subspace zero(PseudoHermitianSpace ambient);
  static Subspace whole(PseudoHermitianSpace ambient);

  const PseudoHermitianSpace& ambient() const { return ambient_; }
  /// real_dim x dim, orthonormal columns.
  const Matrix& basis() const { return basis_; }
  int dim() const { return static_cast<int>(basis_.cols()); }

  /// Norm of the component of v orthogonal (Euclidean) to the subspace.
  double residual(const Vector& v) const;
  /// residual(v) <= tol * |v|.
  bool contains(const Vector& v, double tol = kDefaultTol) const;
  /// Euclidean orthogonal projection.
  Vector project(const Vector& v) const;

  /// Gram matrix of the metric in the stored basis.
  Matrix gram() const;

  /// {v : g(v, s) = 0 for all s in the subspace}.
  Subspace metric_orthogonal_complement(double tol = kDefaultTol) const;

 private:
  struct Orthonormal {};
  Subspace(Orthonormal, PseudoHermitianSpace ambient, Matrix basis);

  PseudoHermitianSpace ambient_;
  Matrix basis_;
};

/// True iff |g(u, v)| <= tol for every pair of basis vectors. The zero subspace is isotropic.
bool is_isotropic(const Subspace& s, double tol = kDefaultTol);

/// True iff Jcan u lies in the subspace (residual <= tol) for each basis vector u.
bool is_J_invariant(const Subspace& s, double tol = kDefaultTol);

/// Number of positive and negative eigenvalues of a symmetric matrix; eigenvalues with
/// |lambda| <= tol * max|lambda| count as zero.
struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
};

Inertia inertia(const Matrix& symmetric, double tol = kDefaultTol);

namespace linalg {

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : static_cast<double>(m.cwiseAbs().maxCoeff());
}

/// Singular values below rel_tol * sigma_max count as zero. A zero matrix has rank 0.
int numerical_rank(const Matrix& m, double rel_tol = kDefaultTol);
int numerical_rank(const CMatrix& m, double rel_tol = kDefaultTol);

/// Orthonormal basis of the column space.
Matrix column_space(const Matrix& m, double rel_tol = kDefaultTol);
/// Orthonormal basis of the kernel.
Matrix null_space(const Matrix& m, double rel_tol = kDefaultTol);

/// sigma_max / sigma_min; infinity for singular input.
double condition_number(const CMatrix& m);

}  // namespace linalg

}  // namespace flatnk
