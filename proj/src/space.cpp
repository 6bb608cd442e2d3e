// Copyright 2026 The flatnk Authors
// SPDX-License-Identifier: Apache-2.0

#include "flatnk/space.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace flatnk {

PseudoHermitianSpace::PseudoHermitianSpace(int k, int l) : k_(k), l_(l) {
  if (k < 0 || l < 0) {
    throw std::invalid_argument("space dimensions must be nonnegative, got (" +
                                std::to_string(k) + "," + std::to_string(l) + ")");
  }
  if (k + l < 1) {
    throw std::invalid_argument("space must have complex dimension >= 1 (k = l = 0 given)");
  }
  const int dim = real_dim();
  metric_ = Matrix::Zero(dim, dim);
  jcan_ = Matrix::Zero(dim, dim);
  for (int j = 0; j < n(); ++j) {
    const double s = j < k_ ? 1.0 : -1.0;
    metric_(2 * j, 2 * j) = s;
    metric_(2 * j + 1, 2 * j + 1) = s;
    jcan_(2 * j + 1, 2 * j) = 1.0;
    jcan_(2 * j, 2 * j + 1) = -1.0;
  }
}

double PseudoHermitianSpace::inner(const Vector& x, const Vector& y) const {
  double acc = 0.0;
  for (int a = 0; a < real_dim(); ++a) acc += metric_(a, a) * x(a) * y(a);
  return acc;
}

Vector PseudoHermitianSpace::realify(const CVector& z) const {
  if (z.size() != n()) throw std::invalid_argument("complex vector has wrong dimension");
  Vector x(real_dim());
  for (int j = 0; j < n(); ++j) {
    x(2 * j) = z(j).real();
    x(2 * j + 1) = z(j).imag();
  }
  return x;
}

CVector PseudoHermitianSpace::complexify(const Vector& x) const {
  if (x.size() != real_dim()) throw std::invalid_argument("real vector has wrong dimension");
  CVector z(n());
  for (int j = 0; j < n(); ++j) z(j) = Complex(x(2 * j), x(2 * j + 1));
  return z;
}

PseudoHermitianSpace make_space(int k, int l) { return PseudoHermitianSpace(k, l); }

TypeProjectors type_projectors(const PseudoHermitianSpace& space) {
  const int dim = space.real_dim();
  const CMatrix id = CMatrix::Identity(dim, dim);
  const CMatrix ij = Complex(0.0, 1.0) * space.jcan().cast<Complex>();
  return {0.5 * (id - ij), 0.5 * (id + ij)};
}

// ---------------------------------------------------------------------------
// Subspace

Subspace::Subspace(Orthonormal, PseudoHermitianSpace ambient, Matrix basis)
    : ambient_(std::move(ambient)), basis_(std::move(basis)) {}

Subspace::Subspace(PseudoHermitianSpace ambient, const Matrix& spanning, double tol)
    : ambient_(std::move(ambient)) {
  if (spanning.rows() != ambient_.real_dim()) {
    throw std::invalid_argument("spanning set has wrong ambient dimension");
  }
  basis_ = linalg::column_space(spanning, tol);
}

Subspace Subspace::zero(PseudoHermitianSpace ambient) {
  const int dim = ambient.real_dim();
  return Subspace(Orthonormal{}, std::move(ambient), Matrix(dim, 0));
}

Subspace Subspace::whole(PseudoHermitianSpace ambient) {
  const int dim = ambient.real_dim();
  return Subspace(Orthonormal{}, std::move(ambient), Matrix(Matrix::Identity(dim, dim)));
}

Vector Subspace::project(const Vector& v) const {
  if (basis_.cols() == 0) return Vector::Zero(v.size());
  return basis_ * (basis_.transpose() * v);
}

double Subspace::residual(const Vector& v) const { return (v - project(v)).norm(); }

bool Subspace::contains(const Vector& v, double tol) const {
  return residual(v) <= tol * std::max(v.norm(), std::numeric_limits<double>::min());
}

Matrix Subspace::gram() const { return basis_.transpose() * ambient_.metric() * basis_; }

Subspace Subspace::metric_orthogonal_complement(double tol) const {
  if (dim() == 0) return whole(ambient_);
  const Matrix pairing = basis_.transpose() * ambient_.metric();
  return Subspace(Orthonormal{}, ambient_, linalg::null_space(pairing, tol));
}

bool is_isotropic(const Subspace& s, double tol) {
  if (s.dim() == 0) return true;
  return linalg::max_abs(s.gram()) <= tol;
}

bool is_J_invariant(const Subspace& s, double tol) {
  const Matrix& jcan = s.ambient().jcan();
  for (int c = 0; c < s.dim(); ++c) {
    if (s.residual(jcan * s.basis().col(c)) > tol) return false;
  }
  return true;
}

Inertia inertia(const Matrix& symmetric, double tol) {
  Inertia out;
  if (symmetric.rows() == 0) return out;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetric, Eigen::EigenvaluesOnly);
  const Vector& ev = solver.eigenvalues();
  const double scale = ev.cwiseAbs().maxCoeff();
  for (int i = 0; i < ev.size(); ++i) {
    if (scale == 0.0 || std::abs(ev(i)) <= tol * scale) {
      ++out.zero;
    } else if (ev(i) > 0) {
      ++out.positive;
    } else {
      ++out.negative;
    }
  }
  return out;
}

namespace linalg {



namespace {

template <typename M>
int rank_of(const M& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<M> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cut = rel_tol * sv(0);
  int r = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > cut) ++r;
  }
  return r;
}

}  // namespace

int numerical_rank(const Matrix& m, double rel_tol) { return rank_of(m, rel_tol); }

int numerical_rank(const CMatrix& m, double rel_tol) { return rank_of(m, rel_tol); }

Matrix column_space(const Matrix& m, double rel_tol) {
  if (m.cols() == 0) return Matrix(m.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const Vector& sv = svd.singularValues();
  int r = 0;
  if (sv.size() > 0 && sv(0) > 0.0) {
    for (int i = 0; i < sv.size(); ++i) {
      if (sv(i) > rel_tol * sv(0)) ++r;
    }
  }
  return svd.matrixU().leftCols(r);
}

Matrix null_space(const Matrix& m, double rel_tol) {
  const auto cols = m.cols();
  if (m.rows() == 0) return Matrix::Identity(cols, cols);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const Vector& sv = svd.singularValues();
  int r = 0;
  if (sv.size() > 0 && sv(0) > 0.0) {
    for (int i = 0; i < sv.size(); ++i) {
      if (sv(i) > rel_tol * sv(0)) ++r;
    }
  }
  return svd.matrixV().rightCols(cols - r);
}

double condition_number(const CMatrix& m) {
  if (m.size() == 0) return 1.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  const Vector& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

}  // namespace linalg

}  // namespace flatnk
