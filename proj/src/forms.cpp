// Copyright 2026 The flatnk Authors
// SPDX-License-Identifier: Apache-2.0

#include "flatnk/forms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace flatnk {

namespace {

std::size_t choose2(std::size_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }
std::size_t choose3(std::size_t n) { return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6; }

// Sorts (a, b, c) in place and returns the permutation sign, or 0 on a repeat.
int sort_triple(int& a, int& b, int& c) {
  int sign = 1;
  if (a > b) { std::swap(a, b); sign = -sign; }
  if (b > c) { std::swap(b, c); sign = -sign; }
  if (a > b) { std::swap(a, b); sign = -sign; }
  if (a == b || b == c) return 0;
  return sign;
}

// Jcan e_a = sign * e_index.
struct Rotated {
  int index;
  double sign;
};

Rotated rotate(int a) { return a % 2 == 0 ? Rotated{a + 1, 1.0} : Rotated{a - 1, -1.0}; }

double det3(double a0, double a1, double a2, double b0, double b1, double b2, double c0, double c1,
            double c2) {
  return a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) + a2 * (b0 * c1 - b1 * c0);
}

}  // namespace

RealThreeForm::RealThreeForm(PseudoHermitianSpace space)
    : space_(std::move(space)), coeffs_(triple_count(space_.real_dim()), 0.0) {}

RealThreeForm::RealThreeForm(PseudoHermitianSpace space, std::vector<double> coeffs)
    : space_(std::move(space)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != triple_count(space_.real_dim())) {
    throw std::invalid_argument("three-form needs " + std::to_string(triple_count(space_.real_dim())) +
                                " coefficients, got " + std::to_string(coeffs_.size()));
  }
}

std::size_t RealThreeForm::triple_count(int dim) { return choose3(static_cast<std::size_t>(dim)); }

std::size_t RealThreeForm::triple_index(int dim, int a, int b, int c) {
  const auto n = static_cast<std::size_t>(dim);
  const auto ua = static_cast<std::size_t>(a);
  const auto ub = static_cast<std::size_t>(b);
  const auto uc = static_cast<std::size_t>(c);
  return (choose3(n) - choose3(n - ua)) + (choose2(n - ua - 1) - choose2(n - ub)) + (uc - ub - 1);
}

double RealThreeForm::coeff(int a, int b, int c) const {
  const int sign = sort_triple(a, b, c);
  if (sign == 0) return 0.0;
  return sign * coeffs_[triple_index(dim(), a, b, c)];
}

void RealThreeForm::set(int a, int b, int c, double value) {
  const int n = dim();
  if (a < 0 || b < 0 || c < 0 || a >= n || b >= n || c >= n) {
    throw std::out_of_range("three-form index out of range");
  }
  const int sign = sort_triple(a, b, c);
  if (sign == 0) {
    if (value != 0.0) throw std::invalid_argument("three-form coefficient with repeated index");
    return;
  }
  coeffs_[triple_index(n, a, b, c)] = sign * value;
}

double RealThreeForm::operator()(const Vector& x, const Vector& y, const Vector& z) const {
  const int n = dim();
  double acc = 0.0;
  std::size_t idx = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int c = b + 1; c < n; ++c, ++idx) {
        const double v = coeffs_[idx];
        if (v == 0.0) continue;
        acc += v * det3(x(a), x(b), x(c), y(a), y(b), y(c), z(a), z(b), z(c));
      }
    }
  }
  return acc;
}

Matrix RealThreeForm::contract(const Vector& x) const {
  const int n = dim();
  Matrix m = Matrix::Zero(n, n);
  std::size_t idx = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int c = b + 1; c < n; ++c, ++idx) {
        const double v = coeffs_[idx];
        if (v == 0.0) continue;
        // eta_{abc} = eta_{bca} = eta_{cab} = v, odd permutations -v.
        m(b, c) += x(a) * v;
        m(c, b) -= x(a) * v;
        m(c, a) += x(b) * v;
        m(a, c) -= x(b) * v;
        m(a, b) += x(c) * v;
        m(b, a) -= x(c) * v;
      }
    }
  }
  return m;
}

double RealThreeForm::max_abs() const {
  double m = 0.0;
  for (double v : coeffs_) m = std::max(m, std::abs(v));
  return m;
}

RealThreeForm& RealThreeForm::operator+=(const RealThreeForm& other) {
  if (!(space_ == other.space_)) throw std::invalid_argument("adding forms on different spaces");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

RealThreeForm& RealThreeForm::operator-=(const RealThreeForm& other) {
  if (!(space_ == other.space_)) throw std::invalid_argument("subtracting forms on different spaces");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

RealThreeForm& RealThreeForm::operator*=(double s) {
  for (double& v : coeffs_) v *= s;
  return *this;
}

RealThreeForm wedge(const PseudoHermitianSpace& space, const Vector& alpha, const Vector& beta,
                    const Vector& gamma) {
  const int n = space.real_dim();
  std::vector<double> coeffs(RealThreeForm::triple_count(n));
  std::size_t idx = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int c = b + 1; c < n; ++c, ++idx) {
        coeffs[idx] = det3(alpha(a), beta(a), gamma(a), alpha(b), beta(b), gamma(b), alpha(c),
                           beta(c), gamma(c));
      }
    }
  }
  return RealThreeForm(space, std::move(coeffs));
}

RealThreeForm basis_form(const PseudoHermitianSpace& space, int a, int b, int c) {
  RealThreeForm eta(space);
  eta.set(a, b, c, 1.0);
  return eta;
}

RealThreeForm pullback(const RealThreeForm& eta, const Matrix& map, const PseudoHermitianSpace& target) {
  if (map.rows() != eta.dim() || map.cols() != target.real_dim()) {
    throw std::invalid_argument("pullback map has wrong shape");
  }
  const int n = target.real_dim();
  std::vector<double> coeffs(RealThreeForm::triple_count(n));
  std::vector<Matrix> contracted;
  contracted.reserve(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) contracted.push_back(map.transpose() * eta.contract(map.col(a)) * map);
  std::size_t idx = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int c = b + 1; c < n; ++c, ++idx) coeffs[idx] = contracted[static_cast<std::size_t>(a)](b, c);
    }
  }
  return RealThreeForm(target, std::move(coeffs));
}

Matrix eta_endo(const RealThreeForm& eta, const Vector& x) {
  // g(E Y, Z) = Y^T M Z  =>  G E = M^T.
  return eta.space().metric_inverse() * eta.contract(x).transpose();
}

std::vector<Matrix> eta_endos(const RealThreeForm& eta) {
  const int n = eta.dim();
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) out.push_back(eta_endo(eta, Vector::Unit(n, a)));
  return out;
}

ConditionResult check_condition_i(const RealThreeForm& eta, double tol) {
  ConditionResult result;
  result.tolerance = tol;
  const auto endos = eta_endos(eta);
  const int n = eta.dim();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const double r = linalg::max_abs(endos[static_cast<std::size_t>(a)] * endos[static_cast<std::size_t>(b)]);
      if (r > result.residual || result.witness_a < 0) {
        if (r > result.residual) result.residual = r;
        result.witness_a = a;
        result.witness_b = b;
      }
    }
  }
  result.holds = result.residual <= tol;
  return result;
}

ConditionResult check_condition_ii(const RealThreeForm& eta, double tol) {
  ConditionResult result;
  result.tolerance = tol;
  const Matrix& jcan = eta.space().jcan();
  const auto endos = eta_endos(eta);
  for (int a = 0; a < eta.dim(); ++a) {
    const Matrix& e = endos[static_cast<std::size_t>(a)];
    const double r = linalg::max_abs(e * jcan + jcan * e);
    if (r > result.residual || result.witness_a < 0) {
      if (r > result.residual) result.residual = r;
      result.witness_a = a;
    }
  }
  result.holds = result.residual <= tol;
  return result;
}

Subspace support(const RealThreeForm& eta, double tol) {
  const int n = eta.dim();
  Matrix images(n, n * n);
  const auto endos = eta_endos(eta);
  for (int a = 0; a < n; ++a) images.middleCols(a * n, n) = endos[static_cast<std::size_t>(a)];
  return Subspace(eta.space(), images, tol);
}

RealThreeForm pure_type_part(const RealThreeForm& eta) {
  const int n = eta.dim();
  std::vector<double> coeffs(RealThreeForm::triple_count(n));
  std::size_t idx = 0;
  for (int a = 0; a < n; ++a) {
    const Rotated ja = rotate(a);
    for (int b = a + 1; b < n; ++b) {
      const Rotated jb = rotate(b);
      for (int c = b + 1; c < n; ++c, ++idx) {
        const Rotated jc = rotate(c);
        const double v = eta.coeff(a, b, c) - jb.sign * jc.sign * eta.coeff(a, jb.index, jc.index) -
                         ja.sign * jc.sign * eta.coeff(ja.index, b, jc.index) -
                         ja.sign * jb.sign * eta.coeff(ja.index, jb.index, c);
        coeffs[idx] = 0.25 * v;
      }
    }
  }
  return RealThreeForm(eta.space(), std::move(coeffs));
}

TypeSplit type_split(const RealThreeForm& eta) {
  RealThreeForm minus = pure_type_part(eta);
  RealThreeForm plus = eta - minus;
  return {std::move(plus), std::move(minus)};
}

TypeCharacterization anticommutator_characterization(const RealThreeForm& eta, double tol) {
  TypeCharacterization out;
  const TypeSplit split = type_split(eta);
  out.plus_max = split.plus.max_abs();
  out.plus_vanishes = out.plus_max <= tol;
  const ConditionResult ii = check_condition_ii(eta, tol);
  out.anticommutator_residual = ii.residual;
  out.anticommutes = ii.holds;
  out.agree = out.plus_vanishes == out.anticommutes;
  return out;
}

}  // namespace flatnk
