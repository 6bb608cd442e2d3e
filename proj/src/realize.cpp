// Copyright 2026 The flatnk Authors
// SPDX-License-Identifier: Apache-2.0

#include "flatnk/realize.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace flatnk {

namespace {

int sort_triple(int& a, int& b, int& c) {
  int sign = 1;
  if (a > b) { std::swap(a, b); sign = -sign; }
  if (b > c) { std::swap(b, c); sign = -sign; }
  if (a > b) { std::swap(a, b); sign = -sign; }
  if (a == b || b == c) return 0;
  return sign;
}

}  // namespace

ComplexThreeForm::ComplexThreeForm(int m) : m_(m) {
  if (m < 1) throw std::invalid_argument("complex three-form needs m >= 1");
  coeffs_.assign(RealThreeForm::triple_count(m), Complex(0.0, 0.0));
}

ComplexThreeForm::ComplexThreeForm(int m, std::vector<Complex> coeffs) : ComplexThreeForm(m) {
  if (coeffs.size() != coeffs_.size()) {
    throw std::invalid_argument("complex three-form on C^" + std::to_string(m) + " needs " +
                                std::to_string(coeffs_.size()) + " coefficients");
  }
  coeffs_ = std::move(coeffs);
}

Complex ComplexThreeForm::coeff(int i, int j, int k) const {
  const int sign = sort_triple(i, j, k);
  if (sign == 0) return {0.0, 0.0};
  return static_cast<double>(sign) * coeffs_[RealThreeForm::triple_index(m_, i, j, k)];
}

void ComplexThreeForm::set(int i, int j, int k, Complex value) {
  if (i < 0 || j < 0 || k < 0 || i >= m_ || j >= m_ || k >= m_) {
    throw std::out_of_range("complex three-form index out of range");
  }
  const int sign = sort_triple(i, j, k);
  if (sign == 0) {
    if (value != Complex(0.0, 0.0)) throw std::invalid_argument("coefficient with repeated index");
    return;
  }
  coeffs_[RealThreeForm::triple_index(m_, i, j, k)] = static_cast<double>(sign) * value;
}

Complex ComplexThreeForm::operator()(const CVector& x, const CVector& y, const CVector& z) const {
  Complex acc(0.0, 0.0);
  std::size_t idx = 0;
  for (int i = 0; i < m_; ++i) {
    for (int j = i + 1; j < m_; ++j) {
      for (int k = j + 1; k < m_; ++k, ++idx) {
        const Complex v = coeffs_[idx];
        if (v == Complex(0.0, 0.0)) continue;
        const Complex det = x(i) * (y(j) * z(k) - y(k) * z(j)) - x(j) * (y(i) * z(k) - y(k) * z(i)) +
                            x(k) * (y(i) * z(j) - y(j) * z(i));
        acc += v * det;
      }
    }
  }
  return acc;
}

CVector ComplexThreeForm::contract(const CVector& x, const CVector& y) const {
  CVector out = CVector::Zero(m_);
  for (int k = 0; k < m_; ++k) out(k) = (*this)(x, y, CVector::Unit(m_, k));
  return out;
}

double ComplexThreeForm::max_modulus() const {
  double m = 0.0;
  for (const Complex& v : coeffs_) m = std::max(m, std::abs(v));
  return m;
}

ComplexThreeForm& ComplexThreeForm::operator+=(const ComplexThreeForm& other) {
  if (other.m_ != m_) throw std::invalid_argument("adding complex forms of different m");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

ComplexThreeForm& ComplexThreeForm::operator*=(Complex s) {
  for (Complex& v : coeffs_) v *= s;
  return *this;
}

ComplexThreeForm complex_basis_form(int m, int i, int j, int k) {
  ComplexThreeForm zeta(m);
  zeta.set(i, j, k, {1.0, 0.0});
  return zeta;
}

Vector null_direction_a(const PseudoHermitianSpace& space, int j) {
  const int m = space.k();
  Vector v = Vector::Zero(space.real_dim());
  v(2 * j) = M_SQRT1_2;
  v(2 * (m + j)) = M_SQRT1_2;
  return v;
}

Vector null_direction_b(const PseudoHermitianSpace& space, int j) {
  const int m = space.k();
  Vector v = Vector::Zero(space.real_dim());
  v(2 * j) = M_SQRT1_2;
  v(2 * (m + j)) = -M_SQRT1_2;
  return v;
}

Realization realize(const ComplexThreeForm& zeta) {
  const int m = zeta.m();
  PseudoHermitianSpace space(m, m);
  const int n = space.real_dim();

  // sqrt(2) b^j evaluated on the real basis: one Gaussian unit per real index.
  struct Entry {
    int slot;
    Complex unit;
  };
  std::vector<Entry> bhat(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    const int complex_index = a / 2;
    const bool imaginary = a % 2 == 1;
    const bool negative_block = complex_index >= m;
    Complex unit = imaginary ? Complex(0.0, 1.0) : Complex(1.0, 0.0);
    if (negative_block) unit = -unit;
    bhat[static_cast<std::size_t>(a)] = {complex_index % m, unit};
  }

  // eta_abc = 2 Re(zeta~_abc) = Re(zeta_{ijk} u_a u_b u_c) / sqrt(2); the unit
  // product is exact so only the final scaling rounds.
  std::vector<double> coeffs(RealThreeForm::triple_count(n), 0.0);
  std::size_t idx = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int c = b + 1; c < n; ++c, ++idx) {
        const Entry& ea = bhat[static_cast<std::size_t>(a)];
        const Entry& eb = bhat[static_cast<std::size_t>(b)];
        const Entry& ec = bhat[static_cast<std::size_t>(c)];
        const Complex z = zeta.coeff(ea.slot, eb.slot, ec.slot);
        if (z == Complex(0.0, 0.0)) continue;
        const Complex units = ea.unit * eb.unit * ec.unit;
        coeffs[idx] = (z * units).real() * M_SQRT1_2;
      }
    }
  }

  Matrix l_span(n, 2 * m);
  Matrix lp_span(n, 2 * m);
  for (int j = 0; j < m; ++j) {
    const Vector a = null_direction_a(space, j);
    const Vector b = null_direction_b(space, j);
    l_span.col(2 * j) = a;
    l_span.col(2 * j + 1) = space.jcan() * a;
    lp_span.col(2 * j) = b;
    lp_span.col(2 * j + 1) = space.jcan() * b;
  }

  Subspace L(space, l_span);
  Subspace Lprime(space, lp_span);
  RealThreeForm eta(space, std::move(coeffs));
  return Realization{std::move(space), std::move(L), std::move(Lprime), std::move(eta)};
}

ComplexThreeForm complex_form_of(const RealThreeForm& eta) {
  const PseudoHermitianSpace& space = eta.space();
  if (space.k() != space.l() || space.k() < 1) {
    throw std::invalid_argument("complex_form_of needs C^{m,m} with m >= 1, got C^{" + std::to_string(space.k()) +
                                "," + std::to_string(space.l()) + "}");
  }
  const int m = space.k();
  std::vector<Vector> b(static_cast<std::size_t>(m));
  std::vector<Vector> jb(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    b[static_cast<std::size_t>(j)] = null_direction_b(space, j);
    jb[static_cast<std::size_t>(j)] = space.jcan() * b[static_cast<std::size_t>(j)];
  }
  ComplexThreeForm zeta(m);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      for (int k = j + 1; k < m; ++k) {
        const auto& bj = b[static_cast<std::size_t>(j)];
        const auto& bk = b[static_cast<std::size_t>(k)];
        const double re = eta(b[static_cast<std::size_t>(i)], bj, bk);
        const double im = -eta(jb[static_cast<std::size_t>(i)], bj, bk);
        zeta.set(i, j, k, Complex(re, im) * 0.5);
      }
    }
  }
  return zeta;
}

SupportRank maximal_support(const ComplexThreeForm& zeta, double tol) {
  const int m = zeta.m();
  const int pairs = m * (m - 1) / 2;
  CMatrix rows = CMatrix::Zero(pairs, m);
  int r = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j, ++r) {
      for (int k = 0; k < m; ++k) rows(r, k) = zeta.coeff(i, j, k);
    }
  }
  SupportRank out;
  out.rank = zeta.is_zero() ? 0 : linalg::numerical_rank(rows, tol);
  out.maximal = out.rank == m;
  return out;
}

Strictness strictness(const ComplexThreeForm& zeta) {
  Strictness out;
  out.max_modulus = zeta.max_modulus();
  out.strict = out.max_modulus > kZetaZeroThreshold;
  if (!out.strict && out.max_modulus > 0.0) {
    std::ostringstream msg;
    msg << "largest coefficient modulus " << out.max_modulus << " is at or below the zero threshold "
        << kZetaZeroThreshold << "; treated as zero";
    out.diagnostic = msg.str();
  } else if (!out.strict) {
    out.diagnostic = "zeta is identically zero";
  }
  return out;
}

}  // namespace flatnk
