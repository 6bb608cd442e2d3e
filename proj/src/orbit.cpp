// Copyright 2026 The flatnk Authors
// SPDX-License-Identifier: Apache-2.0

#include "flatnk/orbit.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace flatnk {

namespace {

Complex det3(const CMatrix& h, int a, int b, int c, int i, int j, int k) {
  return h(a, i) * (h(b, j) * h(c, k) - h(b, k) * h(c, j)) - h(a, j) * (h(b, i) * h(c, k) - h(b, k) * h(c, i)) +
         h(a, k) * (h(b, i) * h(c, j) - h(b, j) * h(c, i));
}

// g with act(g, e^1 ^ e^2 ^ e^3) = zeta for a nonzero decomposable zeta on C^m.
CMatrix normalizing_element(const ComplexThreeForm& zeta) {
  const int m = zeta.m();
  const int pairs = m * (m - 1) / 2;
  CMatrix rows(pairs, m);
  int r = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j, ++r) {
      for (int k = 0; k < m; ++k) rows(r, k) = zeta.coeff(i, j, k);
    }
  }
  // Rows of V^H: the first three span the support, so zeta = lambda f1 ^ f2 ^ f3 with f = V^H.
  Eigen::JacobiSVD<CMatrix> svd(rows, Eigen::ComputeFullV);
  const CMatrix v = svd.matrixV();
  const Complex lambda = zeta(v.col(0), v.col(1), v.col(2));
  // zeta(X) = lambda e123(V^H X) = act(V D, e123)(X) with D = diag(1/lambda, 1, ..., 1).
  CMatrix d = CMatrix::Identity(m, m);
  d(0, 0) = 1.0 / lambda;
  return v * d;
}

}  // namespace

ComplexThreeForm act(const CMatrix& g, const ComplexThreeForm& zeta) {
  const int m = zeta.m();
  if (g.rows() != m || g.cols() != m) throw std::invalid_argument("group element has wrong size");
  const double cond = linalg::condition_number(g);
  if (!(cond <= kMaxConditionNumber)) {
    std::ostringstream msg;
    msg << "group element is numerically singular (condition number " << cond << " > " << kMaxConditionNumber << ")";
    throw SingularGroupElement(msg.str(), cond);
  }
  const CMatrix h = g.inverse();
  ComplexThreeForm out(m);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      for (int k = j + 1; k < m; ++k) {
        Complex acc(0.0, 0.0);
        for (int a = 0; a < m; ++a) {
          for (int b = a + 1; b < m; ++b) {
            for (int c = b + 1; c < m; ++c) {
              const Complex z = zeta.coeff(a, b, c);
              if (z != Complex(0.0, 0.0)) acc += z * det3(h, a, b, c, i, j, k);
            }
          }
        }
        out.set(i, j, k, acc);
      }
    }
  }
  return out;
}

bool is_decomposable(const ComplexThreeForm& zeta, double tol) {
  const int m = zeta.m();
  const double scale = zeta.max_modulus();
  if (zeta.is_zero()) return true;
  double worst = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      std::vector<Complex> c(static_cast<std::size_t>(m));
      for (int k = 0; k < m; ++k) c[static_cast<std::size_t>(k)] = zeta.coeff(i, j, k);
      for (int p = 0; p < m; ++p) {
        for (int q = p + 1; q < m; ++q) {
          for (int r = q + 1; r < m; ++r) {
            for (int s = r + 1; s < m; ++s) {
              const Complex w = c[static_cast<std::size_t>(p)] * zeta.coeff(q, r, s) -
                                c[static_cast<std::size_t>(q)] * zeta.coeff(p, r, s) +
                                c[static_cast<std::size_t>(r)] * zeta.coeff(p, q, s) -
                                c[static_cast<std::size_t>(s)] * zeta.coeff(p, q, r);
              worst = std::max(worst, std::abs(w));
            }
          }
        }
      }
    }
  }
  return worst <= tol * scale * scale;
}

CMatrix infinitesimal_action(const ComplexThreeForm& zeta) {
  const int m = zeta.m();
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(RealThreeForm::triple_count(m)), m * m);
  int row = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      for (int k = j + 1; k < m; ++k, ++row) {
        for (int p = 0; p < m; ++p) {
          // E_pq sends e_q to e_p; only q in {i, j, k} contributes.
          out(row, p * m + i) -= zeta.coeff(p, j, k);
          out(row, p * m + j) -= zeta.coeff(i, p, k);
          out(row, p * m + k) -= zeta.coeff(i, j, p);
        }
      }
    }
  }
  return out;
}

OrbitInvariants invariants(const ComplexThreeForm& zeta, double tol) {
  OrbitInvariants out;
  out.m = zeta.m();
  const SupportRank support = maximal_support(zeta, tol);
  out.support_rank = support.rank;
  out.is_maximal_support = support.maximal;
  out.orbit_dimension = zeta.is_zero() ? 0 : linalg::numerical_rank(infinitesimal_action(zeta), tol);
  if (zeta.m() <= kMaxDecomposableM) out.is_decomposable = is_decomposable(zeta, tol);
  return out;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::equivalent: return "equivalent";
    case Verdict::inequivalent: return "inequivalent";
    case Verdict::unknown: return "unknown";
  }
  return "unknown";
}

Equivalence equivalent_small_m(const ComplexThreeForm& first, const ComplexThreeForm& second, double tol) {
  if (first.m() != second.m()) {
    throw std::invalid_argument("cannot compare forms on C^" + std::to_string(first.m()) + " and C^" +
                                std::to_string(second.m()));
  }
  const int m = first.m();
  const bool z1 = first.is_zero();
  const bool z2 = second.is_zero();
  Equivalence out;
  if (z1 && z2) {
    out.verdict = Verdict::equivalent;
    out.witness = CMatrix::Identity(m, m);
    out.reason = "both forms are zero";
    return out;
  }
  if (z1 != z2) {
    out.verdict = Verdict::inequivalent;
    out.reason = "exactly one form is zero";
    return out;
  }
  if (m == 3) {
    CMatrix g = CMatrix::Identity(3, 3);
    g(0, 0) = first.coeff(0, 1, 2) / second.coeff(0, 1, 2);
    out.verdict = Verdict::equivalent;
    out.witness = g;
    out.reason = "the space of three-forms on C^3 is one-dimensional";
    return out;
  }
  if (m == 4) {
    // Both are decomposable; route each through e^1 ^ e^2 ^ e^3.
    const CMatrix g1 = normalizing_element(first);
    const CMatrix g2 = normalizing_element(second);
    out.verdict = Verdict::equivalent;
    out.witness = g2 * g1.inverse();
    out.reason = "every nonzero three-form on C^4 is decomposable";
    return out;
  }
  const OrbitInvariants a = invariants(first, tol);
  const OrbitInvariants b = invariants(second, tol);
  if (!(a == b)) {
    out.verdict = Verdict::inequivalent;
    std::ostringstream msg;
    msg << "orbit invariants differ (support rank " << a.support_rank << " vs " << b.support_rank
        << ", orbit dimension " << a.orbit_dimension << " vs " << b.orbit_dimension << ")";
    out.reason = msg.str();
    return out;
  }
  out.verdict = Verdict::unknown;
  out.reason = "orbit invariants agree; no complete classification implemented for m >= 5";
  return out;
}

}  // namespace flatnk
