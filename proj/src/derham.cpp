// Copyright 2026 The flatnk Authors
// SPDX-License-Identifier: Apache-2.0

#include "flatnk/derham.hpp"

#include "sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace flatnk {

namespace {

// Basis (u_1, J u_1, ..., u_m, J u_m) of a J-invariant subspace, Euclidean orthonormal.
Matrix complex_adapted_basis(const Subspace& s, double tol) {
  const Matrix& jcan = s.ambient().jcan();
  const int n = s.ambient().real_dim();
  Matrix out(n, s.dim());
  int filled = 0;
  while (filled < s.dim()) {
    // Pivot on the basis column least explained by the vectors chosen so far.
    Matrix rest = s.basis();
    if (filled > 0) rest -= out.leftCols(filled) * (out.leftCols(filled).transpose() * rest);
    Eigen::Index best = 0;
    const double norm = rest.colwise().norm().maxCoeff(&best);
    if (norm <= std::sqrt(tol)) break;
    const Vector r = rest.col(best) / norm;
    out.col(filled) = r;
    out.col(filled + 1) = jcan * r;
    filled += 2;
  }
  if (filled != s.dim()) throw SplitError("support is not Jcan-invariant; cannot build a complex basis");
  return out;
}

double min_abs_eigenvalue(const Matrix& symmetric) {
  if (symmetric.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetric, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().minCoeff();
}

}  // namespace

DeRhamSplit split(const RealThreeForm& eta, double tol) { return split(eta, Matrix(), tol); }

DeRhamSplit split(const RealThreeForm& eta, const Matrix& complement_shift, double tol) {
  if (complement_shift.size() > 0 && complement_shift.rows() != eta.dim()) {
    throw std::invalid_argument("complement shift has " + std::to_string(complement_shift.rows()) +
                                " rows, expected " + std::to_string(eta.dim()));
  }
  const ConditionResult i = check_condition_i(eta, tol);
  const ConditionResult ii = check_condition_ii(eta, tol);
  if (!i.holds || !ii.holds) {
    std::ostringstream msg;
    msg << "cannot split an inadmissible form (condition (i) residual " << i.residual
        << ", condition (ii) residual " << ii.residual << ", tolerance " << tol << ")";
    throw SplitError(msg.str());
  }

  const PseudoHermitianSpace& space = eta.space();
  const int n = space.real_dim();
  Subspace L = support(eta, tol);
  if (L.dim() == 0) {
    return DeRhamSplit{eta,         Subspace::whole(space), Subspace::zero(space), L,
                       Subspace::zero(space), Matrix(n, 0),   std::nullopt,          0};
  }
  if (L.dim() % 2 != 0) throw SplitError("support has odd real dimension");
  const int m = L.dim() / 2;

  const Matrix& g = space.metric();
  const Matrix& jcan = space.jcan();
  const Matrix U = complex_adapted_basis(L, tol);

  // Minimum-norm g-dual family: U^T G W = Id.
  const Matrix pairing = U.transpose() * g;
  const Matrix normal = pairing * pairing.transpose();
  if (min_abs_eigenvalue(normal) <= tol) {
    throw SplitError("pairing between the support and its dual candidates is singular at tolerance " +
                     std::to_string(tol));
  }
  Matrix W = pairing.transpose() * normal.ldlt().solve(Matrix::Identity(2 * m, 2 * m));
  // L^perp = G L since U is orthonormal and G^2 = Id; shifts inside it keep U^T G W = Id.
  const Matrix gu = g * U;
  for (int j = 0; j < std::min<Eigen::Index>(m, complement_shift.cols()); ++j) {
    const Vector s = complement_shift.col(j);
    W.col(2 * j) += s - gu * (gu.transpose() * s);
  }
  for (int j = 0; j < m; ++j) W.col(2 * j + 1) = jcan * W.col(2 * j);

  // Isotropic correction; commutes with Jcan, so J-invariance survives.
  const Matrix C = W.transpose() * g * W;
  const Matrix Wp = W - 0.5 * U * C;

  Matrix adapted(n, 4 * m);
  for (int j = 0; j < m; ++j) {
    const Vector p = (U.col(2 * j) + Wp.col(2 * j)) * M_SQRT1_2;
    const Vector q = (U.col(2 * j) - Wp.col(2 * j)) * M_SQRT1_2;
    adapted.col(2 * j) = p;
    adapted.col(2 * j + 1) = jcan * p;
    adapted.col(2 * m + 2 * j) = q;
    adapted.col(2 * m + 2 * j + 1) = jcan * q;
  }

  Subspace Lprime(space, Wp, tol);
  Subspace Vprime(space, adapted, tol);
  Subspace V0 = Vprime.metric_orthogonal_complement(tol);
  RealThreeForm restricted = pullback(eta, adapted, PseudoHermitianSpace(m, m));

  return DeRhamSplit{eta, std::move(V0), std::move(Vprime), std::move(L), std::move(Lprime),
                     std::move(adapted), std::move(restricted), m};
}

SplitReport verify_split(const DeRhamSplit& s, double tol, const SampleConfig& cfg) {
  const PseudoHermitianSpace& space = s.eta.space();
  const int n = space.real_dim();
  const Matrix& g = space.metric();
  const Matrix& jcan = space.jcan();

  SplitReport report;
  report.dim_V0 = s.V0.dim();
  report.dim_Vprime = s.Vprime.dim();
  report.m = s.m;
  report.signature_Vprime = inertia(s.Vprime.gram(), tol);
  report.signature_V0 = inertia(s.V0.gram(), tol);

  auto at_most = [&](std::string name, double value, double threshold) {
    report.checks.push_back({std::move(name), value, threshold, value <= threshold});
  };
  auto above = [&](std::string name, double value, double threshold) {
    report.checks.push_back({std::move(name), value, threshold, value > threshold});
  };

  at_most("dimension_sum", std::abs(report.dim_V0 + report.dim_Vprime - n), 0.0);
  at_most("dim_Vprime_is_4m", std::abs(report.dim_Vprime - 4 * s.m), 0.0);
  at_most("dim_L_is_2m", std::abs(s.L.dim() - 2 * s.m), 0.0);

  const double ortho = (report.dim_V0 == 0 || report.dim_Vprime == 0)
                           ? 0.0
                           : linalg::max_abs(Matrix(s.V0.basis().transpose() * g * s.Vprime.basis()));
  at_most("orthogonality", ortho, tol);

  auto j_residual = [&](const Subspace& sub) {
    double r = 0.0;
    for (int c = 0; c < sub.dim(); ++c) r = std::max(r, sub.residual(jcan * sub.basis().col(c)));
    return r;
  };
  at_most("J_invariance_V0", j_residual(s.V0), tol);
  at_most("J_invariance_Vprime", j_residual(s.Vprime), tol);
  at_most("J_invariance_L", j_residual(s.L), tol);
  at_most("J_invariance_Lprime", j_residual(s.Lprime), tol);
  at_most("isotropy_L", s.L.dim() == 0 ? 0.0 : linalg::max_abs(s.L.gram()), tol);
  at_most("isotropy_Lprime", s.Lprime.dim() == 0 ? 0.0 : linalg::max_abs(s.Lprime.gram()), tol);

  // Nondegeneracy: the smallest |eigenvalue| of the Gram matrix in an orthonormal basis.
  if (s.V0.dim() > 0) above("nondegenerate_V0", min_abs_eigenvalue(s.V0.gram()), tol);
  if (s.Vprime.dim() > 0) above("nondegenerate_Vprime", min_abs_eigenvalue(s.Vprime.gram()), tol);

  const Inertia& sig = report.signature_Vprime;
  at_most("signature_Vprime",
          std::abs(sig.positive - 2 * s.m) + std::abs(sig.negative - 2 * s.m) + sig.zero, 0.0);

  double on_v0 = 0.0;
  for (int c = 0; c < s.V0.dim(); ++c) on_v0 = std::max(on_v0, linalg::max_abs(s.eta.contract(s.V0.basis().col(c))));
  at_most("eta_on_V0", on_v0, tol);

  if (s.m > 0) {
    const Matrix& B = s.adapted_basis;
    const PseudoHermitianSpace& small = s.eta_restricted->space();
    at_most("adapted_basis_isometry", linalg::max_abs(Matrix(B.transpose() * g * B - small.metric())), tol);
    at_most("adapted_basis_complex_linear", linalg::max_abs(Matrix(jcan * B - B * small.jcan())), tol);

    // Coordinates of the V' component of X in the adapted basis.
    const Matrix coords = small.metric() * B.transpose() * g;
    detail::Sampler sampler(cfg, detail::salt_of("split_restriction"), n);
    double reproduce = 0.0;
    const double scale = std::max(1.0, s.eta.max_abs());
    for (std::size_t i = 0; i < cfg.samples; ++i) {
      const Vector X = sampler.direction();
      const Vector Y = sampler.direction();
      const Vector Z = sampler.direction();
      const double full = s.eta(X, Y, Z);
      const double restricted = (*s.eta_restricted)(coords * X, coords * Y, coords * Z);
      reproduce = std::max(reproduce, std::abs(full - restricted) / scale);
    }
    at_most("restriction_reproduces_eta", reproduce, tol);

    const ConditionResult ri = check_condition_i(*s.eta_restricted, tol);
    const ConditionResult rii = check_condition_ii(*s.eta_restricted, tol);
    at_most("restricted_condition_i", ri.residual, tol);
    at_most("restricted_condition_ii", rii.residual, tol);
    at_most("restricted_support_maximal",
            std::abs(support(*s.eta_restricted, tol).dim() - 2 * s.m), 0.0);
  }

  // J(x) preserves both factors and is Jcan on V0.
  {
    const auto endos = eta_endos(s.eta);
    detail::Sampler sampler(cfg, detail::salt_of("split_block"), n);
    double on_v0_j = 0.0;
    double leak = 0.0;
    for (std::size_t i = 0; i < cfg.samples; ++i) {
      const Vector x = sampler.point();
      Matrix ex = Matrix::Zero(n, n);
      for (int a = 0; a < n; ++a) ex += x(a) * endos[static_cast<std::size_t>(a)];
      const Matrix J = (Matrix::Identity(n, n) + 2.0 * ex) * jcan;
      for (int c = 0; c < s.V0.dim(); ++c) {
        const Vector v = s.V0.basis().col(c);
        on_v0_j = std::max(on_v0_j, (J * v - jcan * v).cwiseAbs().maxCoeff());
      }
      for (int c = 0; c < s.Vprime.dim(); ++c) {
        const Vector jv = J * s.Vprime.basis().col(c);
        leak = std::max(leak, s.Vprime.residual(jv) / std::max(1.0, jv.norm()));
      }
    }
    at_most("J_equals_Jcan_on_V0", on_v0_j, tol);
    at_most("J_preserves_Vprime", leak, tol);
  }

  report.pass = std::all_of(report.checks.begin(), report.checks.end(),
                            [](const SplitCheck& c) { return c.pass; });
  return report;
}

}  // namespace flatnk
