// Copyright 2026 The flatnk Authors
// SPDX-License-Identifier: Apache-2.0

#include "flatnk/nkfield.hpp"

#include "sampling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace flatnk {

using detail::Sampler;
using detail::salt_of;

namespace {

// Second differences of a quadratic are exact at any step, so a coarse step only
// shrinks the rounding floor (eps * |omega| / h^2).
constexpr double kSecondDifferenceStep = 0.1;

using MatrixLd = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using VectorLd = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

class Tracker {
 public:
  Tracker(std::string name, double tol) {
    report_.identity = std::move(name);
    report_.tolerance = tol;
  }

  void record(std::size_t index, double residual,
              std::initializer_list<std::pair<const char*, const Vector*>> vectors) {
    ++report_.samples;
    if (std::isnan(report_.max_residual)) return;
    const bool worse = report_.samples == 1 || std::isnan(residual) || residual > report_.max_residual;
    if (!worse) return;
    report_.max_residual = residual;
    report_.worst_sample.index = index;
    report_.worst_sample.vectors.clear();
    for (const auto& [label, v] : vectors) report_.worst_sample.vectors.emplace_back(label, to_std(*v));
  }

  IdentityReport finish() {
    report_.pass = !std::isnan(report_.max_residual) && report_.max_residual <= report_.tolerance;
    return std::move(report_);
  }

 private:
  IdentityReport report_;
};

}  // namespace

// ---------------------------------------------------------------------------

NearlyKahlerStructure::NearlyKahlerStructure(RealThreeForm eta, double tol) : eta_(std::move(eta)) {
  const ConditionResult i = check_condition_i(eta_, tol);
  const ConditionResult ii = check_condition_ii(eta_, tol);
  if (!i.holds || !ii.holds) {
    std::ostringstream msg;
    msg << "three-form is not admissible:";
    if (!i.holds) msg << " condition (i) residual " << i.residual;
    if (!ii.holds) msg << " condition (ii) residual " << ii.residual;
    msg << " (tolerance " << tol << ")";
    throw InadmissibleForm(msg.str(), i, ii);
  }
  endos_ = eta_endos(eta_);
  generators_ = endos_;
}

NearlyKahlerStructure::NearlyKahlerStructure(Unchecked, RealThreeForm eta, std::vector<Matrix> generators)
    : eta_(std::move(eta)), endos_(eta_endos(eta_)), generators_(std::move(generators)) {}

NearlyKahlerStructure NearlyKahlerStructure::unchecked(RealThreeForm eta) {
  std::vector<Matrix> generators = eta_endos(eta);
  return NearlyKahlerStructure(Unchecked{}, std::move(eta), std::move(generators));
}

namespace testing {

NearlyKahlerStructure perturbed_structure(const RealThreeForm& eta, std::span<const Matrix> extra) {
  std::vector<Matrix> generators = eta_endos(eta);
  if (extra.size() != generators.size()) throw std::invalid_argument("one perturbation per basis direction");
  for (std::size_t i = 0; i < generators.size(); ++i) generators[i] += extra[i];
  return NearlyKahlerStructure(NearlyKahlerStructure::Unchecked{}, eta, std::move(generators));
}

}  // namespace testing

Matrix NearlyKahlerStructure::eta_endo(const Vector& x) const {
  const int n = eta_.dim();
  Matrix out = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (x(i) != 0.0) out += x(i) * endos_[static_cast<std::size_t>(i)];
  }
  return out;
}

Matrix NearlyKahlerStructure::generator(const Vector& x) const {
  const int n = eta_.dim();
  Matrix out = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (x(i) != 0.0) out += x(i) * generators_[static_cast<std::size_t>(i)];
  }
  return out;
}

Matrix NearlyKahlerStructure::J_at(const Vector& x) const {
  const int n = eta_.dim();
  return (Matrix::Identity(n, n) + 2.0 * generator(x)) * space().jcan();
}

Matrix NearlyKahlerStructure::DJ_at(const Vector& x, const Vector& direction) const {
  return -2.0 * J_at(x) * eta_endo(direction);
}

Matrix NearlyKahlerStructure::field_derivative(const Vector& direction) const {
  return 2.0 * generator(direction) * space().jcan();
}

Vector NearlyKahlerStructure::torsion(const Vector& x, const Vector& y) const {
  return -2.0 * (eta_endo(x) * y);
}

Matrix NearlyKahlerStructure::fundamental_two_form(const Vector& x) const {
  return J_at(x).transpose() * space().metric();
}

MatrixLd NearlyKahlerStructure::fundamental_two_form_extended(const VectorLd& x) const {
  const int n = eta_.dim();
  MatrixLd gen = MatrixLd::Zero(n, n);
  for (int i = 0; i < n; ++i) gen += x(i) * generators_[static_cast<std::size_t>(i)].cast<long double>();
  const MatrixLd j = (MatrixLd::Identity(n, n) + 2.0L * gen) * space().jcan().cast<long double>();
  return j.transpose() * space().metric().cast<long double>();
}

// ---------------------------------------------------------------------------
// Verification

IdentityReport verify_nearly_kahler(const NearlyKahlerStructure& nk, const SampleConfig& cfg, double tol) {
  Sampler s(cfg, salt_of("nearly_kahler"), nk.space().real_dim());
  Tracker t("nearly_kahler", tol);
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    const Vector x = s.point();
    const Vector X = s.direction();
    const Vector Y = s.direction();
    const Vector r = nk.field_derivative(X) * Y + nk.field_derivative(Y) * X;
    t.record(i, r.cwiseAbs().maxCoeff(), {{"x", &x}, {"X", &X}, {"Y", &Y}});
  }
  return t.finish();
}

std::vector<IdentityReport> verify_canonical_connection(const NearlyKahlerStructure& nk,
                                                        const SampleConfig& cfg, const Tolerances& tol) {
  const auto& space = nk.space();
  Sampler s(cfg, salt_of("canonical_connection"), space.real_dim());
  Tracker torsion("torsion_skew", tol.get("torsion_skew"));
  Tracker nabla_g("nabla_g", tol.get("nabla_g"));
  Tracker nabla_j("nabla_J", tol.get("nabla_J"));
  Tracker anti("anticommutator", tol.get("anticommutator"));
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    const Vector x = s.point();
    const Vector X = s.direction();
    const Vector Y = s.direction();
    const Vector Z = s.direction();
    const auto pts = {std::pair<const char*, const Vector*>{"x", &x}, {"X", &X}, {"Y", &Y}, {"Z", &Z}};

    const double t_xyz = space.inner(nk.torsion(X, Y), Z);
    const double t_yxz = space.inner(nk.torsion(Y, X), Z);
    const double t_xzy = space.inner(nk.torsion(X, Z), Y);
    torsion.record(i, std::max(std::abs(t_xyz + t_yxz), std::abs(t_xyz + t_xzy)), pts);

    const Matrix ex = nk.eta_endo(X);
    nabla_g.record(i, std::abs(space.inner(ex * Y, Z) + space.inner(Y, ex * Z)), pts);

    const Matrix j = nk.J_at(x);
    const Matrix commutator = ex * j - j * ex;
    nabla_j.record(i, linalg::max_abs(nk.field_derivative(X) - commutator), pts);
    anti.record(i, linalg::max_abs(ex * j + j * ex), pts);
  }
  return {torsion.finish(), nabla_g.finish(), nabla_j.finish(), anti.finish()};
}

std::vector<IdentityReport> verify_gray_identities(const NearlyKahlerStructure& nk, const SampleConfig& cfg,
                                                   const Tolerances& tol) {
  const auto& space = nk.space();
  const int n = space.real_dim();
  Sampler s(cfg, salt_of("gray"), n);
  Tracker quad("gray_quadruple", tol.get("gray_quadruple"));
  Tracker comp("eta_composition", tol.get("eta_composition"));
  Tracker comm("eta_commutator", tol.get("eta_commutator"));
  Tracker nested("eta_of_eta", tol.get("eta_of_eta"));
  Tracker d2("D2_omega", tol.get("D2_omega"));
  const long double h = kSecondDifferenceStep;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    const Vector x = s.point();
    const Vector X = s.direction();
    const Vector Y = s.direction();
    const Vector Z = s.direction();
    const Vector W = s.direction();
    const auto pts = {std::pair<const char*, const Vector*>{"x", &x}, {"X", &X}, {"Y", &Y}, {"Z", &Z}, {"W", &W}};

    quad.record(i, std::abs(space.inner(nk.field_derivative(X) * Y, nk.field_derivative(Z) * W)), pts);

    const Matrix ex = nk.eta_endo(X);
    const Matrix ey = nk.eta_endo(Y);
    comp.record(i, linalg::max_abs(ex * ey), pts);
    comm.record(i, linalg::max_abs(ex * ey - ey * ex), pts);
    nested.record(i, linalg::max_abs(nk.eta_endo(Vector(ex * Y))), pts);

    // omega is affine in x, so both second differences vanish up to rounding.
    const VectorLd xl = x.cast<long double>();
    const VectorLd u = X.cast<long double>() * h;
    const VectorLd v = Y.cast<long double>() * h;
    const MatrixLd mixed = (nk.fundamental_two_form_extended(xl + u + v) -
                            nk.fundamental_two_form_extended(xl + u - v) -
                            nk.fundamental_two_form_extended(xl - u + v) +
                            nk.fundamental_two_form_extended(xl - u - v)) /
                           (4.0L * h * h);
    const MatrixLd pure = (nk.fundamental_two_form_extended(xl + u) - 2.0L * nk.fundamental_two_form_extended(xl) +
                           nk.fundamental_two_form_extended(xl - u)) /
                          (h * h);
    const double r = static_cast<double>(std::max(mixed.cwiseAbs().maxCoeff(), pure.cwiseAbs().maxCoeff()));
    d2.record(i, r, pts);
  }
  return {quad.finish(), comp.finish(), comm.finish(), nested.finish(), d2.finish()};
}

std::vector<IdentityReport> verify_almost_hermitian(const NearlyKahlerStructure& nk, const SampleConfig& cfg,
                                                    const Tolerances& tol) {
  const auto& space = nk.space();
  const int n = space.real_dim();
  const Matrix id = Matrix::Identity(n, n);
  Sampler s(cfg, salt_of("almost_hermitian"), n);

  Tracker origin("J_origin", tol.get("J_squared"));
  const Vector zero = Vector::Zero(n);
  origin.record(0, linalg::max_abs(nk.J_at(zero) - space.jcan()), {{"x", &zero}});

  Tracker square("J_squared", tol.get("J_squared"));
  Tracker herm("pseudo_hermitian", tol.get("pseudo_hermitian"));
  Tracker anti("omega_antisymmetry", tol.get("omega_antisymmetry"));
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    const Vector x = s.point();
    const Matrix j = nk.J_at(x);
    square.record(i, linalg::max_abs(j * j + id), {{"x", &x}});
    herm.record(i, linalg::max_abs(j.transpose() * space.metric() * j - space.metric()), {{"x", &x}});
    const Matrix omega = nk.fundamental_two_form(x);
    anti.record(i, linalg::max_abs(omega + omega.transpose()), {{"x", &x}});
  }
  return {origin.finish(), square.finish(), herm.finish(), anti.finish()};
}

IdentityReport verify_derivative(const NearlyKahlerStructure& nk, const SampleConfig& cfg, double rel_tol,
                                 double step) {
  Sampler s(cfg, salt_of("derivative"), nk.space().real_dim());
  Tracker t("DJ_finite_difference", rel_tol);
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    const Vector x = s.point();
    const Vector X = s.direction();
    const Matrix exact = nk.DJ_at(x, X);
    const Matrix fd = (nk.J_at(x + step * X) - nk.J_at(x - step * X)) / (2.0 * step);
    const double scale = linalg::max_abs(exact);
    const double diff = linalg::max_abs(fd - exact);
    t.record(i, scale > 0.0 ? diff / scale : diff, {{"x", &x}, {"X", &X}});
  }
  return t.finish();
}

double strictness_measure(const NearlyKahlerStructure& nk) {
  const int n = nk.space().real_dim();
  const Vector zero = Vector::Zero(n);
  double m = 0.0;
  for (int i = 0; i < n; ++i) m = std::max(m, linalg::max_abs(nk.DJ_at(zero, Vector::Unit(n, i))));
  return m;
}

Battery run_battery(const NearlyKahlerStructure& nk, const SampleConfig& cfg, const Tolerances& tol) {
  Battery out;
  auto append = [&out](std::vector<IdentityReport> reports) {
    for (auto& r : reports) out.identities.push_back(std::move(r));
  };
  append(verify_almost_hermitian(nk, cfg, tol));
  out.identities.push_back(verify_nearly_kahler(nk, cfg, tol.get("nearly_kahler")));
  append(verify_canonical_connection(nk, cfg, tol));
  append(verify_gray_identities(nk, cfg, tol));
  out.identities.push_back(verify_derivative(nk, cfg, tol.get("DJ_finite_difference")));

  const double threshold = tol.get("strict_threshold");
  out.strictness_measure = strictness_measure(nk);
  out.strict = out.strictness_measure > threshold;
  IdentityReport consistency;
  consistency.identity = "strictness_consistency";
  consistency.samples = 1;
  consistency.tolerance = 0.0;
  // 1 when strictness disagrees with eta != 0.
  consistency.max_residual = out.strict == !nk.eta().is_zero(threshold) ? 0.0 : 1.0;
  consistency.pass = consistency.max_residual == 0.0;
  out.identities.push_back(std::move(consistency));

  out.pass = std::all_of(out.identities.begin(), out.identities.end(),
                         [](const IdentityReport& r) { return r.pass; });
  return out;
}

}  // namespace flatnk
