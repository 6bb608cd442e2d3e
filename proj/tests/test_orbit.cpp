// Copyright 2026 The flatnk Authors
// SPDX-License-Identifier: Apache-2.0

#include "flatnk/orbit.hpp"

#include "generators.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace flatnk;

namespace {

ComplexThreeForm e123(int m) {
  ComplexThreeForm z(m);
  z.set(0, 1, 2, 1.0);
  return z;
}

double max_diff(const ComplexThreeForm& a, const ComplexThreeForm& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) worst = std::max(worst, std::abs(a.coeffs()[i] - b.coeffs()[i]));
  return worst;
}

}  // namespace

TEST_CASE("act matches pulling back by the inverse") {
  gen::Rng rng(1);
  for (int t = 0; t < 15; ++t) {
    const int m = rng.integer(3, 6);
    const ComplexThreeForm z = gen::zeta(rng, m);
    const CMatrix g = gen::group_element(rng, m);
    CHECK(max_diff(act(g, z), oracle::act(g, z)) < 1e-12);
  }
}

TEST_CASE("act is a left action") {
  gen::Rng rng(2);
  const ComplexThreeForm z = gen::zeta(rng, 5);
  const CMatrix g = gen::group_element(rng, 5);
  const CMatrix h = gen::group_element(rng, 5);
  CHECK(max_diff(act(CMatrix::Identity(5, 5), z), z) < 1e-15);
  CHECK(max_diff(act(g * h, z), act(g, act(h, z))) < 1e-12);
  // Scalars act by det: (c Id) . zeta = c^-3 zeta.
  const ComplexThreeForm scaled = act(Complex(2.0, 0.0) * CMatrix::Identity(5, 5), z);
  ComplexThreeForm expect = z;
  expect *= Complex(0.125, 0.0);
  CHECK(max_diff(scaled, expect) < 1e-15);
}

TEST_CASE("numerically singular group elements are rejected") {
  CMatrix g = CMatrix::Identity(3, 3);
  g(2, 2) = 1e-14;
  try {
    (void)act(g, e123(3));
    FAIL("expected SingularGroupElement");
  } catch (const SingularGroupElement& e) {
    CHECK(e.condition_number > kMaxConditionNumber);
  }
  CHECK_THROWS_AS(act(CMatrix::Identity(4, 4), e123(3)), std::invalid_argument);
}

TEST_CASE("invariants of standard forms") {
  // Lambda^3 (C^3)^* is a line, so the nonzero orbit is open in it.
  const OrbitInvariants a = invariants(e123(3));
  CHECK(a.support_rank == 3);
  CHECK(a.orbit_dimension == 1);
  CHECK(a.is_maximal_support);
  CHECK(a.is_decomposable == true);

  // Decomposable forms on C^5: the cone over Gr(3, 5), dimension 6 + 1.
  const OrbitInvariants b = invariants(e123(5));
  CHECK(b.support_rank == 3);
  CHECK(b.orbit_dimension == 7);
  CHECK_FALSE(b.is_maximal_support);
  CHECK(b.is_decomposable == true);

  ComplexThreeForm c = e123(5);
  c.set(0, 3, 4, 1.0);
  const OrbitInvariants ci = invariants(c);
  CHECK(ci.support_rank == 5);
  CHECK(ci.is_maximal_support);
  CHECK(ci.is_decomposable == false);
  CHECK(ci.orbit_dimension == oracle::orbit_dimension(c));

  const OrbitInvariants zero = invariants(ComplexThreeForm(5));
  CHECK(zero.support_rank == 0);
  CHECK(zero.orbit_dimension == 0);
  CHECK_FALSE(zero.is_maximal_support);
  CHECK(zero.is_decomposable == true);

  // Above the brute-force limit decomposability is left open.
  CHECK_FALSE(invariants(e123(7)).is_decomposable.has_value());
}

TEST_CASE("orbit dimension agrees with a finite-difference Jacobian") {
  gen::Rng rng(3);
  for (int t = 0; t < 8; ++t) {
    const int m = rng.integer(3, 6);
    const ComplexThreeForm z = gen::zeta(rng, m);
    INFO("m = " << m);
    CHECK(invariants(z).orbit_dimension == oracle::orbit_dimension(z));
  }
  // Generic forms on C^6 have an open orbit in the 20-dimensional space.
  CHECK(invariants(gen::zeta(rng, 6)).orbit_dimension == 20);
}

TEST_CASE("invariants are constant along orbits") {
  gen::Rng rng(4);
  for (int t = 0; t < 10; ++t) {
    const int m = rng.integer(3, 6);
    ComplexThreeForm z = gen::zeta(rng, m);
    if (t % 2 == 0) z = e123(m);
    const CMatrix g = gen::group_element(rng, m);
    CHECK(invariants(z) == invariants(act(g, z)));
  }
}

TEST_CASE("every nonzero form on C^4 is decomposable") {
  gen::Rng rng(5);
  for (int t = 0; t < 10; ++t) CHECK(is_decomposable(gen::zeta(rng, 4)));
  CHECK_FALSE(is_decomposable(gen::zeta(rng, 6)));
}

TEST_CASE("equivalence at m = 3 and m = 4 comes with a witness") {
  gen::Rng rng(6);
  for (int m : {3, 4}) {
    for (int t = 0; t < 5; ++t) {
      const ComplexThreeForm a = gen::zeta(rng, m);
      const ComplexThreeForm b = gen::zeta(rng, m);
      const Equivalence e = equivalent_small_m(a, b);
      CHECK(e.verdict == Verdict::equivalent);
      REQUIRE(e.witness.has_value());
      CHECK(max_diff(act(*e.witness, a), b) < 1e-10);
    }
  }
}

TEST_CASE("equivalence edge cases") {
  const Equivalence both_zero = equivalent_small_m(ComplexThreeForm(4), ComplexThreeForm(4));
  CHECK(both_zero.verdict == Verdict::equivalent);
  const Equivalence one_zero = equivalent_small_m(e123(3), ComplexThreeForm(3));
  CHECK(one_zero.verdict == Verdict::inequivalent);
  CHECK_FALSE(one_zero.witness.has_value());
  CHECK_THROWS_AS(equivalent_small_m(e123(3), e123(4)), std::invalid_argument);

  ComplexThreeForm c = e123(5);
  c.set(0, 3, 4, 1.0);
  const Equivalence differ = equivalent_small_m(e123(5), c);
  CHECK(differ.verdict == Verdict::inequivalent);
  CHECK(differ.reason.find("support rank 3 vs 5") != std::string::npos);

  gen::Rng rng(7);
  const Equivalence same = equivalent_small_m(c, act(gen::group_element(rng, 5), c));
  CHECK(same.verdict == Verdict::unknown);
  CHECK(std::string(to_string(same.verdict)) == "unknown");
}

TEST_CASE("the identity direction of the infinitesimal action is -3 zeta") {
  // d/dt act(exp(t Id), zeta) = -3 zeta: the Id column is -3 times the coefficient vector.
  gen::Rng rng(8);
  const ComplexThreeForm z = gen::zeta(rng, 4);
  const CMatrix a = infinitesimal_action(z);
  CVector id_column = CVector::Zero(a.rows());
  for (int p = 0; p < 4; ++p) id_column += a.col(p * 4 + p);
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    CHECK(std::abs(id_column(r) + 3.0 * z.coeffs()[static_cast<std::size_t>(r)]) < 1e-14);
  }
}
