// Copyright 2026 The flatnk Authors
// SPDX-License-Identifier: Apache-2.0

#include "flatnk/derham.hpp"
#include "flatnk/orbit.hpp"
#include "flatnk/realize.hpp"

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

void require_all_checks(const SplitReport& r) {
  for (const auto& c : r.checks) {
    INFO(c.name << " value " << c.value << " threshold " << c.threshold);
    CHECK(c.pass);
  }
  CHECK(r.pass);
}

}  // namespace

TEST_CASE("e123 inside C^{5,5} splits as 8 + 12") {
  const DeRhamSplit s = split(realize(e123(5)).eta);
  CHECK(s.m == 3);
  CHECK(s.V0.dim() == 8);
  CHECK(s.Vprime.dim() == 12);
  CHECK(s.L.dim() == 6);
  CHECK(s.Lprime.dim() == 6);
  const SplitReport r = verify_split(s);
  CHECK(r.dim_V0 == 8);
  CHECK(r.dim_Vprime == 12);
  CHECK(r.signature_Vprime.positive == 6);
  CHECK(r.signature_Vprime.negative == 6);
  CHECK(r.signature_V0.positive == 4);
  CHECK(r.signature_V0.negative == 4);
  require_all_checks(r);
  REQUIRE(s.eta_restricted.has_value());
  CHECK(s.eta_restricted->space() == PseudoHermitianSpace(3, 3));
}

TEST_CASE("maximal support leaves no flat factor") {
  ComplexThreeForm z = e123(5);
  z.set(0, 3, 4, 1.0);
  const DeRhamSplit s = split(realize(z).eta);
  CHECK(s.m == 5);
  CHECK(s.V0.dim() == 0);
  CHECK(s.Vprime.dim() == 20);
  require_all_checks(verify_split(s));
}

TEST_CASE("the zero form is all flat factor") {
  const DeRhamSplit s = split(RealThreeForm(PseudoHermitianSpace(2, 3)));
  CHECK(s.m == 0);
  CHECK(s.V0.dim() == 10);
  CHECK(s.Vprime.dim() == 0);
  CHECK_FALSE(s.eta_restricted.has_value());
  require_all_checks(verify_split(s));
}

TEST_CASE("inadmissible forms cannot be split") {
  CHECK_THROWS_AS(split(basis_form(PseudoHermitianSpace(2, 0), 0, 1, 2)), SplitError);
}

TEST_CASE("m = 4 collapses to support rank 3 and a 4-dimensional flat factor") {
  gen::Rng rng(44);
  for (int t = 0; t < 10; ++t) {
    const DeRhamSplit s = split(realize(gen::zeta(rng, 4)).eta);
    CHECK(s.m == 3);
    CHECK(s.V0.dim() == 4);
    require_all_checks(verify_split(s));
  }
}

TEST_CASE("embedded and rotated realizations split with the dimension count 2n - 4m") {
  gen::Rng rng(7);
  for (int t = 0; t < 12; ++t) {
    const int m = rng.integer(3, 4);
    const int p = rng.integer(0, 2);
    const int q = rng.integer(0, 2);
    const ComplexThreeForm z = gen::zeta(rng, m);
    const RealThreeForm eta = gen::embedded(rng, z, p, q);
    const int rank = oracle::contraction_rank(z);
    const DeRhamSplit s = split(eta);
    INFO("m=" << m << " p=" << p << " q=" << q);
    CHECK(s.m == rank);
    CHECK(s.V0.dim() == 2 * (2 * m + p + q) - 4 * rank);
    const SplitReport r = verify_split(s, kDefaultTol, SampleConfig{50, 10.0, static_cast<std::uint64_t>(t)});
    CHECK(r.signature_Vprime.positive == 2 * rank);
    CHECK(r.signature_Vprime.negative == 2 * rank);
    require_all_checks(r);
  }
}

TEST_CASE("restricted form is again a realization with maximal support") {
  const DeRhamSplit s = split(realize(e123(6)).eta);
  REQUIRE(s.eta_restricted.has_value());
  const RealThreeForm& r = *s.eta_restricted;
  CHECK(check_condition_i(r).holds);
  CHECK(check_condition_ii(r).holds);
  CHECK(support(r).dim() == 6);
}

TEST_CASE("splitting the strict factor again leaves no flat factor") {
  gen::Rng rng(8);
  for (int t = 0; t < 5; ++t) {
    const DeRhamSplit s = split(gen::embedded(rng, gen::zeta(rng, 4), 1, 0));
    REQUIRE(s.eta_restricted.has_value());
    const DeRhamSplit again = split(*s.eta_restricted);
    CHECK(again.m == s.m);
    CHECK(again.V0.dim() == 0);
    require_all_checks(verify_split(again));
  }
}

TEST_CASE("random embedded forms: dimension count and no strict factor below 12") {
  gen::Rng rng(9);
  for (int t = 0; t < 50; ++t) {
    const int m = rng.integer(3, 5);
    const int p = rng.integer(0, 2);
    const int q = rng.integer(0, 2);
    const DeRhamSplit s = split(gen::embedded(rng, gen::zeta(rng, m), p, q));
    INFO("m=" << m << " p=" << p << " q=" << q);
    CHECK(s.Vprime.dim() == 4 * (s.L.dim() / 2));
    CHECK(s.V0.dim() == s.eta.dim() - s.Vprime.dim());
    CHECK(s.Vprime.dim() >= 12);
    require_all_checks(verify_split(s, kDefaultTol, SampleConfig{30, 10.0, static_cast<std::uint64_t>(t)}));
  }
}

TEST_CASE("other complements L' give the same strict factor up to GL_m(C)") {
  gen::Rng rng(10);
  for (int t = 0; t < 8; ++t) {
    const int m = rng.integer(3, 5);
    const ComplexThreeForm z = gen::zeta(rng, m);
    const RealThreeForm eta = gen::embedded(rng, z, rng.integer(0, 1), rng.integer(0, 1));
    const DeRhamSplit base = split(eta);
    REQUIRE(base.eta_restricted.has_value());
    const ComplexThreeForm zeta_base = complex_form_of(*base.eta_restricted);
    const OrbitInvariants inv = invariants(zeta_base);
    CHECK(inv.support_rank == base.m);
    CHECK(inv.is_maximal_support);
    if (base.m == m) CHECK(inv == invariants(z));

    for (int trial = 0; trial < 3; ++trial) {
      Matrix shift(eta.dim(), base.m);
      for (int c = 0; c < base.m; ++c) shift.col(c) = rng.gaussian(eta.dim());
      const DeRhamSplit other = split(eta, shift);
      require_all_checks(verify_split(other, kDefaultTol, SampleConfig{20, 10.0, 1}));
      // L' really moved.
      double moved = 0.0;
      for (int c = 0; c < other.Lprime.dim(); ++c) {
        moved = std::max(moved, base.Lprime.residual(other.Lprime.basis().col(c)));
      }
      CHECK(moved > 1e-3);
      CHECK(other.V0.dim() == base.V0.dim());
      REQUIRE(other.eta_restricted.has_value());
      const ComplexThreeForm zeta_other = complex_form_of(*other.eta_restricted);
      CHECK(invariants(zeta_other) == inv);
      // With the same basis of L the recovered forms agree coefficientwise.
      double worst = 0.0;
      for (std::size_t i = 0; i < zeta_base.coeffs().size(); ++i) {
        worst = std::max(worst, std::abs(zeta_base.coeffs()[i] - zeta_other.coeffs()[i]));
      }
      CHECK(worst < 1e-9);
    }
  }
  CHECK_THROWS_AS(split(realize(e123(3)).eta, Matrix::Zero(5, 1)), std::invalid_argument);
}
