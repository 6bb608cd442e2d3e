// Copyright 2026 The flatnk Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file orbit.hpp
 * @brief GL_m(C) acting on complex three-forms, orbit invariants, and small-m equivalence.
 */

#pragma once

#include "flatnk/realize.hpp"
#include "flatnk/space.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace flatnk {

/// Group elements with condition number above this are rejected by act().
inline constexpr double kMaxConditionNumber = 1e12;

/// Decomposability is decided by brute force only up to this m.
inline constexpr int kMaxDecomposableM = 6;

class SingularGroupElement : public std::invalid_argument {
 public:
  SingularGroupElement(const std::string& what, double condition)
      : std::invalid_argument(what), condition_number(condition) {}
  double condition_number;
};

/// (g . zeta)(X, Y, Z) = zeta(g^-1 X, g^-1 Y, g^-1 Z). A left action.
ComplexThreeForm act(const CMatrix& g, const ComplexThreeForm& zeta);

struct OrbitInvariants {
  int m = 0;
  int support_rank = 0;
  /// Complex rank of the infinitesimal action gl_m(C) -> Lambda^3 (C^m)^*.
  int orbit_dimension = 0;
  bool is_maximal_support = false;
  /// Empty for m > kMaxDecomposableM.
  std::optional<bool> is_decomposable;

  bool operator==(const OrbitInvariants&) const = default;
};

OrbitInvariants invariants(const ComplexThreeForm& zeta, double tol = kDefaultTol);

/// Brute-force Pluecker test: zeta is decomposable iff zeta(e_i, e_j, .) ^ zeta = 0 for all i < j.
bool is_decomposable(const ComplexThreeForm& zeta, double tol = kDefaultTol);

/// Matrix of A -> -(zeta(A., ., .) + zeta(., A., .) + zeta(., ., A.)) in the bases
/// E_pq of gl_m (column p*m + q) and sorted triples of Lambda^3 (row).
CMatrix infinitesimal_action(const ComplexThreeForm& zeta);

enum class Verdict { equivalent, inequivalent, unknown };

const char* to_string(Verdict v);

struct Equivalence {
  Verdict verdict = Verdict::unknown;
  /// Some g with act(g, first) = second, when one is known.
  std::optional<CMatrix> witness;
  std::string reason;
};

/// Definitive for m <= 4; invariant comparison above. Throws std::invalid_argument on mismatched m.
Equivalence equivalent_small_m(const ComplexThreeForm& first, const ComplexThreeForm& second,
                               double tol = kDefaultTol);

}  // namespace flatnk
