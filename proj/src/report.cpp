// Copyright 2026 The flatnk Authors
// SPDX-License-Identifier: Apache-2.0

#include "flatnk/report.hpp"

#include <cmath>
#include <stdexcept>

namespace flatnk {

Tolerances::Tolerances()
    : values_{
          {"rank", 1e-10},
          {"condition_i", 1e-10},
          {"condition_ii", 1e-10},
          {"J_squared", 1e-10},
          {"pseudo_hermitian", 1e-10},
          {"omega_antisymmetry", 1e-10},
          {"nearly_kahler", 1e-10},
          {"torsion_skew", 1e-10},
          {"nabla_g", 1e-10},
          {"nabla_J", 1e-10},
          {"anticommutator", 1e-10},
          {"gray_quadruple", 1e-10},
          {"eta_composition", 1e-10},
          {"eta_commutator", 1e-10},
          {"eta_of_eta", 1e-10},
          {"D2_omega", 1e-8},
          {"DJ_finite_difference", 1e-8},
          {"split", 1e-10},
          {"strict_threshold", 1e-14},
      } {}

double Tolerances::get(const std::string& name) const {
  const auto it = values_.find(name);
  if (it == values_.end()) throw std::invalid_argument("unknown tolerance '" + name + "'");
  return it->second;
}

void Tolerances::set(const std::string& name, double value) {
  const auto it = values_.find(name);
  if (it == values_.end()) throw std::invalid_argument("unknown tolerance '" + name + "'");
  if (!(value >= 0.0) || std::isinf(value)) {
    throw std::invalid_argument("tolerance '" + name + "' must be a finite nonnegative number");
  }
  it->second = value;
}

}  // namespace flatnk
