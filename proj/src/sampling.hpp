// Copyright 2026 The flatnk Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "flatnk/report.hpp"
#include "flatnk/space.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace flatnk::detail {

// Each identity draws from its own stream so reports do not depend on the order
// in which identities are run.
class Sampler {
 public:
  Sampler(const SampleConfig& cfg, std::uint64_t salt, int dim) : radius_(cfg.radius), dim_(dim) {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(salt), static_cast<std::uint32_t>(salt >> 32)};
    rng_.seed(seq);
  }

  Vector point() {
    std::uniform_real_distribution<double> u(-radius_, radius_);
    Vector x(dim_);
    for (int i = 0; i < dim_; ++i) x(i) = u(rng_);
    return x;
  }

  Vector direction() {
    std::normal_distribution<double> nd(0.0, 1.0);
    Vector v(dim_);
    do {
      for (int i = 0; i < dim_; ++i) v(i) = nd(rng_);
    } while (v.norm() == 0.0);
    return v / v.norm();
  }

 private:
  std::mt19937_64 rng_;
  double radius_;
  int dim_;
};

inline std::uint64_t salt_of(const std::string& name) {
  // FNV-1a; stable across platforms unlike std::hash.
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : name) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace flatnk::detail
