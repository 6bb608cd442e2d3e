// Copyright 2026 The flatnk Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace flatnk {

/// The sample that produced the largest residual for one identity.
struct WorstSample {
  std::size_t index = 0;
  std::vector<std::pair<std::string, std::vector<double>>> vectors;
};

/// One verified identity: max residual over all samples against a tolerance.
struct IdentityReport {
  std::string identity;
  std::size_t samples = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  WorstSample worst_sample;
};

/// Random sampling of points in [-radius, radius]^{2n} and unit directions.
struct SampleConfig {
  std::size_t samples = 100;
  double radius = 10.0;
  std::uint64_t seed = 0;
};

/**
 * Named tolerances. Every identity in the verification battery and every
 * admissibility check reads its threshold from here; unknown names are
 * rejected by set().
 */
class Tolerances {
 public:
  Tolerances();

  double get(const std::string& name) const;
  /// Throws std::invalid_argument for an unknown name or a negative value.
  void set(const std::string& name, double value);
  bool has(const std::string& name) const { return values_.count(name) != 0; }
  const std::map<std::string, double>& all() const { return values_; }

 private:
  std::map<std::string, double> values_;
};

}  // namespace flatnk
