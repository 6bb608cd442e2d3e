// Copyright 2026 The flatnk Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file io.hpp
 * @brief JSON file formats and report serialization.
 *
 * Real three-form:
 *   {"space": {"k": K, "l": L}, "terms": [{"idx": [a, b, c], "val": v}, ...]}
 * Complex three-form:
 *   {"m": M, "terms": [{"idx": [i, j, k], "re": x, "im": y}, ...]}
 *
 * Indices are 1-based and strictly increasing; unlisted triples are zero and a
 * triple may appear at most once.
 */

#pragma once

#include "flatnk/derham.hpp"
#include "flatnk/forms.hpp"
#include "flatnk/nkfield.hpp"
#include "flatnk/orbit.hpp"
#include "flatnk/realize.hpp"
#include "flatnk/report.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace flatnk {

/// Malformed input. what() carries the location (line/column or JSON field path).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FormKind { real, complex };

/// Decides from the top-level keys; throws ParseError if neither format matches.
FormKind detect_form_kind(std::string_view text);

RealThreeForm parse_real_form(std::string_view text);
ComplexThreeForm parse_complex_form(std::string_view text);

nlohmann::json to_json(const RealThreeForm& eta);
nlohmann::json to_json(const ComplexThreeForm& zeta);
nlohmann::json to_json(const ConditionResult& c, const std::string& name);
nlohmann::json to_json(const IdentityReport& r);
nlohmann::json to_json(const Battery& b);
nlohmann::json to_json(const SplitReport& r);
nlohmann::json to_json(const OrbitInvariants& inv);
nlohmann::json to_json(const Subspace& s);

}  // namespace flatnk
