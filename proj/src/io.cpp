// Copyright 2026 The flatnk Authors
// SPDX-License-Identifier: Apache-2.0

#include "flatnk/io.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <tuple>

namespace flatnk {

using nlohmann::json;

namespace {

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::ostringstream msg;
    msg << "malformed JSON at line " << line << ", column " << column << ": " << e.what();
    throw ParseError(msg.str());
  }
}

[[noreturn]] void fail(const std::string& field, const std::string& problem) {
  throw ParseError(field + ": " + problem);
}

const json& require(const json& obj, const char* key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path.empty() ? std::string(key) : path + "." + key, "missing field");
  return *it;
}

int require_int(const json& obj, const char* key, const std::string& path) {
  const json& v = require(obj, key, path);
  const std::string field = path.empty() ? std::string(key) : path + "." + key;
  if (!v.is_number_integer()) fail(field, "expected an integer");
  const auto value = v.get<long long>();
  if (value < 0 || value > 1'000'000) fail(field, "out of range");
  return static_cast<int>(value);
}

double require_number(const json& obj, const char* key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  const double value = v.get<double>();
  if (!std::isfinite(value)) fail(path + "." + key, "expected a finite number");
  return value;
}

std::tuple<int, int, int> require_triple(const json& term, const std::string& path, int dim) {
  const json& idx = require(term, "idx", path);
  const std::string field = path + ".idx";
  if (!idx.is_array() || idx.size() != 3) fail(field, "expected an array of three indices");
  int v[3];
  for (int i = 0; i < 3; ++i) {
    if (!idx[static_cast<std::size_t>(i)].is_number_integer()) fail(field, "indices must be integers");
    const auto raw = idx[static_cast<std::size_t>(i)].get<long long>();
    if (raw < 1 || raw > dim) {
      fail(field, "index " + std::to_string(raw) + " outside 1.." + std::to_string(dim));
    }
    v[i] = static_cast<int>(raw);
  }
  if (!(v[0] < v[1] && v[1] < v[2])) fail(field, "indices must be strictly increasing");
  return {v[0] - 1, v[1] - 1, v[2] - 1};
}

const json& require_terms(const json& doc) {
  const json& terms = require(doc, "terms", "");
  if (!terms.is_array()) fail("terms", "expected an array");
  return terms;
}

std::string term_path(std::size_t i) { return "terms[" + std::to_string(i) + "]"; }

}  // namespace

FormKind detect_form_kind(std::string_view text) {
  const json doc = parse_document(text);
  if (!doc.is_object()) fail("(document)", "expected a JSON object");
  if (doc.contains("space")) return FormKind::real;
  if (doc.contains("m")) return FormKind::complex;
  fail("(document)", "neither a real three-form (\"space\") nor a complex three-form (\"m\")");
}

RealThreeForm parse_real_form(std::string_view text) {
  const json doc = parse_document(text);
  if (!doc.is_object()) fail("(document)", "expected a JSON object");
  const json& space_obj = require(doc, "space", "");
  if (!space_obj.is_object()) fail("space", "expected an object with k and l");
  const int k = require_int(space_obj, "k", "space");
  const int l = require_int(space_obj, "l", "space");
  if (k + l < 1) fail("space", "k + l must be at least 1");
  if (k + l > 64) fail("space", "complex dimension above 64 is not supported");
  RealThreeForm eta{PseudoHermitianSpace(k, l)};

  const json& terms = require_terms(doc);
  std::set<std::tuple<int, int, int>> seen;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string path = term_path(i);
    if (!terms[i].is_object()) fail(path, "expected an object");
    const auto triple = require_triple(terms[i], path, eta.dim());
    if (!seen.insert(triple).second) fail(path + ".idx", "duplicate index triple");
    const double value = require_number(terms[i], "val", path);
    const auto [a, b, c] = triple;
    eta.set(a, b, c, value);
  }
  return eta;
}

ComplexThreeForm parse_complex_form(std::string_view text) {
  const json doc = parse_document(text);
  if (!doc.is_object()) fail("(document)", "expected a JSON object");
  const int m = require_int(doc, "m", "");
  if (m < 1) fail("m", "must be at least 1");
  if (m > 64) fail("m", "values above 64 are not supported");
  const json& terms = require_terms(doc);
  if (m < 3 && !terms.empty()) fail("terms", "no three-forms exist for m < 3");
  ComplexThreeForm zeta(m);
  std::set<std::tuple<int, int, int>> seen;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string path = term_path(i);
    if (!terms[i].is_object()) fail(path, "expected an object");
    const auto triple = require_triple(terms[i], path, m);
    if (!seen.insert(triple).second) fail(path + ".idx", "duplicate index triple");
    const double re = require_number(terms[i], "re", path);
    const double im = terms[i].contains("im") ? require_number(terms[i], "im", path) : 0.0;
    const auto [a, b, c] = triple;
    zeta.set(a, b, c, Complex(re, im));
  }
  return zeta;
}

json to_json(const RealThreeForm& eta) {
  json terms = json::array();
  const int n = eta.dim();
  std::size_t idx = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int c = b + 1; c < n; ++c, ++idx) {
        const double v = eta.coeffs()[idx];
        if (v != 0.0) terms.push_back({{"idx", {a + 1, b + 1, c + 1}}, {"val", v}});
      }
    }
  }
  return {{"space", {{"k", eta.space().k()}, {"l", eta.space().l()}}}, {"terms", std::move(terms)}};
}

json to_json(const ComplexThreeForm& zeta) {
  json terms = json::array();
  const int m = zeta.m();
  std::size_t idx = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      for (int k = j + 1; k < m; ++k, ++idx) {
        const Complex v = zeta.coeffs()[idx];
        if (v != Complex(0.0, 0.0)) terms.push_back({{"idx", {i + 1, j + 1, k + 1}}, {"re", v.real()}, {"im", v.imag()}});
      }
    }
  }
  return {{"m", m}, {"terms", std::move(terms)}};
}

json to_json(const ConditionResult& c, const std::string& name) {
  json witness = json::array();
  if (c.witness_a >= 0) witness.push_back(c.witness_a + 1);
  if (c.witness_b >= 0) witness.push_back(c.witness_b + 1);
  return {{"condition", name},
          {"holds", c.holds},
          {"residual", c.residual},
          {"tolerance", c.tolerance},
          {"witness", std::move(witness)}};
}

json to_json(const IdentityReport& r) {
  json worst = {{"index", r.worst_sample.index}};
  for (const auto& [label, values] : r.worst_sample.vectors) worst[label] = values;
  return {{"identity", r.identity},
          {"samples", r.samples},
          {"max_residual", r.max_residual},
          {"tolerance", r.tolerance},
          {"pass", r.pass},
          {"worst_sample", std::move(worst)}};
}

json to_json(const Battery& b) {
  json ids = json::array();
  for (const auto& r : b.identities) ids.push_back(to_json(r));
  return {{"identities", std::move(ids)},
          {"strict", b.strict},
          {"strictness_measure", b.strictness_measure},
          {"pass", b.pass}};
}

json to_json(const SplitReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name}, {"value", c.value}, {"threshold", c.threshold}, {"pass", c.pass}});
  }
  return {{"dim_V0", r.dim_V0},
          {"dim_Vprime", r.dim_Vprime},
          {"m", r.m},
          {"signature_Vprime", {r.signature_Vprime.positive, r.signature_Vprime.negative}},
          {"signature_V0", {r.signature_V0.positive, r.signature_V0.negative}},
          {"checks", std::move(checks)},
          {"pass", r.pass}};
}

json to_json(const OrbitInvariants& inv) {
  json out = {{"m", inv.m},
              {"support_rank", inv.support_rank},
              {"orbit_dimension", inv.orbit_dimension},
              {"is_maximal_support", inv.is_maximal_support}};
  out["is_decomposable"] = inv.is_decomposable ? json(*inv.is_decomposable) : json(nullptr);
  return out;
}

json to_json(const Subspace& s) {
  json basis = json::array();
  for (int c = 0; c < s.dim(); ++c) {
    std::vector<double> col(static_cast<std::size_t>(s.basis().rows()));
    // + 0.0 turns -0.0 into 0.0.
    for (std::size_t r = 0; r < col.size(); ++r) col[r] = s.basis()(static_cast<Eigen::Index>(r), c) + 0.0;
    basis.push_back(std::move(col));
  }
  return {{"dim", s.dim()}, {"basis", std::move(basis)}};
}

}  // namespace flatnk
