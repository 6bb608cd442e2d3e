// Copyright 2026 The flatnk Authors
// SPDX-License-Identifier: Apache-2.0

#include "flatnk/flatnk.h"

#include "flatnk/derham.hpp"
#include "flatnk/forms.hpp"
#include "flatnk/io.hpp"
#include "flatnk/nkfield.hpp"
#include "flatnk/orbit.hpp"
#include "flatnk/realize.hpp"
#include "flatnk/report.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct fnk_real_form {
  flatnk::RealThreeForm form;
};

struct fnk_complex_form {
  flatnk::ComplexThreeForm form;
};

struct fnk_realization {
  flatnk::ComplexThreeForm zeta;
  flatnk::Realization r;
};

struct fnk_config {
  flatnk::SampleConfig samples;
  flatnk::Tolerances tol;
};

namespace {

using nlohmann::json;

thread_local std::string last_error;

fnk_status set_error(fnk_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

// Runs body() and maps exceptions onto status codes.
template <typename F>
fnk_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const flatnk::ParseError& e) {
    return set_error(FNK_ERR_PARSE, e.what());
  } catch (const flatnk::InadmissibleForm& e) {
    return set_error(FNK_ERR_INADMISSIBLE, e.what());
  } catch (const flatnk::SingularGroupElement& e) {
    return set_error(FNK_ERR_NUMERIC, e.what());
  } catch (const flatnk::SplitError& e) {
    return set_error(FNK_ERR_NUMERIC, e.what());
  } catch (const std::invalid_argument& e) {
    return set_error(FNK_ERR_INVALID, e.what());
  } catch (const std::out_of_range& e) {
    return set_error(FNK_ERR_INVALID, e.what());
  } catch (const std::bad_alloc&) {
    return set_error(FNK_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(FNK_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(FNK_ERR_INTERNAL, "unknown error");
  }
}

fnk_status null_arg(const char* name) { return set_error(FNK_ERR_NULL, std::string(name) + " is NULL"); }

#define FNK_REQUIRE(ptr) \
  if ((ptr) == nullptr) return null_arg(#ptr)

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Fixed indentation keeps the bytes identical across runs.
char* emit(const json& j) { return dup_string(j.dump(2)); }

const fnk_config& config_or_default(const fnk_config* cfg) {
  static const fnk_config defaults{};
  return cfg != nullptr ? *cfg : defaults;
}

void check_triple(int a, int b, int c, int dim) {
  if (!(1 <= a && a < b && b < c && c <= dim)) {
    throw std::invalid_argument("indices must satisfy 1 <= a < b < c <= " + std::to_string(dim));
  }
}

json validate_report(const flatnk::RealThreeForm& eta, const flatnk::Tolerances& tol, bool& admissible) {
  const auto i = flatnk::check_condition_i(eta, tol.get("condition_i"));
  const auto ii = flatnk::check_condition_ii(eta, tol.get("condition_ii"));
  const flatnk::Subspace supp = flatnk::support(eta, tol.get("rank"));
  const flatnk::TypeSplit parts = flatnk::type_split(eta);
  admissible = i.holds && ii.holds;
  return {{"space", {{"k", eta.space().k()}, {"l", eta.space().l()}}},
          {"conditions", {flatnk::to_json(i, "condition (i)"), flatnk::to_json(ii, "condition (ii)")}},
          {"support",
           {{"dim", supp.dim()},
            {"isotropic", flatnk::is_isotropic(supp, tol.get("rank"))},
            {"J_invariant", flatnk::is_J_invariant(supp, tol.get("rank"))}}},
          {"type", {{"plus_max", parts.plus.max_abs()}, {"minus_max", parts.minus.max_abs()}}},
          {"admissible", admissible}};
}

}  // namespace

extern "C" {

const char* fnk_version(void) { return "0.1.0"; }

const char* fnk_last_error(void) { return last_error.c_str(); }

const char* fnk_status_name(fnk_status status) {
  switch (status) {
    case FNK_OK: return "ok";
    case FNK_ERR_PARSE: return "parse error";
    case FNK_ERR_INVALID: return "invalid argument";
    case FNK_ERR_INADMISSIBLE: return "inadmissible form";
    case FNK_ERR_NUMERIC: return "numerical failure";
    case FNK_ERR_INTERNAL: return "internal error";
    case FNK_ERR_NULL: return "null argument";
  }
  return "unknown status";
}

void fnk_string_free(char* s) { std::free(s); }

// ---- real forms

fnk_status fnk_real_form_create(int k, int l, fnk_real_form** out) {
  FNK_REQUIRE(out);
  return guarded([&] {
    *out = new fnk_real_form{flatnk::RealThreeForm(flatnk::PseudoHermitianSpace(k, l))};
    return FNK_OK;
  });
}

fnk_status fnk_real_form_from_json(const char* text, fnk_real_form** out) {
  FNK_REQUIRE(text);
  FNK_REQUIRE(out);
  return guarded([&] {
    *out = new fnk_real_form{flatnk::parse_real_form(text)};
    return FNK_OK;
  });
}

fnk_status fnk_real_form_to_json(const fnk_real_form* form, char** out) {
  FNK_REQUIRE(form);
  FNK_REQUIRE(out);
  return guarded([&] {
    *out = emit(flatnk::to_json(form->form));
    return FNK_OK;
  });
}

fnk_status fnk_real_form_space(const fnk_real_form* form, int* k, int* l) {
  FNK_REQUIRE(form);
  FNK_REQUIRE(k);
  FNK_REQUIRE(l);
  *k = form->form.space().k();
  *l = form->form.space().l();
  return FNK_OK;
}

fnk_status fnk_real_form_set(fnk_real_form* form, int a, int b, int c, double value) {
  FNK_REQUIRE(form);
  return guarded([&] {
    check_triple(a, b, c, form->form.dim());
    form->form.set(a - 1, b - 1, c - 1, value);
    return FNK_OK;
  });
}

fnk_status fnk_real_form_coeff(const fnk_real_form* form, int a, int b, int c, double* out) {
  FNK_REQUIRE(form);
  FNK_REQUIRE(out);
  return guarded([&] {
    check_triple(a, b, c, form->form.dim());
    *out = form->form.coeff(a - 1, b - 1, c - 1);
    return FNK_OK;
  });
}

void fnk_real_form_free(fnk_real_form* form) { delete form; }

// ---- complex forms

fnk_status fnk_complex_form_create(int m, fnk_complex_form** out) {
  FNK_REQUIRE(out);
  return guarded([&] {
    *out = new fnk_complex_form{flatnk::ComplexThreeForm(m)};
    return FNK_OK;
  });
}

fnk_status fnk_complex_form_from_json(const char* text, fnk_complex_form** out) {
  FNK_REQUIRE(text);
  FNK_REQUIRE(out);
  return guarded([&] {
    *out = new fnk_complex_form{flatnk::parse_complex_form(text)};
    return FNK_OK;
  });
}

fnk_status fnk_complex_form_to_json(const fnk_complex_form* form, char** out) {
  FNK_REQUIRE(form);
  FNK_REQUIRE(out);
  return guarded([&] {
    *out = emit(flatnk::to_json(form->form));
    return FNK_OK;
  });
}

fnk_status fnk_complex_form_dim(const fnk_complex_form* form, int* m) {
  FNK_REQUIRE(form);
  FNK_REQUIRE(m);
  *m = form->form.m();
  return FNK_OK;
}

fnk_status fnk_complex_form_set(fnk_complex_form* form, int i, int j, int k, double re, double im) {
  FNK_REQUIRE(form);
  return guarded([&] {
    check_triple(i, j, k, form->form.m());
    form->form.set(i - 1, j - 1, k - 1, flatnk::Complex(re, im));
    return FNK_OK;
  });
}

fnk_status fnk_complex_form_coeff(const fnk_complex_form* form, int i, int j, int k, double* re, double* im) {
  FNK_REQUIRE(form);
  FNK_REQUIRE(re);
  FNK_REQUIRE(im);
  return guarded([&] {
    check_triple(i, j, k, form->form.m());
    const flatnk::Complex z = form->form.coeff(i - 1, j - 1, k - 1);
    *re = z.real();
    *im = z.imag();
    return FNK_OK;
  });
}

void fnk_complex_form_free(fnk_complex_form* form) { delete form; }

fnk_status fnk_detect_form_kind(const char* text, fnk_form_kind* out) {
  FNK_REQUIRE(text);
  FNK_REQUIRE(out);
  return guarded([&] {
    *out = flatnk::detect_form_kind(text) == flatnk::FormKind::real ? FNK_FORM_REAL : FNK_FORM_COMPLEX;
    return FNK_OK;
  });
}

// ---- config

fnk_status fnk_config_create(fnk_config** out) {
  FNK_REQUIRE(out);
  return guarded([&] {
    *out = new fnk_config{};
    return FNK_OK;
  });
}

fnk_status fnk_config_set_samples(fnk_config* cfg, size_t samples) {
  FNK_REQUIRE(cfg);
  if (samples == 0) return set_error(FNK_ERR_INVALID, "sample count must be positive");
  cfg->samples.samples = samples;
  return FNK_OK;
}

fnk_status fnk_config_set_radius(fnk_config* cfg, double radius) {
  FNK_REQUIRE(cfg);
  if (!(radius > 0.0) || !std::isfinite(radius)) return set_error(FNK_ERR_INVALID, "radius must be positive and finite");
  cfg->samples.radius = radius;
  return FNK_OK;
}

fnk_status fnk_config_set_seed(fnk_config* cfg, uint64_t seed) {
  FNK_REQUIRE(cfg);
  cfg->samples.seed = seed;
  return FNK_OK;
}

fnk_status fnk_config_set_tolerance(fnk_config* cfg, const char* name, double value) {
  FNK_REQUIRE(cfg);
  FNK_REQUIRE(name);
  return guarded([&] {
    cfg->tol.set(name, value);
    return FNK_OK;
  });
}

fnk_status fnk_config_get_tolerance(const fnk_config* cfg, const char* name, double* out) {
  FNK_REQUIRE(name);
  FNK_REQUIRE(out);
  return guarded([&] {
    *out = config_or_default(cfg).tol.get(name);
    return FNK_OK;
  });
}

fnk_status fnk_config_tolerance_names(char** out) {
  FNK_REQUIRE(out);
  return guarded([&] {
    json names = json::array();
    const flatnk::Tolerances defaults;
    for (const auto& [name, value] : defaults.all()) names.push_back(name);
    *out = emit(names);
    return FNK_OK;
  });
}

void fnk_config_free(fnk_config* cfg) { delete cfg; }

// ---- construction

fnk_status fnk_realize(const fnk_complex_form* zeta, fnk_realization** out) {
  FNK_REQUIRE(zeta);
  FNK_REQUIRE(out);
  return guarded([&] {
    *out = new fnk_realization{zeta->form, flatnk::realize(zeta->form)};
    return FNK_OK;
  });
}

fnk_status fnk_realization_eta(const fnk_realization* r, fnk_real_form** out) {
  FNK_REQUIRE(r);
  FNK_REQUIRE(out);
  return guarded([&] {
    *out = new fnk_real_form{r->r.eta};
    return FNK_OK;
  });
}

fnk_status fnk_realization_basis_json(const fnk_realization* r, char** out) {
  FNK_REQUIRE(r);
  FNK_REQUIRE(out);
  return guarded([&] {
    *out = emit({{"L", flatnk::to_json(r->r.L)}, {"Lprime", flatnk::to_json(r->r.Lprime)}});
    return FNK_OK;
  });
}

fnk_status fnk_realization_manifest_json(const fnk_realization* r, char** out) {
  FNK_REQUIRE(r);
  FNK_REQUIRE(out);
  return guarded([&] {
    const flatnk::Strictness s = flatnk::strictness(r->zeta);
    const flatnk::SupportRank rank = flatnk::maximal_support(r->zeta);
    const int m = r->zeta.m();
    json manifest = {{"library_version", fnk_version()},
                     {"m", m},
                     {"space", {{"k", r->r.space.k()}, {"l", r->r.space.l()}}},
                     {"real_dimension", r->r.space.real_dim()},
                     {"zeta", flatnk::to_json(r->zeta)},
                     {"eta_nonzero_terms", flatnk::to_json(r->r.eta)["terms"].size()},
                     {"strict", s.strict},
                     {"strictness_diagnostic", s.diagnostic},
                     {"support_rank", rank.rank},
                     {"maximal_support", rank.maximal},
                     {"files", {{"eta", "eta.json"}, {"basis", "basis.json"}}}};
    *out = emit(manifest);
    return FNK_OK;
  });
}

void fnk_realization_free(fnk_realization* r) { delete r; }

// ---- reports

fnk_status fnk_validate(const fnk_real_form* eta, const fnk_config* cfg, int* admissible, char** report) {
  FNK_REQUIRE(eta);
  FNK_REQUIRE(admissible);
  FNK_REQUIRE(report);
  return guarded([&] {
    bool ok = false;
    json out = validate_report(eta->form, config_or_default(cfg).tol, ok);
    *admissible = ok ? 1 : 0;
    *report = emit(out);
    return FNK_OK;
  });
}

fnk_status fnk_verify(const fnk_real_form* eta, const fnk_config* cfg, int* pass, char** report) {
  FNK_REQUIRE(eta);
  FNK_REQUIRE(pass);
  FNK_REQUIRE(report);
  return guarded([&] {
    const fnk_config& c = config_or_default(cfg);
    bool admissible = false;
    json validation = validate_report(eta->form, c.tol, admissible);
    // The battery runs on the candidate field even when admissibility fails, so the
    // report names the identities that break.
    const auto nk = flatnk::NearlyKahlerStructure::unchecked(eta->form);
    const flatnk::Battery battery = flatnk::run_battery(nk, c.samples, c.tol);
    json failed = json::array();
    for (const auto& cond : validation["conditions"]) {
      if (!cond["holds"].get<bool>()) failed.push_back(cond["condition"]);
    }
    for (const auto& r : battery.identities) {
      if (!r.pass) failed.push_back(r.identity);
    }
    const bool ok = admissible && battery.pass;
    json out = {{"admissibility", validation["conditions"]},
                {"config", {{"samples", c.samples.samples}, {"radius", c.samples.radius}, {"seed", c.samples.seed}}},
                {"identities", flatnk::to_json(battery)["identities"]},
                {"strict", battery.strict},
                {"strictness_measure", battery.strictness_measure},
                {"failed", std::move(failed)},
                {"pass", ok}};
    *pass = ok ? 1 : 0;
    *report = emit(out);
    return FNK_OK;
  });
}

fnk_status fnk_split(const fnk_real_form* eta, const fnk_config* cfg, int* pass, char** report) {
  FNK_REQUIRE(eta);
  FNK_REQUIRE(pass);
  FNK_REQUIRE(report);
  return guarded([&] {
    const fnk_config& c = config_or_default(cfg);
    const double tol = c.tol.get("split");
    const auto i = flatnk::check_condition_i(eta->form, c.tol.get("condition_i"));
    const auto ii = flatnk::check_condition_ii(eta->form, c.tol.get("condition_ii"));
    if (!i.holds || !ii.holds) {
      std::string failed = !i.holds ? "condition (i)" : "";
      if (!ii.holds) failed += failed.empty() ? "condition (ii)" : " and condition (ii)";
      return set_error(FNK_ERR_INADMISSIBLE, "cannot split: " + failed + " failed");
    }
    const flatnk::DeRhamSplit s = flatnk::split(eta->form, tol);
    const flatnk::SplitReport r = flatnk::verify_split(s, tol, c.samples);
    *pass = r.pass ? 1 : 0;
    *report = emit(flatnk::to_json(r));
    return FNK_OK;
  });
}

fnk_status fnk_invariants(const fnk_complex_form* zeta, const fnk_config* cfg, char** report) {
  FNK_REQUIRE(zeta);
  FNK_REQUIRE(report);
  return guarded([&] {
    *report = emit(flatnk::to_json(flatnk::invariants(zeta->form, config_or_default(cfg).tol.get("rank"))));
    return FNK_OK;
  });
}

// ---- GL_m(C)

fnk_status fnk_act(const double* g, const fnk_complex_form* zeta, fnk_complex_form** out) {
  FNK_REQUIRE(g);
  FNK_REQUIRE(zeta);
  FNK_REQUIRE(out);
  return guarded([&] {
    const int m = zeta->form.m();
    flatnk::CMatrix h(m, m);
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < m; ++c) {
        const std::size_t at = 2 * static_cast<std::size_t>(r * m + c);
        h(r, c) = flatnk::Complex(g[at], g[at + 1]);
      }
    }
    if (!h.allFinite()) throw std::invalid_argument("group element has non-finite entries");
    *out = new fnk_complex_form{flatnk::act(h, zeta->form)};
    return FNK_OK;
  });
}

fnk_status fnk_equivalent(const fnk_complex_form* first, const fnk_complex_form* second, const fnk_config* cfg,
                          char** report) {
  FNK_REQUIRE(first);
  FNK_REQUIRE(second);
  FNK_REQUIRE(report);
  return guarded([&] {
    const flatnk::Equivalence e =
        flatnk::equivalent_small_m(first->form, second->form, config_or_default(cfg).tol.get("rank"));
    json witness = nullptr;
    if (e.witness) {
      witness = json::array();
      for (int r = 0; r < e.witness->rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < e.witness->cols(); ++c) row.push_back({(*e.witness)(r, c).real(), (*e.witness)(r, c).imag()});
        witness.push_back(std::move(row));
      }
    }
    *report = emit({{"verdict", flatnk::to_string(e.verdict)}, {"reason", e.reason}, {"witness", std::move(witness)}});
    return FNK_OK;
  });
}

}  // extern "C"
