// Copyright 2026 The flatnk Authors
// SPDX-License-Identifier: Apache-2.0

// flatnk command-line front end. Talks to the library only through flatnk.h.

#include "flatnk/flatnk.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

enum Exit { kOk = 0, kFailed = 1, kInputError = 2 };

struct Options {
  std::string input;
  std::vector<std::string> tolerances;
  std::size_t samples = 100;
  double radius = 10.0;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out;
  bool no_timestamp = false;
};

// Thrown to leave a command with a given exit code and message on stderr.
struct Abort {
  int code;
  std::string message;
};

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using RealForm = std::unique_ptr<fnk_real_form, Deleter<fnk_real_form, fnk_real_form_free>>;
using ComplexForm = std::unique_ptr<fnk_complex_form, Deleter<fnk_complex_form, fnk_complex_form_free>>;
using RealizationPtr = std::unique_ptr<fnk_realization, Deleter<fnk_realization, fnk_realization_free>>;
using Config = std::unique_ptr<fnk_config, Deleter<fnk_config, fnk_config_free>>;

int exit_for(fnk_status s) {
  switch (s) {
    case FNK_OK: return kOk;
    case FNK_ERR_PARSE:
    case FNK_ERR_INVALID:
    case FNK_ERR_NULL: return kInputError;
    default: return kFailed;
  }
}

void check(fnk_status s, const std::string& context) {
  if (s != FNK_OK) throw Abort{exit_for(s), context + ": " + fnk_last_error()};
}

std::string take(char* s) {
  std::string out(s);
  fnk_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Abort{kInputError, "cannot read " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Abort{kInputError, "cannot write " + path.string()};
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
  if (!out) throw Abort{kInputError, "cannot write " + path.string()};
}

Config make_config(const Options& o) {
  fnk_config* raw = nullptr;
  check(fnk_config_create(&raw), "config");
  Config cfg(raw);
  check(fnk_config_set_samples(cfg.get(), o.samples), "--samples");
  check(fnk_config_set_radius(cfg.get(), o.radius), "--radius");
  check(fnk_config_set_seed(cfg.get(), o.seed), "--seed");
  for (const std::string& entry : o.tolerances) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos || eq == 0) throw Abort{kInputError, "--tol expects NAME=VALUE, got '" + entry + "'"};
    const std::string name = entry.substr(0, eq);
    const std::string value = entry.substr(eq + 1);
    double v = 0.0;
    try {
      std::size_t used = 0;
      v = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw Abort{kInputError, "--tol " + name + ": '" + value + "' is not a number"};
    }
    check(fnk_config_set_tolerance(cfg.get(), name.c_str(), v), "--tol " + name);
  }
  return cfg;
}

std::string timestamp_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

// The real form to analyse: read directly, or realized from a complex form.
RealForm load_real(const std::string& text, std::string& kind) {
  fnk_form_kind k{};
  check(fnk_detect_form_kind(text.c_str(), &k), "input");
  fnk_real_form* eta = nullptr;
  if (k == FNK_FORM_REAL) {
    kind = "real";
    check(fnk_real_form_from_json(text.c_str(), &eta), "input");
    return RealForm(eta);
  }
  kind = "complex";
  fnk_complex_form* zeta = nullptr;
  check(fnk_complex_form_from_json(text.c_str(), &zeta), "input");
  ComplexForm z(zeta);
  fnk_realization* r = nullptr;
  check(fnk_realize(z.get(), &r), "realize");
  RealizationPtr rp(r);
  check(fnk_realization_eta(rp.get(), &eta), "realize");
  return RealForm(eta);
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(3) << v;
  return s.str();
}

std::string render_conditions(const json& conditions) {
  std::ostringstream out;
  for (const auto& c : conditions) {
    const bool holds = c["holds"].get<bool>();
    out << c["condition"].get<std::string>() << (holds ? " holds" : " failed") << ": residual "
        << fmt(c["residual"].get<double>()) << " (tolerance " << fmt(c["tolerance"].get<double>()) << ")";
    if (!holds && c["witness"].size() == 2) {
      out << ", witnessing basis pair (e" << c["witness"][0] << ", e" << c["witness"][1] << ")";
    } else if (!holds && c["witness"].size() == 1) {
      out << ", witnessing basis vector e" << c["witness"][0];
    }
    out << "\n";
  }
  return out.str();
}

std::string render_identities(const json& identities) {
  std::ostringstream out;
  for (const auto& r : identities) {
    out << "  " << std::left << std::setw(26) << r["identity"].get<std::string>() << " "
        << (r["pass"].get<bool>() ? "PASS" : "FAIL") << "  max residual " << fmt(r["max_residual"].is_null() ? NAN : r["max_residual"].get<double>())
        << "  tolerance " << fmt(r["tolerance"].get<double>()) << "\n";
  }
  return out.str();
}

std::string render_text(const std::string& command, const json& report) {
  std::ostringstream out;
  if (command == "validate") {
    out << "space C^{" << report["space"]["k"] << "," << report["space"]["l"] << "}, input " << report["input_kind"].get<std::string>() << "\n";
    out << render_conditions(report["conditions"]);
    out << "support: real dimension " << report["support"]["dim"] << ", isotropic "
        << report["support"]["isotropic"] << ", J-invariant " << report["support"]["J_invariant"] << "\n";
    out << (report["admissible"].get<bool>() ? "admissible" : "not admissible") << "\n";
  } else if (command == "verify") {
    out << render_conditions(report["admissibility"]);
    out << render_identities(report["identities"]);
    out << "strict: " << (report["strict"].get<bool>() ? "yes" : "no") << "\n";
    out << (report["pass"].get<bool>() ? "all identities hold" : "verification failed") << "\n";
  } else if (command == "split") {
    out << "dim V0 = " << report["dim_V0"] << ", dim V' = " << report["dim_Vprime"] << ", m = " << report["m"]
        << ", signature of V' = (" << report["signature_Vprime"][0] << "," << report["signature_Vprime"][1] << ")\n";
    for (const auto& c : report["checks"]) {
      out << "  " << std::left << std::setw(30) << c["name"].get<std::string>() << " "
          << (c["pass"].get<bool>() ? "PASS" : "FAIL") << "  " << fmt(c["value"].get<double>()) << "\n";
    }
  } else if (command == "invariants") {
    out << "m = " << report["m"] << "\n"
        << "support rank = " << report["support_rank"] << "\n"
        << "maximal support = " << report["is_maximal_support"] << "\n"
        << "orbit dimension = " << report["orbit_dimension"] << "\n"
        << "decomposable = " << (report["is_decomposable"].is_null() ? std::string("unknown") : report["is_decomposable"].dump()) << "\n";
  }
  if (report.contains("timestamp")) out << "timestamp: " << report["timestamp"].get<std::string>() << "\n";
  return out.str();
}

void emit(const std::string& command, const Options& o, json report) {
  if (!o.no_timestamp) report["timestamp"] = timestamp_now();
  const std::string text = o.format == "text" ? render_text(command, report) : report.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
  } else {
    write_file(o.out, text);
  }
}

int cmd_validate(const Options& o) {
  const std::string text = read_file(o.input);
  std::string kind;
  RealForm eta = load_real(text, kind);
  Config cfg = make_config(o);
  int admissible = 0;
  char* raw = nullptr;
  check(fnk_validate(eta.get(), cfg.get(), &admissible, &raw), "validate");
  json report = json::parse(take(raw));
  report["input_kind"] = kind;
  for (const auto& c : report["conditions"]) {
    if (!c["holds"].get<bool>()) std::cerr << render_conditions(json::array({c}));
  }
  emit("validate", o, std::move(report));
  return admissible ? kOk : kFailed;
}

int cmd_construct(const Options& o) {
  const std::string text = read_file(o.input);
  fnk_complex_form* zeta = nullptr;
  check(fnk_complex_form_from_json(text.c_str(), &zeta), "input");
  ComplexForm z(zeta);
  fnk_realization* r = nullptr;
  check(fnk_realize(z.get(), &r), "realize");
  RealizationPtr rp(r);
  fnk_real_form* eta = nullptr;
  check(fnk_realization_eta(rp.get(), &eta), "realize");
  RealForm e(eta);
  char* eta_json = nullptr;
  check(fnk_real_form_to_json(e.get(), &eta_json), "serialize");
  const std::string eta_text = take(eta_json);
  if (o.out.empty()) {
    std::cout << eta_text << "\n";
    return kOk;
  }
  const std::filesystem::path dir(o.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Abort{kInputError, "cannot create " + dir.string() + ": " + ec.message()};
  char* basis = nullptr;
  check(fnk_realization_basis_json(rp.get(), &basis), "basis");
  char* manifest_raw = nullptr;
  check(fnk_realization_manifest_json(rp.get(), &manifest_raw), "manifest");
  json manifest = json::parse(take(manifest_raw));
  manifest["input"] = o.input;
  if (!o.no_timestamp) manifest["timestamp"] = timestamp_now();
  write_file(dir / "eta.json", eta_text);
  write_file(dir / "basis.json", take(basis));
  write_file(dir / "manifest.json", manifest.dump(2));
  return kOk;
}

int cmd_verify(const Options& o) {
  const std::string text = read_file(o.input);
  std::string kind;
  RealForm eta = load_real(text, kind);
  Config cfg = make_config(o);
  int pass = 0;
  char* raw = nullptr;
  check(fnk_verify(eta.get(), cfg.get(), &pass, &raw), "verify");
  json report = json::parse(take(raw));
  if (!pass) {
    std::cerr << "verification failed:";
    for (const auto& name : report["failed"]) std::cerr << " " << name.get<std::string>();
    std::cerr << "\n";
  }
  emit("verify", o, std::move(report));
  return pass ? kOk : kFailed;
}

int cmd_split(const Options& o) {
  const std::string text = read_file(o.input);
  std::string kind;
  RealForm eta = load_real(text, kind);
  Config cfg = make_config(o);
  int pass = 0;
  char* raw = nullptr;
  check(fnk_split(eta.get(), cfg.get(), &pass, &raw), "split");
  emit("split", o, json::parse(take(raw)));
  return pass ? kOk : kFailed;
}

int cmd_invariants(const Options& o) {
  const std::string text = read_file(o.input);
  fnk_complex_form* zeta = nullptr;
  check(fnk_complex_form_from_json(text.c_str(), &zeta), "input");
  ComplexForm z(zeta);
  Config cfg = make_config(o);
  char* raw = nullptr;
  check(fnk_invariants(z.get(), cfg.get(), &raw), "invariants");
  emit("invariants", o, json::parse(take(raw)));
  return kOk;
}

void add_common(CLI::App* sub, Options& o, bool sampling) {
  sub->add_option("input", o.input, "three-form file")->required();
  sub->add_option("--tol", o.tolerances, "tolerance override NAME=VALUE (repeatable)");
  if (sampling) {
    sub->add_option("--samples", o.samples, "samples per identity")->check(CLI::PositiveNumber);
    sub->add_option("--radius", o.radius, "half-width of the sampling box")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "random seed");
  }
  sub->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  sub->add_option("--out", o.out, "write the report (construct: a directory) instead of stdout");
  sub->add_flag("--no-timestamp", o.no_timestamp, "omit the timestamp field");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flat nearly pseudo-Kaehler structures from complex three-forms"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(fnk_version()));

  Options o;
  CLI::App* validate = app.add_subcommand("validate", "check conditions (i) and (ii) of a real or complex form");
  CLI::App* construct = app.add_subcommand("construct", "realize a complex three-form");
  CLI::App* verify = app.add_subcommand("verify", "run the full identity battery");
  CLI::App* split = app.add_subcommand("split", "de Rham splitting of an admissible form");
  CLI::App* inv = app.add_subcommand("invariants", "GL_m(C) orbit invariants of a complex form");
  add_common(validate, o, true);
  add_common(verify, o, true);
  add_common(split, o, true);
  add_common(inv, o, false);
  construct->add_option("input", o.input, "complex three-form file")->required();
  construct->add_option("--out", o.out, "directory for eta.json, basis.json, manifest.json");
  construct->add_flag("--no-timestamp", o.no_timestamp, "omit the manifest timestamp");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    if (*validate) return cmd_validate(o);
    if (*construct) return cmd_construct(o);
    if (*verify) return cmd_verify(o);
    if (*split) return cmd_split(o);
    if (*inv) return cmd_invariants(o);
  } catch (const Abort& a) {
    std::cerr << "flatnk: " << a.message << "\n";
    return a.code;
  } catch (const std::exception& e) {
    std::cerr << "flatnk: " << e.what() << "\n";
    return kFailed;
  }
  return kInputError;
}
