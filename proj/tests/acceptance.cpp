// Copyright 2026 The flatnk Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite. One PASS/FAIL line per criterion; exit status 1 if any fails.

#include "flatnk/derham.hpp"
#include "flatnk/io.hpp"
#include "flatnk/nkfield.hpp"
#include "flatnk/orbit.hpp"
#include "flatnk/realize.hpp"

#include "generators.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace flatnk;
namespace fs = std::filesystem;

namespace {

// Pinned thresholds.
constexpr double kBatteryResidual = 1e-10;
constexpr std::size_t kBatterySamples = 100;
constexpr double kZeroNorm = 1e-12;
constexpr double kDerivativeRelative = 1e-8;
constexpr double kSecondDifference = 1e-8;
constexpr double kMinViolation = 1e-3;
constexpr double kMaxViolation = 1.0;
constexpr double kSeconds1 = 5.0;
constexpr double kSeconds2 = 10.0;
constexpr double kSeconds4 = 5.0;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      failures.push_back(what);
      pass = false;
    }
  }
};

std::string sci(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ComplexThreeForm e123(int m) {
  ComplexThreeForm z(m);
  z.set(0, 1, 2, 1.0);
  return z;
}

// 2 Re(alpha ^ beta ^ gamma) for complex covectors given by their values on the real basis.
RealThreeForm twice_real_part(const PseudoHermitianSpace& space, const CVector& alpha, const CVector& beta,
                              const CVector& gamma) {
  RealThreeForm out(space);
  const int n = space.real_dim();
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int c = b + 1; c < n; ++c) {
        Eigen::Matrix3cd minor;
        minor << alpha(a), alpha(b), alpha(c), beta(a), beta(b), beta(c), gamma(a), gamma(b), gamma(c);
        out.set(a, b, c, 2.0 * minor.determinant().real());
      }
    }
  }
  return out;
}

// Canonical complex coordinate w^p on the real basis.
CVector coordinate_w(const PseudoHermitianSpace& space, int p) {
  CVector w = CVector::Zero(space.real_dim());
  w(2 * p) = Complex(1.0, 0.0);
  w(2 * p + 1) = Complex(0.0, 1.0);
  return w;
}

// b^j = (w^j - w^{m+j}) / sqrt(2) on C^{m,m}.
CVector coordinate_b(const PseudoHermitianSpace& space, int j) {
  return (coordinate_w(space, j) - coordinate_w(space, space.k() + j)) * M_SQRT1_2;
}

// --- 1

Outcome minimal_strict_example() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const Realization r = realize(e123(3));
  const Inertia sig = inertia(r.space.metric());
  o.require(r.space.real_dim() == 12, "real dimension " + std::to_string(r.space.real_dim()));
  o.require(sig.positive == 6 && sig.negative == 6 && sig.zero == 0, "signature is not (6,6)");
  o.require(r.eta.max_abs() > 0.0, "eta vanishes");

  const NearlyKahlerStructure nk(r.eta);
  const Battery b = run_battery(nk, SampleConfig{kBatterySamples, 10.0, 1});
  double worst = 0.0;
  std::string worst_name;
  for (const IdentityReport& id : b.identities) {
    if (id.identity == "strictness_consistency" || id.identity == "DJ_finite_difference") continue;
    o.require(id.samples >= kBatterySamples || id.identity == "J_origin",
              id.identity + " used " + std::to_string(id.samples) + " samples");
    if (id.max_residual > worst) {
      worst = id.max_residual;
      worst_name = id.identity;
    }
  }
  o.require(worst <= kBatteryResidual, "max residual " + sci(worst) + " in " + worst_name);
  o.require(b.pass, "battery reported a failure");
  o.require(b.strict, "structure is not strict");
  const double t = seconds_since(t0);
  o.require(t < kSeconds1, "runtime " + sci(t) + " s");
  o.detail << "signature (" << sig.positive << "," << sig.negative << "), " << b.identities.size()
           << " identities, max residual " << worst << " (" << worst_name << "), " << t << " s";
  return o;
}

// --- 2

// Isotropic Jcan-invariant subspace of complex dimension r, rotated by a random isometry.
Matrix isotropic_subspace(gen::Rng& rng, const PseudoHermitianSpace& space, int r) {
  const int k = space.k();
  const int l = space.l();
  const CMatrix u = gen::unitary(rng, k);
  const CMatrix v = gen::unitary(rng, l);
  CMatrix null(k + l, r);
  for (int j = 0; j < r; ++j) {
    null.col(j).head(k) = u.col(j) * M_SQRT1_2;
    null.col(j).tail(l) = v.col(j) * M_SQRT1_2;
  }
  Matrix real(space.real_dim(), 2 * r);
  for (int j = 0; j < r; ++j) {
    for (int p = 0; p < k + l; ++p) {
      real(2 * p, 2 * j) = null(p, j).real();
      real(2 * p + 1, 2 * j) = null(p, j).imag();
    }
    real.col(2 * j + 1) = space.jcan() * real.col(2 * j);
  }
  return gen::isometry(rng, space) * real;
}

// Candidates that satisfy condition (i) by construction (forms in the covectors of an
// isotropic J-invariant subspace) projected to pure type, mixed with unconstrained forms.
RealThreeForm candidate(gen::Rng& rng, const PseudoHermitianSpace& space, int kind) {
  const int n = space.real_dim();
  const int r_max = std::min(space.k(), space.l());
  if (kind == 0 && r_max > 0) {
    const Matrix basis = isotropic_subspace(rng, space, r_max);
    const Matrix lowered = space.metric() * basis;
    RealThreeForm eta(space);
    const int d = static_cast<int>(lowered.cols());
    for (int a = 0; a < d; ++a) {
      for (int b = a + 1; b < d; ++b) {
        for (int c = b + 1; c < d; ++c) {
          RealThreeForm term = wedge(space, lowered.col(a), lowered.col(b), lowered.col(c));
          term *= rng.normal();
          eta += term;
        }
      }
    }
    return pure_type_part(eta);
  }
  RealThreeForm eta(space);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int c = b + 1; c < n; ++c) eta.set(a, b, c, rng.normal());
    }
  }
  return kind == 1 ? pure_type_part(eta) : eta;
}

Outcome dimension_bound() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  for (int m : {1, 2}) {
    o.require(ComplexThreeForm(m).coeffs().empty(), "three-forms exist on C^" + std::to_string(m));
  }

  std::vector<PseudoHermitianSpace> spaces;
  for (int k = 0; k <= 5; ++k) {
    for (int l = 0; k + l <= 5; ++l) {
      if (k + l >= 1) spaces.emplace_back(k, l);
    }
  }
  gen::Rng rng(2);
  const int wanted = 500;
  int admissible = 0;
  int tried = 0;
  double largest = 0.0;
  while (admissible < wanted && tried < 100 * wanted) {
    const PseudoHermitianSpace& space = spaces[static_cast<std::size_t>(rng.integer(0, static_cast<int>(spaces.size()) - 1))];
    const RealThreeForm eta = candidate(rng, space, tried % 8 == 3 ? 1 : tried % 8 == 7 ? 2 : 0);
    ++tried;
    if (eta.dim() < 3) {
      o.require(eta.coeffs().empty(), "nonempty coefficient list below dimension 3");
    }
    if (!check_condition_i(eta).holds || !check_condition_ii(eta).holds) continue;
    ++admissible;
    largest = std::max(largest, eta.max_abs());
  }
  o.require(admissible == wanted, "only " + std::to_string(admissible) + " admissible candidates");
  o.require(largest <= kZeroNorm, "admissible form with max coefficient " + sci(largest));
  const double t = seconds_since(t0);
  o.require(t < kSeconds2, "runtime " + sci(t) + " s");
  o.detail << admissible << " admissible of " << tried << " candidates, largest coefficient " << largest << ", " << t
           << " s";
  return o;
}

// --- 3

Outcome derivative_oracle() {
  Outcome o;
  gen::Rng rng(3);
  double worst_dj = 0.0;
  double worst_d2 = 0.0;
  int forms = 0;
  for (int m : {3, 5}) {
    for (int t = 0; t < 10; ++t) {
      const NearlyKahlerStructure nk(realize(gen::zeta(rng, m)).eta);
      const SampleConfig cfg{100, 10.0, static_cast<std::uint64_t>(100 * m + t)};
      const IdentityReport dj = verify_derivative(nk, cfg, kDerivativeRelative);
      o.require(dj.samples == 100, "derivative check used " + std::to_string(dj.samples) + " pairs");
      worst_dj = std::max(worst_dj, dj.max_residual);
      Tolerances tol;
      tol.set("D2_omega", kSecondDifference);
      for (const IdentityReport& id : verify_gray_identities(nk, cfg, tol)) {
        if (id.identity == "D2_omega") worst_d2 = std::max(worst_d2, id.max_residual);
      }
      ++forms;
    }
  }
  o.require(worst_dj <= kDerivativeRelative, "DJ relative error " + sci(worst_dj));
  o.require(worst_d2 <= kSecondDifference, "second difference of omega " + sci(worst_d2));
  o.detail << forms << " forms x 100 pairs, DJ relative error " << worst_dj << ", D^2 omega " << worst_d2;
  return o;
}

// --- 4

Outcome de_rham_split() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const DeRhamSplit s = split(realize(e123(5)).eta);
  const SplitReport r = verify_split(s);
  o.require(r.dim_V0 == 8, "dim V0 = " + std::to_string(r.dim_V0));
  o.require(r.dim_Vprime == 12, "strict factor dimension " + std::to_string(r.dim_Vprime));
  o.require(r.signature_Vprime.positive == 6 && r.signature_Vprime.negative == 6 && r.signature_Vprime.zero == 0,
            "strict factor inertia is not (6,6)");
  o.require(r.pass, "split verification failed");

  ComplexThreeForm full = e123(5);
  full.set(0, 3, 4, 1.0);
  const SplitReport rf = verify_split(split(realize(full).eta));
  o.require(rf.dim_V0 == 0, "maximal support leaves dim V0 = " + std::to_string(rf.dim_V0));
  o.require(rf.pass, "split verification failed for maximal support");
  const double t = seconds_since(t0);
  o.require(t < kSeconds4, "runtime " + sci(t) + " s");
  o.detail << "e123 in C^{5,5}: V0 " << r.dim_V0 << ", factor " << r.dim_Vprime << " of inertia ("
           << r.signature_Vprime.positive << "," << r.signature_Vprime.negative << "); maximal support: V0 "
           << rf.dim_V0 << ", " << t << " s";
  return o;
}

// --- 5

Outcome m4_collapse() {
  Outcome o;
  gen::Rng rng(5);
  int collapsed = 0;
  for (int t = 0; t < 100; ++t) {
    const ComplexThreeForm z = gen::zeta(rng, 4);
    const SupportRank rank = maximal_support(z);
    const DeRhamSplit s = split(realize(z).eta);
    const SplitReport r = verify_split(s, kDefaultTol, SampleConfig{20, 10.0, static_cast<std::uint64_t>(t)});
    const bool ok = !z.is_zero() && rank.rank == 3 && s.m == 3 && r.dim_V0 == 4 && r.pass;
    o.require(ok, "trial " + std::to_string(t) + ": rank " + std::to_string(rank.rank) + ", dim V0 " +
                      std::to_string(r.dim_V0));
    collapsed += ok ? 1 : 0;
  }
  o.detail << collapsed << "/100 forms with support rank 3 and a 4-dimensional flat factor";
  return o;
}

// --- 6

Outcome orbit_consistency() {
  Outcome o;
  gen::Rng rng(6);
  const int dims[] = {3, 5, 6};
  int consistent = 0;
  for (int t = 0; t < 50; ++t) {
    const int m = dims[t % 3];
    const ComplexThreeForm z = gen::zeta(rng, m);
    const ComplexThreeForm gz = act(gen::group_element(rng, m), z);
    const bool same = invariants(z) == invariants(gz);
    const SampleConfig cfg{kBatterySamples, 10.0, static_cast<std::uint64_t>(t)};
    const bool first = run_battery(NearlyKahlerStructure(realize(z).eta), cfg).pass;
    const bool second = run_battery(NearlyKahlerStructure(realize(gz).eta), cfg).pass;
    o.require(same, "trial " + std::to_string(t) + " (m = " + std::to_string(m) + "): invariants differ");
    o.require(first && second, "trial " + std::to_string(t) + " (m = " + std::to_string(m) + "): battery failed");
    consistent += (same && first && second) ? 1 : 0;
  }
  o.detail << consistent << "/50 pairs with equal invariants and passing batteries";
  return o;
}

// --- 7

struct CliRun {
  int code = -1;
  std::string err;
};

CliRun validate_via_cli(const fs::path& dir, const RealThreeForm& eta) {
  const fs::path input = dir / "eta.json";
  const fs::path err = dir / "stderr.txt";
  std::ofstream(input) << to_json(eta).dump();
  const std::string cmd = std::string("\"") + FLATNK_CLI_PATH + "\" validate \"" + input.string() +
                          "\" --no-timestamp >/dev/null 2>\"" + err.string() + "\"";
  const int status = std::system(cmd.c_str());
  CliRun r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(err);
  std::ostringstream buf;
  buf << in.rdbuf();
  r.err = buf.str();
  return r;
}

Outcome negative_controls() {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / ("flatnk_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  gen::Rng rng(7);
  int detected_i = 0;
  int detected_ii = 0;
  for (int t = 0; t < 100; ++t) {
    const int m = 3 + t % 2;
    const Realization base = realize(gen::zeta(rng, m));
    const PseudoHermitianSpace& space = base.space;
    const double eps = std::exp(rng.uniform(std::log(kMinViolation), std::log(kMaxViolation)));
    const Complex c = std::polar(eps, rng.uniform(0.0, 2.0 * M_PI));

    // Pure type but supported on positive coordinates: the support is not isotropic.
    int p[3] = {0, 1, 2};
    if (m == 4) {
      const int skip = rng.integer(0, 3);
      for (int i = 0, j = 0; i < 4; ++i) {
        if (i != skip) p[j++] = i;
      }
    }
    RealThreeForm bad_i = twice_real_part(space, c * coordinate_w(space, p[0]), coordinate_w(space, p[1]),
                                          coordinate_w(space, p[2]));
    bad_i += base.eta;
    const CliRun ri = validate_via_cli(dir, bad_i);
    const bool ok_i = ri.code == 1 && ri.err.find("condition (i) failed") != std::string::npos &&
                      ri.err.find("condition (ii) failed") == std::string::npos;
    o.require(ok_i, "condition (i) trial " + std::to_string(t) + ": exit " + std::to_string(ri.code));
    detected_i += ok_i ? 1 : 0;

    // Supported on the null directions but of mixed type.
    RealThreeForm bad_ii = twice_real_part(space, c * coordinate_b(space, 0), coordinate_b(space, 1),
                                           coordinate_b(space, 2).conjugate());
    bad_ii += base.eta;
    const CliRun rii = validate_via_cli(dir, bad_ii);
    const bool ok_ii = rii.code == 1 && rii.err.find("condition (ii) failed") != std::string::npos &&
                       rii.err.find("condition (i) failed") == std::string::npos;
    o.require(ok_ii, "condition (ii) trial " + std::to_string(t) + ": exit " + std::to_string(rii.code));
    detected_ii += ok_ii ? 1 : 0;
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
  o.detail << "condition (i) detected " << detected_i << "/100, condition (ii) detected " << detected_ii << "/100";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "minimal strict example", minimal_strict_example},
      {2, "no admissible forms below dimension 12", dimension_bound},
      {3, "derivative oracle", derivative_oracle},
      {4, "de Rham split", de_rham_split},
      {5, "m = 4 collapse", m4_collapse},
      {6, "orbit consistency", orbit_consistency},
      {7, "negative controls through the CLI", negative_controls},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << c.number << " " << c.name << ": " << o.detail.str();
    for (std::size_t i = 0; i < o.failures.size() && i < 3; ++i) std::cout << (i == 0 ? " -- " : "; ") << o.failures[i];
    if (o.failures.size() > 3) std::cout << "; " << o.failures.size() - 3 << " more";
    std::cout << std::endl;
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
