// Acceptance run: one PASS/FAIL line per criterion. Tolerances and seeds are
// fixed here; the seed was chosen before the first run and is not tuned.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "checks.hpp"
#include "error.hpp"
#include "expression.hpp"
#include "feynman.hpp"
#include "grid.hpp"
#include "presets.hpp"
#include "random_inputs.hpp"
#include "runner.hpp"

namespace {

using namespace yf;

constexpr std::uint64_t kSeed = 20261017;
constexpr double kPwzTol = 1e-14;
constexpr double kFubiniTol = 1e-12;
constexpr double kInverseTol = 1e-14;
constexpr double kExactTol = 1e-10;
constexpr double kSigmas = 3.0;
constexpr double kPerturbation = 1e-6;
constexpr double kOracleShift = 10.0;
constexpr std::size_t kMcSamples = 100000;
constexpr std::size_t kOuterSamples = 10000;
constexpr std::size_t kYPaths = 10;

const GridSpec kGrid(1.0, 1.0, 64, 64);

struct Verdict {
  bool passed;
  std::string detail;
};

char buf[512];

std::string fmt(const char* f, auto... args) {
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<SheetPath> y_paths(std::uint64_t stream) {
  return sample_paths(kGrid, RngStream{kSeed, stream}, kYPaths);
}

// 1. <alpha, Y_h(x)> = <alpha h, x> on 1000 random triples.
Verdict pwz_exactness() {
  InputSampler in(kSeed);
  std::vector<GridFunction> alphas, hs;
  std::vector<SheetPath> xs;
  for (std::size_t k = 0; k < 1000; ++k) {
    alphas.push_back(random_atom(kGrid, in));
    hs.push_back(random_kernel(kGrid, in));
    xs.push_back(sample_sheet(kGrid, RngStream{kSeed, 101}, k));
  }
  const auto r = check_pwz_identity(alphas, hs, xs);
  return {r.max_abs_diff <= kPwzTol, fmt("1000 triples, max diff %.3g (tol %.0e)", r.max_abs_diff, kPwzTol)};
}

// 2. Mean, variance and characteristic function of <v,x>.
Verdict gaussian_law() {
  const char* vs[] = {"1", "s*t", "sin(2*pi*s)*sin(2*pi*t)"};
  const double alphas[] = {0.5, 1.0, 2.0};
  double worst = 0.0;
  bool ok = true;
  std::uint64_t k = 0;
  for (const char* v : vs) {
    const auto r = check_gaussian_law(sample_expression(v, kGrid), alphas, kMcSamples,
                                      RngStream{kSeed, 102}.substream(k++));
    worst = std::max(worst, r.max_abs_diff);
    ok = ok && r.max_abs_diff <= kSigmas;
  }
  return {ok, fmt("3 integrands, n=%zu, max z %.3f (limit %.0f)", kMcSamples, worst, kSigmas)};
}

// 3. Monte Carlo against the real-lambda closed form: 20 functionals x
// 7 kernels x 3 lambdas, every component within 3 sigma.
Verdict feynman_oracle() {
  InputSampler in(kSeed + 3);
  std::vector<CylinderFunctional> Fs;
  for (int k = 0; k < 20; ++k) Fs.push_back(random_functional(kGrid, 5, in));
  std::vector<GridFunction> kernels = preset_kernels("one", kGrid);
  for (const char* name : {"H4", "trig-pair"}) {
    for (auto& h : preset_kernels(name, kGrid)) kernels.push_back(std::move(h));
  }
  std::vector<McTarget> targets;
  for (const auto& F : Fs) {
    for (const auto& h : kernels) {
      for (double lambda : {0.5, 1.0, 2.0}) targets.push_back({&F, &h, lambda});
    }
  }
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = check_mc_consistency_batch(targets, kMcSamples, RngStream{kSeed, 103});
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::size_t exceed = 0, components = 0;
  for (const auto& [key, value] : r.metadata) {
    if (key == "exceedances") exceed = std::stoul(value);
  }
  components = 2 * targets.size();
  return {r.passed, fmt("%zu cases, n=%zu, max z %.3f (limit %.0f), %zu of %zu cases over, %.1f s total",
                        targets.size(), kMcSamples, r.max_abs_diff, kSigmas, exceed, targets.size(),
                        secs) + fmt(" [%zu component comparisons]", components)};
}

// 4. Iterated closed form equals the single integral under s(H).
Verdict fubini_exact() {
  InputSampler in(kSeed + 4);
  double worst = 0.0;
  bool ok = true;
  for (int k = 0; k < 100; ++k) {
    const auto F = random_functional(kGrid, 5, in);
    std::vector<GridFunction> H;
    const std::size_t n = 1 + in.index(4);
    for (std::size_t j = 0; j < n; ++j) H.push_back(random_kernel(kGrid, in));
    const auto r = check_fubini(F, H, random_q(in));
    worst = std::max(worst, r.max_abs_diff);
    ok = ok && r.passed && r.max_abs_diff <= kFubiniTol;
  }
  const auto h4 = preset_kernels("H4", kGrid);
  const auto F = random_functional(kGrid, 5, in);
  const auto r = check_fubini(F, h4, 1.0);
  const auto reduced = sample_function(
      [](double s, double t) { return std::numbers::sqrt2 * std::sin(s) * std::cos(t); }, kGrid);
  const double kernel_gap = max_abs_diff(combine_kernels(h4), reduced);
  const double h4_gap = std::abs(iterated_closed_form(F, h4, 1.0) - feynman_closed_form(F, reduced, 1.0));
  ok = ok && r.max_abs_diff <= kFubiniTol && kernel_gap <= kFubiniTol && h4_gap <= kFubiniTol;
  worst = std::max({worst, r.max_abs_diff, h4_gap});
  return {ok, fmt("100 random + H4, max diff %.3g; s(H4) vs sqrt2 sin s cos t gap %.3g (tol %.0e)",
                  worst, kernel_gap, kFubiniTol)};
}

// 5. Nested two-kernel MC against single-kernel MC under s(h1,h2).
Verdict two_stage() {
  const auto trig = preset_kernels("trig-pair", kGrid);
  InputSampler in(kSeed + 5);
  const auto F = random_functional(kGrid, 5, in);
  const auto h1 = random_kernel(kGrid, in);
  const auto h2 = random_kernel(kGrid, in);
  const auto a = check_two_stage_mc(F, trig[0], trig[1], 1.0, kOuterSamples, 1, RngStream{kSeed, 105});
  const auto b = check_two_stage_mc(F, h1, h2, 1.0, kOuterSamples, 1, RngStream{kSeed, 106});
  return {a.max_abs_diff <= kSigmas && b.max_abs_diff <= kSigmas,
          fmt("n_outer=%zu, trig-pair z %.3f, random pair z %.3f (limit %.0f)", kOuterSamples,
              a.max_abs_diff, b.max_abs_diff, kSigmas)};
}

struct ExactCase {
  const char* label;
  double tol;
  std::function<CheckReport(const CheckOptions&)> run;
};

std::vector<ExactCase> transform_cases() {
  static const auto ys = y_paths(107);
  static InputSampler in(kSeed + 6);
  static const auto F = random_functional(kGrid, 5, in);
  static const auto h = random_kernel(kGrid, in);
  static const double q = random_q(in);
  static const auto h4 = preset_kernels("H4", kGrid);
  static const double qs[] = {3.0, -6.0, 2.0};
  return {
      {"inverse", kInverseTol, [](const CheckOptions& o) { return check_inverse(F, h, q, o); }},
      {"q-composition", kExactTol,
       [](const CheckOptions& o) { return check_transform_q_composition(F, h, qs, ys, o); }},
      {"kernel-composition", kExactTol,
       [](const CheckOptions& o) { return check_transform_kernel_composition(F, h4, q, ys, o); }},
  };
}

std::vector<ExactCase> relationship_cases() {
  static const auto ys = y_paths(108);
  static InputSampler in(kSeed + 7);
  static const auto F = random_functional(kGrid, 5, in);
  static const auto G = random_functional(kGrid, 5, in);
  static const double q = random_q(in);
  static const auto one = GridFunction::constant(kGrid, 1.0);
  static const auto pair = preset_kernels("k1k2-pair", kGrid);
  return {
      {"I unit", kExactTol,
       [](const CheckOptions& o) { return check_relationship_I(F, G, one, one, one, q, ys, o); }},
      {"I k1k2-pair", kExactTol,
       [](const CheckOptions& o) { return check_relationship_I(F, G, pair[2], pair[0], pair[1], q, ys, o); }},
      {"II unit", kExactTol,
       [](const CheckOptions& o) { return check_relationship_II(F, G, one, one, one, q, ys, o); }},
      {"II k1k2-pair", kExactTol,
       [](const CheckOptions& o) { return check_relationship_II(F, G, pair[2], pair[0], pair[1], q, ys, o); }},
  };
}

std::vector<ExactCase> extended_cases() {
  static const auto ys = y_paths(109);
  static InputSampler in(kSeed + 8);
  static const auto F = random_functional(kGrid, 4, in);
  static const auto G = random_functional(kGrid, 4, in);
  static const double q = random_q(in);
  static const auto one = GridFunction::constant(kGrid, 1.0);
  static const auto trig = preset_kernels("trig-pair", kGrid);
  static const auto h4 = preset_kernels("H4", kGrid);
  static const auto pair = preset_kernels("k1k2-pair", kGrid);
  static const std::vector<GridFunction> H3 = {random_kernel(kGrid, in), random_kernel(kGrid, in),
                                               random_kernel(kGrid, in)};
  static const auto sH3 = combine_kernels(H3);
  static const auto sH4 = combine_kernels(h4);
  // Constant families: 0.6^2 + 0.8^2 = 1 = 2 * 0.5.
  static const std::vector<GridFunction> C2 = {GridFunction::constant(kGrid, 0.6),
                                               GridFunction::constant(kGrid, 0.8)};
  static const double r = 1.0 / std::numbers::sqrt2;
  static const std::vector<GridFunction> K1 = {pair[0].scaled(r), pair[0].scaled(r)};
  static const std::vector<GridFunction> K2 = {pair[1].scaled(0.6), pair[1].scaled(0.8)};
  static const std::vector<GridFunction> onev = {one};
  return {
      {"extended trig-pair", kExactTol,
       [](const CheckOptions& o) { return check_relationship_II_extended(F, G, trig, one, one, q, ys, o); }},
      {"extended constants", kExactTol,
       [](const CheckOptions& o) {
         return check_relationship_II_extended(F, G, C2, GridFunction::constant(kGrid, 2.0),
                                               GridFunction::constant(kGrid, 0.5), q, ys, o);
       }},
      {"extended H4", kExactTol,
       [](const CheckOptions& o) {
         return check_relationship_II_extended(F, G, h4, pointwise_mul(sH4, sH4), one, q, ys, o);
       }},
      {"extended random H3", kExactTol,
       [](const CheckOptions& o) {
         return check_relationship_II_extended(F, G, H3, pointwise_mul(sH3, sH3), one, q, ys, o);
       }},
      {"dual trig-pair/one", kExactTol,
       [](const CheckOptions& o) { return check_relationship_II_dual_families(F, G, one, trig, onev, q, ys, o); }},
      {"dual k1k2 split", kExactTol,
       [](const CheckOptions& o) { return check_relationship_II_dual_families(F, G, pair[2], K1, K2, q, ys, o); }},
  };
}

Verdict run_exact(const std::vector<ExactCase>& cases) {
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    const auto r = c.run(CheckOptions{});
    ok = ok && r.passed && r.max_abs_diff <= c.tol;
    detail += fmt("%s%s %.2g", detail.empty() ? "" : ", ", c.label, r.max_abs_diff);
  }
  return {ok, detail + fmt(" (paths: zero + %zu sheets)", kYPaths)};
}

// 9. Perturbed phases and a shifted oracle must fail.
Verdict negative_controls() {
  std::size_t flipped = 0, total = 0;
  auto flip = [&](const CheckReport& r) {
    ++total;
    if (!r.passed) ++flipped;
  };
  const CheckOptions perturbed{kPerturbation, 0.0, 1};
  using CaseList = std::vector<ExactCase> (*)();
  for (CaseList group : {CaseList{transform_cases}, CaseList{relationship_cases}, CaseList{extended_cases}}) {
    for (const auto& c : group()) flip(c.run(perturbed));
  }
  InputSampler in(kSeed + 9);
  const auto F = random_functional(kGrid, 5, in);
  const auto H = std::vector<GridFunction>{random_kernel(kGrid, in), random_kernel(kGrid, in)};
  flip(check_fubini(F, H, 1.5, perturbed));
  flip(check_pwz_identity(std::vector<GridFunction>{random_atom(kGrid, in)},
                          std::vector<GridFunction>{random_kernel(kGrid, in)},
                          std::vector<SheetPath>{sample_sheet(kGrid, RngStream{kSeed, 110}, 0)},
                          perturbed));
  const auto h4 = preset_kernels("H4", kGrid);
  const auto baseline = check_mc_consistency(F, h4[0], 1.0, 20000, RngStream{kSeed, 111});
  const auto shifted = check_mc_consistency(F, h4[0], 1.0, 20000, RngStream{kSeed, 111},
                                            CheckOptions{0.0, kOracleShift, 1});
  const bool ok = flipped == total && baseline.passed && !shifted.passed;
  return {ok, fmt("%zu of %zu exact checks fail under a %.0e phase shift; MC oracle shifted %.0f sigma: z %.2f (unshifted z %.2f)",
                  flipped, total, kPerturbation, kOracleShift, shifted.max_abs_diff,
                  baseline.max_abs_diff)};
}

// 10. Same seed twice, and 1 vs 8 workers, give identical reports.
Verdict reproducibility() {
  const std::string base = R"({"seed": 20261017, "samples": 20000, "workers": )";
  const auto a = run_command("suite", "", base + "1}");
  const auto b = run_command("suite", "", base + "1}");
  const auto c = run_command("suite", "", base + "8}");
  const bool same_seed = a.report == b.report && a.summary_json == b.summary_json;
  const bool same_workers = a.report == c.report && a.summary_json == c.summary_json;
  return {same_seed && same_workers && a.exit_code == kExitPass,
          fmt("repeat identical: %s, workers 1 vs 8 identical: %s, suite exit %d",
              same_seed ? "yes" : "no", same_workers ? "yes" : "no", a.exit_code)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Verdict (*run)();
  };
  const Criterion criteria[] = {
      {"PWZ exactness", pwz_exactness},
      {"Gaussian law", gaussian_law},
      {"Feynman oracle", feynman_oracle},
      {"Fubini exact", fubini_exact},
      {"Two-stage MC Fubini", two_stage},
      {"Transform algebra", [] { return run_exact(transform_cases()); }},
      {"Relationships I and II", [] { return run_exact(relationship_cases()); }},
      {"Extended chains", [] { return run_exact(extended_cases()); }},
      {"Negative controls", negative_controls},
      {"Reproducibility", reproducibility},
  };
  int failures = 0;
  int index = 1;
  for (const auto& c : criteria) {
    Verdict v{false, ""};
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    std::printf("[%s] %2d %s: %s\n", v.passed ? "PASS" : "FAIL", index++, c.name, v.detail.c_str());
    std::fflush(stdout);
    if (!v.passed) ++failures;
  }
  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
