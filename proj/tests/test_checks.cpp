#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "checks.hpp"
#include "error.hpp"
#include "expression.hpp"
#include "presets.hpp"
#include "random_inputs.hpp"

using namespace yf;

namespace {

constexpr std::uint64_t kSeed = 20261017;
const CheckOptions kPerturbed{.phase_perturbation = 1e-6};

GridSpec unit32() { return make_grid(1, 1, 32, 32); }

std::vector<SheetPath> paths(const GridSpec& g) { return sample_paths(g, RngStream{kSeed, 1}, 10); }

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no yf::Error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(ZScore, ComponentwiseAndExactFallback) {
  EXPECT_NEAR(z_score(complex(1, 2), complex(0.5, 2.9), 0.25, 0.3), 3.0, 1e-12);
  EXPECT_EQ(z_score(complex(1, 0), complex(1, 0), 0, 0), 0.0);
  EXPECT_GT(z_score(complex(1, 0), complex(1 + 1e-9, 0), 0, 0), kSigmaThreshold);
}

TEST(Fubini, H4AndSingleKernel) {
  const auto g = unit32();
  InputSampler in(1);
  const auto F = random_functional(g, 5, in);
  const auto r = check_fubini(F, preset_kernels("H4", g), 1.3);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.mode, CheckMode::Exact);
  EXPECT_EQ(r.threshold, kFubiniTolerance);
  const std::vector<GridFunction> single{random_kernel(g, in)};
  EXPECT_EQ(check_fubini(F, single, -2.0).max_abs_diff, 0.0);
  EXPECT_FALSE(check_fubini(F, preset_kernels("H4", g), 1.3, kPerturbed).passed);
}

TEST(Inverse, PassesAndFlips) {
  const auto g = unit32();
  InputSampler in(2);
  const auto F = random_functional(g, 5, in);
  const auto h = random_kernel(g, in);
  EXPECT_TRUE(check_inverse(F, h, 0.7).passed);
  EXPECT_FALSE(check_inverse(F, h, 0.7, kPerturbed).passed);
}

TEST(TransformComposition, ParameterChains) {
  const auto g = unit32();
  InputSampler in(3);
  const auto F = random_functional(g, 5, in);
  const auto h = random_kernel(g, in);
  const auto ys = paths(g);
  EXPECT_EQ(ys.size(), 11u);
  for (const std::vector<double>& qs : {std::vector<double>{2, 2}, {1.7}, {3, -6, 2}}) {
    const auto r = check_transform_q_composition(F, h, qs, ys);
    EXPECT_TRUE(r.passed) << r.max_abs_diff;
    EXPECT_EQ(r.lhs.size(), ys.size());
  }
  const std::vector<double> qs{3, -6, 2};
  EXPECT_FALSE(check_transform_q_composition(F, h, qs, ys, kPerturbed).passed);
  const std::vector<double> degenerate{3, -3};
  EXPECT_EQ(code_of([&] { check_transform_q_composition(F, h, degenerate, ys); }),
            ErrorCode::DegenerateParameter);
}

TEST(TransformComposition, TrigPairActsLikeUnitKernel) {
  const auto g = unit32();
  InputSampler in(4);
  const auto F = random_functional(g, 5, in);
  const auto ys = paths(g);
  const auto H = preset_kernels("trig-pair", g);
  EXPECT_TRUE(check_transform_kernel_composition(F, H, 1.1, ys).passed);
  const auto T1 = gfyft(gfyft(F, H[0], 1.1), H[1], 1.1);
  const auto T = gfyft(F, GridFunction::constant(g, 1), 1.1);
  for (const auto& y : ys) EXPECT_LT(std::abs(evaluate(T1, y) - evaluate(T, y)), 1e-10);
  EXPECT_FALSE(check_transform_kernel_composition(F, H, 1.1, ys, kPerturbed).passed);
}

TEST(TransformComposition, MixedFamiliesWithEqualCombination) {
  const auto g = unit32();
  InputSampler in(5);
  const auto F = random_functional(g, 5, in);
  const auto ys = paths(g);
  const auto H1 = preset_kernels("trig-pair", g);
  const std::vector<GridFunction> H2{GridFunction::constant(g, 1)};
  EXPECT_TRUE(check_transform_mixed(F, H1, H2, 2.0, -0.5, ys).passed);
  EXPECT_FALSE(check_transform_mixed(F, H1, H2, 2.0, -0.5, ys, kPerturbed).passed);
  const std::vector<GridFunction> H3{GridFunction::constant(g, 2)};
  EXPECT_EQ(code_of([&] { check_transform_mixed(F, H1, H3, 2.0, -0.5, ys); }), ErrorCode::HypothesisViolated);
  EXPECT_EQ(code_of([&] { check_transform_mixed(F, H1, H2, 2.0, -2.0, ys); }), ErrorCode::DegenerateParameter);
}

TEST(Relationships, UnitConstantAndPairKernels) {
  const auto g = make_grid(1, 1, 64, 64);
  InputSampler in(6);
  const auto F = random_functional(g, 4, in), G = random_functional(g, 4, in);
  const auto ys = paths(g);
  const auto one = GridFunction::constant(g, 1);
  const auto K = preset_kernels("k1k2-pair", g);
  const struct {
    GridFunction h, k1, k2;
  } cases[] = {{one, one, one},
               {one, GridFunction::constant(g, 2), GridFunction::constant(g, 0.5)},
               {K[2], K[0], K[1]}};
  for (const auto& c : cases) {
    EXPECT_TRUE(check_relationship_I(F, G, c.h, c.k1, c.k2, 0.9, ys).passed);
    EXPECT_TRUE(check_relationship_II(F, G, c.h, c.k1, c.k2, 0.9, ys).passed);
    EXPECT_FALSE(check_relationship_I(F, G, c.h, c.k1, c.k2, 0.9, ys, kPerturbed).passed);
    EXPECT_FALSE(check_relationship_II(F, G, c.h, c.k1, c.k2, 0.9, ys, kPerturbed).passed);
  }
}

TEST(Relationships, SwappingFunctionalsKeepsVerdict) {
  const auto g = unit32();
  InputSampler in(7);
  const auto F = random_functional(g, 4, in), G = random_functional(g, 4, in);
  const auto ys = paths(g);
  const auto h = random_kernel(g, in);
  const auto k = combine_kernels({h});
  EXPECT_TRUE(check_relationship_I(F, G, h, k, k, -1.4, ys).passed);
  EXPECT_TRUE(check_relationship_I(G, F, h, k, k, -1.4, ys).passed);
}

TEST(Relationships, ZeroAtomsGiveProductOfWeights) {
  const auto g = unit32();
  const auto zero = GridFunction::constant(g, 0);
  const auto F = CylinderFunctional::exponential(zero, complex(0.5, 0.5));
  const auto G = CylinderFunctional::exponential(zero, complex(-1, 2));
  const auto one = GridFunction::constant(g, 1);
  const auto r = check_relationship_II(F, G, one, one, one, 1.0, paths(g));
  EXPECT_TRUE(r.passed);
  for (const auto& v : r.rhs) EXPECT_LT(std::abs(v - complex(0.5, 0.5) * complex(-1, 2)), 1e-15);
}

TEST(Relationships, ViolatedHypothesisIsRefused) {
  const auto g = unit32();
  InputSampler in(8);
  const auto F = random_functional(g, 3, in), G = random_functional(g, 3, in);
  const auto ys = paths(g);
  const auto one = GridFunction::constant(g, 1);
  const auto two = GridFunction::constant(g, 2);
  EXPECT_EQ(code_of([&] { check_relationship_I(F, G, one, two, one, 1.0, ys); }), ErrorCode::HypothesisViolated);
  EXPECT_EQ(code_of([&] { check_relationship_II(F, G, one, two, one, 1.0, ys); }), ErrorCode::HypothesisViolated);
  const std::vector<GridFunction> H{one, one};
  EXPECT_EQ(code_of([&] { check_relationship_II_extended(F, G, H, one, one, 1.0, ys); }),
            ErrorCode::HypothesisViolated);
  EXPECT_EQ(code_of([&] { check_relationship_II_dual_families(F, G, one, H, H, 1.0, ys); }),
            ErrorCode::HypothesisViolated);
}

TEST(Relationships, ExtendedChains) {
  const auto g = unit32();
  InputSampler in(9);
  const auto F = random_functional(g, 4, in), G = random_functional(g, 4, in);
  const auto ys = paths(g);
  const auto one = GridFunction::constant(g, 1);
  // constants with h1^2 + h2^2 = k1 k2
  const std::vector<GridFunction> H{GridFunction::constant(g, 0.6), GridFunction::constant(g, 0.8)};
  EXPECT_TRUE(check_relationship_II_extended(F, G, H, GridFunction::constant(g, 0.5),
                                             GridFunction::constant(g, 2), 1.2, ys).passed);
  std::vector<GridFunction> R;
  for (int m = 0; m < 3; ++m) R.push_back(random_kernel(g, in));
  const auto s = combine_kernels(R);
  const auto r = check_relationship_II_extended(F, G, R, pointwise_mul(s, s), one, -0.8, ys);
  EXPECT_TRUE(r.passed);
  EXPECT_FALSE(check_relationship_II_extended(F, G, R, pointwise_mul(s, s), one, -0.8, ys, kPerturbed).passed);
}

TEST(Relationships, DualFamilies) {
  const auto g = make_grid(1, 1, 64, 64);
  InputSampler in(10);
  const auto F = random_functional(g, 4, in), G = random_functional(g, 4, in);
  const auto ys = paths(g);
  const auto K = preset_kernels("k1k2-pair", g);
  const double r2 = std::sqrt(0.5);
  const std::vector<GridFunction> K1{K[0].scaled(r2), K[0].scaled(r2)};
  const std::vector<GridFunction> K2{K[1].scaled(0.6), K[1].scaled(0.8)};
  EXPECT_TRUE(check_relationship_II_dual_families(F, G, K[2], K1, K2, 0.75, ys).passed);
  EXPECT_FALSE(check_relationship_II_dual_families(F, G, K[2], K1, K2, 0.75, ys, kPerturbed).passed);

  const auto h = GridFunction::constant(g, 2);
  const std::vector<GridFunction> C1{GridFunction::constant(g, 3)};
  const std::vector<GridFunction> C2{GridFunction::constant(g, 4.0 / 3)};
  EXPECT_TRUE(check_relationship_II_dual_families(F, G, h, C1, C2, 2.0, ys).passed);
}

TEST(McConsistency, ZeroAtomAndNegativeControl) {
  const auto g = unit32();
  const auto one = GridFunction::constant(g, 1);
  const auto Z = CylinderFunctional::exponential(GridFunction::constant(g, 0));
  const auto exact = check_mc_consistency(Z, one, 1.0, 100, RngStream{kSeed, 2});
  EXPECT_TRUE(exact.passed);
  EXPECT_EQ(exact.max_abs_diff, 0.0);

  const auto F = CylinderFunctional::exponential(one);
  const auto ok = check_mc_consistency(F, one, 1.0, 20000, RngStream{kSeed, 3});
  EXPECT_TRUE(ok.passed) << ok.max_abs_diff;
  EXPECT_EQ(ok.mode, CheckMode::Statistical);
  const auto shifted = check_mc_consistency(F, one, 1.0, 20000, RngStream{kSeed, 3},
                                            {.oracle_offset_sigmas = 10});
  EXPECT_FALSE(shifted.passed);
}

TEST(TwoStage, AgreesWithCombinedKernel) {
  const auto g = unit32();
  InputSampler in(11);
  const auto F = random_functional(g, 4, in);
  const auto H = preset_kernels("trig-pair", g);
  const auto r = check_two_stage_mc(F, H[0], H[1], 1.0, 4000, 1, RngStream{kSeed, 4});
  EXPECT_TRUE(r.passed) << r.max_abs_diff;
}

TEST(PwzIdentity, ExactAndPerturbed) {
  const auto g = unit32();
  InputSampler in(12);
  std::vector<GridFunction> alphas, hs;
  for (int k = 0; k < 11; ++k) {
    alphas.push_back(random_atom(g, in));
    hs.push_back(random_kernel(g, in));
  }
  const auto xs = paths(g);
  EXPECT_TRUE(check_pwz_identity(alphas, hs, xs).passed);
  EXPECT_FALSE(check_pwz_identity(alphas, hs, xs, kPerturbed).passed);
}

TEST(GaussianLaw, UnitIntegrand) {
  const auto g = unit32();
  const std::vector<double> alphas{0.5, 1, 2};
  const auto r = check_gaussian_law(sample_expression("1 + s", g), alphas, 20000, RngStream{kSeed, 5});
  EXPECT_TRUE(r.passed) << r.max_abs_diff;
}
