#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "error.hpp"
#include "expression.hpp"
#include "random_inputs.hpp"
#include "sheet.hpp"

using namespace yf;

namespace {

constexpr std::uint64_t kSeed = 20261017;

struct Moments {
  double mean = 0;
  double var = 0;
};

Moments moments(const std::vector<double>& x) {
  Moments m;
  for (double v : x) m.mean += v;
  m.mean /= x.size();
  for (double v : x) m.var += (v - m.mean) * (v - m.mean);
  m.var /= x.size() - 1;
  return m;
}

}  // namespace

TEST(Sheet, ZeroOnLowerEdgesAndNodeValues) {
  const auto g = make_grid(1, 2, 5, 4);
  const auto x = sample_sheet(g, RngStream{kSeed, 1}, 3);
  EXPECT_EQ(x.value_at(0, 1.3), 0.0);
  EXPECT_EQ(x.value_at(0.6, 0), 0.0);
  const auto nodes = x.node_values();
  ASSERT_EQ(nodes.size(), 6u * 5u);
  for (int j = 0; j <= 4; ++j) {
    for (int i = 0; i <= 5; ++i) {
      EXPECT_NEAR(nodes[static_cast<std::size_t>(j) * 6 + i], x.value_at(0.2 * i, 0.5 * j), 1e-15);
    }
  }
  EXPECT_THROW(x.value_at(1.5, 0.5), Error);
}

TEST(Sheet, SameStreamIsBitIdentical) {
  const auto g = make_grid(1, 1, 32, 32);
  const auto a = sample_sheet(g, RngStream{kSeed, 4}, 17);
  const auto b = sample_sheet(g, RngStream{kSeed, 4}, 17);
  const auto c = sample_sheet(g, RngStream{kSeed, 4}, 18);
  EXPECT_TRUE(std::equal(a.increments().begin(), a.increments().end(), b.increments().begin()));
  EXPECT_FALSE(std::equal(a.increments().begin(), a.increments().end(), c.increments().begin()));
}

TEST(Sheet, CornerValueIsCentredWithUnitVariance) {
  const auto g = make_grid(1, 1, 16, 16);
  const std::size_t n = 10000;
  std::vector<double> corner(n);
  for (std::size_t k = 0; k < n; ++k) corner[k] = sample_sheet(g, RngStream{kSeed, 2}, k).value_at(1, 1);
  const auto m = moments(corner);
  EXPECT_LT(std::abs(m.mean) / std::sqrt(1.0 / n), 3.0);
  EXPECT_LT(std::abs(m.var - 1) / std::sqrt(2.0 / n), 3.0);
}

TEST(Pwz, LinearityAndZeroIntegrand) {
  const auto g = make_grid(1, 1, 32, 32);
  InputSampler in(3);
  const auto v = random_atom(g, in);
  const auto x = sample_sheet(g, RngStream{kSeed, 3}, 0);
  EXPECT_EQ(pwz_integral(GridFunction::constant(g, 0), x), 0.0);
  const double base = pwz_integral(v, x);
  EXPECT_NEAR(pwz_integral(v, scale_path(x, 2.5)), 2.5 * base, 1e-14);
  EXPECT_NEAR(pwz_integral(v.scaled(2.5), x), 2.5 * base, 1e-14);
}

TEST(Pwz, VarianceOfConstantIntegrand) {
  const auto g = make_grid(1, 1, 16, 16);
  const std::vector<GridFunction> vs{GridFunction::constant(g, 1)};
  const std::size_t n = 10000;
  const auto m = moments(pwz_samples(vs, n, RngStream{kSeed, 5}));
  EXPECT_LT(std::abs(m.var - 1) / std::sqrt(2.0 / n), 3.0);
}

TEST(Pwz, OrthogonalIntegrandsAreUncorrelated) {
  const auto g = make_grid(1, 1, 32, 32);
  const std::vector<GridFunction> vs{sample_expression("sin(2*pi*s)", g),
                                     sample_expression("cos(2*pi*s)", g)};
  ASSERT_NEAR(l2_inner(vs[0], vs[1]), 0.0, 1e-14);
  const std::size_t n = 20000;
  const auto z = pwz_samples(vs, n, RngStream{kSeed, 6});
  std::vector<double> prod(n);
  for (std::size_t i = 0; i < n; ++i) prod[i] = z[2 * i] * z[2 * i + 1];
  const auto m = moments(prod);
  EXPECT_LT(std::abs(m.mean) / std::sqrt(m.var / n), 3.0);
}

TEST(GaussianPath, UnitAndZeroKernels) {
  const auto g = make_grid(1, 1, 16, 16);
  const auto x = sample_sheet(g, RngStream{kSeed, 7}, 0);
  const auto same = gaussian_path(GridFunction::constant(g, 1), x);
  EXPECT_TRUE(std::equal(same.increments().begin(), same.increments().end(), x.increments().begin()));
  const auto zero = gaussian_path(GridFunction::constant(g, 0), x);
  for (double d : zero.increments()) EXPECT_EQ(d, 0.0);
}

TEST(GaussianPath, ProcessIntegralEqualsWeightedIntegral) {
  const auto g = make_grid(1, 1, 64, 64);
  InputSampler in(8);
  for (int trial = 0; trial < 50; ++trial) {
    const auto alpha = random_atom(g, in);
    const auto h = random_kernel(g, in);
    const auto x = sample_sheet(g, RngStream{kSeed, 8}, trial);
    EXPECT_NEAR(pwz_integral(alpha, gaussian_path(h, x)), pwz_integral(pointwise_mul(alpha, h), x),
                1e-14);
  }
}

TEST(GaussianPath, ValueIsWindowedIntegral) {
  const auto g = make_grid(1, 1, 20, 20);
  InputSampler in(9);
  const auto h = random_kernel(g, in);
  const auto x = sample_sheet(g, RngStream{kSeed, 9}, 0);
  const auto y = gaussian_path(h, x);
  for (auto [s, t] : {std::pair{0.3, 0.7}, {1.0, 1.0}, {0.55, 0.05}}) {
    EXPECT_NEAR(y.value_at(s, t), pwz_integral(windowed(h, s, t), x), 1e-14);
  }
}

TEST(ProcessCovariance, UnitKernelsAtCorner) {
  const auto g = make_grid(1, 1, 32, 32);
  const auto one = GridFunction::constant(g, 1);
  const std::size_t n = 10000;
  const double c = empirical_process_covariance(one, one, {1, 1}, {1, 1}, n, RngStream{kSeed, 10});
  EXPECT_LT(std::abs(c - 1) / std::sqrt(2.0 / n), 3.0);
}

TEST(ProcessCovariance, DisjointSupportsGiveZero) {
  const auto g = make_grid(1, 1, 32, 32);
  const auto h1 = sample_function([](double s, double) { return s < 0.5 ? 1.0 : 0.0; }, g);
  const auto h2 = sample_function([](double s, double) { return s < 0.5 ? 0.0 : 1.0; }, g);
  const std::size_t n = 10000;
  const double c = empirical_process_covariance(h1, h2, {1, 1}, {1, 1}, n, RngStream{kSeed, 11});
  EXPECT_LT(std::abs(c) / std::sqrt(0.25 / n), 3.0);
}

TEST(ProcessCovariance, LinearKernels) {
  const auto g = make_grid(1, 1, 64, 64);
  const auto h1 = sample_expression("s", g), h2 = sample_expression("t", g);
  const std::size_t n = 100000;
  const double c = empirical_process_covariance(h1, h2, {1, 1}, {1, 1}, n, RngStream{kSeed, 12});
  // Var(XY) = Var X Var Y + Cov^2 for jointly Gaussian centred X, Y.
  const double var_x = l2_norm_sq(h1), var_y = l2_norm_sq(h2), cov = l2_inner(h1, h2);
  EXPECT_NEAR(cov, 0.25, 1e-12);
  EXPECT_LT(std::abs(c - cov) / std::sqrt((var_x * var_y + cov * cov) / n), 3.0);
}

TEST(ProcessCovariance, RejectsPointsOutsideQ) {
  const auto g = make_grid(1, 1, 4, 4);
  const auto one = GridFunction::constant(g, 1);
  EXPECT_THROW(empirical_process_covariance(one, one, {1.5, 1}, {1, 1}, 10, RngStream{}), Error);
}

TEST(ProcessCovariance, WorkerCountDoesNotChangeResult) {
  const auto g = make_grid(1, 1, 16, 16);
  const auto h = sample_expression("1 + s*t", g);
  const double a = empirical_process_covariance(h, h, {0.5, 1}, {1, 0.5}, 1000, RngStream{kSeed, 13}, 1);
  const double b = empirical_process_covariance(h, h, {0.5, 1}, {1, 0.5}, 1000, RngStream{kSeed, 13}, 4);
  EXPECT_EQ(a, b);
}
