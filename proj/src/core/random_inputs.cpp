#include "random_inputs.hpp"

#include <cmath>
#include <numbers>

namespace yf {

double InputSampler::uniform(double lo, double hi) {
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

std::size_t InputSampler::index(std::size_t count) {
  const auto k = static_cast<std::size_t>(uniform(0.0, static_cast<double>(count)));
  return k < count ? k : count - 1;
}

GridFunction random_atom(const GridSpec& grid, InputSampler& in) {
  double a[5];
  for (double& c : a) c = in.uniform(-1.5, 1.5);
  const double S = grid.S(), T = grid.T();
  return sample_function(
      [&](double s, double t) {
        const double x = s / S, y = t / T;
        return a[0] + a[1] * x + a[2] * y +
               a[3] * std::sin(std::numbers::pi * x) * std::cos(std::numbers::pi * y) +
               a[4] * x * y;
      },
      grid);
}

CylinderFunctional random_functional(const GridSpec& grid, std::size_t max_atoms,
                                     InputSampler& in) {
  const std::size_t atoms = 1 + in.index(max_atoms == 0 ? 1 : max_atoms);
  DiscreteMeasure m(grid);
  for (std::size_t k = 0; k < atoms; ++k) {
    const double r = std::sqrt(in.uniform(0.0, 1.0));
    const double theta = in.uniform(0.0, 2.0 * std::numbers::pi);
    m.add(std::polar(r, theta), random_atom(grid, in));
  }
  return CylinderFunctional(std::move(m));
}

GridFunction random_kernel(const GridSpec& grid, InputSampler& in) {
  double b[4];
  for (double& c : b) c = in.uniform(-1.0, 1.0);
  const double S = grid.S(), T = grid.T();
  return sample_function(
      [&](double s, double t) {
        const double x = s / S, y = t / T;
        return b[0] + b[1] * std::sin(std::numbers::pi * x) +
               b[2] * std::cos(std::numbers::pi * y) + b[3] * x * y;
      },
      grid);
}

double random_q(InputSampler& in) {
  const double mag = in.uniform(0.5, 5.0);
  return in.uniform(0.0, 1.0) < 0.5 ? -mag : mag;
}

std::vector<SheetPath> sample_paths(const GridSpec& grid, const RngStream& rng, std::size_t count) {
  std::vector<SheetPath> out;
  out.reserve(count + 1);
  out.push_back(SheetPath::zero(grid));
  for (std::size_t k = 0; k < count; ++k) out.push_back(sample_sheet(grid, rng, k));
  return out;
}

}  // namespace yf
