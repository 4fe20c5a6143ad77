#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "algebra.hpp"
#include "rng.hpp"
#include "sheet.hpp"

namespace yf {

// Deterministic source of random test inputs (functionals, kernels, q).
// Uniforms are taken straight from the 53 high bits of mt19937_64 so the
// draws do not depend on the standard library's distribution classes.
class InputSampler {
 public:
  explicit InputSampler(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi);
  std::size_t index(std::size_t count);  // uniform in [0, count)

 private:
  std::mt19937_64 engine_;
};

// Atom a0 + a1 s/S + a2 t/T + a3 sin(pi s/S) cos(pi t/T) + a4 (s/S)(t/T),
// coefficients uniform in [-1.5, 1.5].
GridFunction random_atom(const GridSpec& grid, InputSampler& in);

// 1..max_atoms atoms with weights uniform in the closed unit disk.
CylinderFunctional random_functional(const GridSpec& grid, std::size_t max_atoms,
                                     InputSampler& in);

// b0 + b1 sin(pi s/S) + b2 cos(pi t/T) + b3 (s/S)(t/T), coefficients uniform
// in [-1, 1].
GridFunction random_kernel(const GridSpec& grid, InputSampler& in);

// Magnitude uniform in [0.5, 5], random sign.
double random_q(InputSampler& in);

// The zero path followed by `count` sheets of `rng`.
std::vector<SheetPath> sample_paths(const GridSpec& grid, const RngStream& rng, std::size_t count);

}  // namespace yf
