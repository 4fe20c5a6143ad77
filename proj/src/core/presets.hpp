#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "grid.hpp"

namespace yf {

// Named kernel families:
//   "one"        h = 1
//   "H4"         sin^2 s cos t, sin s cos s cos t, sin s sin t cos t, sin s cos^2 t
//                (their combination is sqrt(2) sin s cos t)
//   "trig-pair"  sin a sin b - cos a cos b, sin a cos b + cos a sin b with
//                a = 2 pi s/T, b = 2 pi t/T (their combination is 1)
//   "k1k2-pair"  k1 = 4 sin^2 a sin^2 b, k2 = 4 cos^2 a cos^2 b,
//                h = sin(2a) sin(2b), listed in that order; k1 k2 = h^2
bool is_preset(std::string_view name);
std::vector<std::string> preset_names();
std::vector<std::string> preset_expressions(std::string_view name);
std::vector<GridFunction> preset_kernels(std::string_view name, const GridSpec& grid);

// A preset name expands to its family, anything else is parsed as one
// expression.
std::vector<GridFunction> resolve_kernels(std::string_view spec, const GridSpec& grid);

}  // namespace yf
