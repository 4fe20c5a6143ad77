#include "presets.hpp"

#include <algorithm>

#include "error.hpp"
#include "expression.hpp"

namespace yf {
namespace {

struct Preset {
  std::string_view name;
  std::vector<std::string> expressions;
};

const std::vector<Preset>& presets() {
  static const std::vector<Preset> kPresets = {
      {"one", {"1"}},
      {"H4",
       {"sin(s)^2*cos(t)", "sin(s)*cos(s)*cos(t)", "sin(s)*sin(t)*cos(t)", "sin(s)*cos(t)^2"}},
      {"trig-pair",
       {"sin(2*pi*s/T)*sin(2*pi*t/T) - cos(2*pi*s/T)*cos(2*pi*t/T)",
        "sin(2*pi*s/T)*cos(2*pi*t/T) + cos(2*pi*s/T)*sin(2*pi*t/T)"}},
      {"k1k2-pair",
       {"4*sin(2*pi*s/T)^2*sin(2*pi*t/T)^2", "4*cos(2*pi*s/T)^2*cos(2*pi*t/T)^2",
        "sin(4*pi*s/T)*sin(4*pi*t/T)"}},
  };
  return kPresets;
}

const Preset* find(std::string_view name) {
  const auto& all = presets();
  auto it = std::find_if(all.begin(), all.end(), [&](const Preset& p) { return p.name == name; });
  return it == all.end() ? nullptr : &*it;
}

}  // namespace

bool is_preset(std::string_view name) { return find(name) != nullptr; }

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& p : presets()) names.emplace_back(p.name);
  return names;
}

std::vector<std::string> preset_expressions(std::string_view name) {
  const Preset* p = find(name);
  if (!p) fail(ErrorCode::InvalidArgument, "unknown kernel preset '" + std::string(name) + "'");
  return p->expressions;
}

std::vector<GridFunction> preset_kernels(std::string_view name, const GridSpec& grid) {
  std::vector<GridFunction> out;
  for (const auto& expr : preset_expressions(name)) out.push_back(sample_expression(expr, grid));
  return out;
}

std::vector<GridFunction> resolve_kernels(std::string_view spec, const GridSpec& grid) {
  if (is_preset(spec)) return preset_kernels(spec, grid);
  std::vector<GridFunction> out;
  out.push_back(sample_expression(spec, grid));
  return out;
}

}  // namespace yf
