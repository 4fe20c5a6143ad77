#include "grid.hpp"

#include <cmath>
#include <sstream>

#include "error.hpp"

namespace yf {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::ShapeError: return "shape-error";
    case ErrorCode::InvalidFunction: return "invalid-function";
    case ErrorCode::DegenerateParameter: return "degenerate-parameter";
    case ErrorCode::HypothesisViolated: return "hypothesis-violated";
    case ErrorCode::ParseError: return "parse-error";
    case ErrorCode::IoError: return "io-error";
  }
  return "unknown";
}

GridSpec::GridSpec(double S, double T, int ns, int nt)
    : S_(S), T_(T), ns_(ns), nt_(nt) {
  if (!(S > 0.0) || !(T > 0.0) || !std::isfinite(S) || !std::isfinite(T)) {
    fail(ErrorCode::InvalidArgument, "grid extents must be positive and finite");
  }
  if (ns < 1 || nt < 1) {
    fail(ErrorCode::InvalidArgument, "grid needs at least one cell per axis");
  }
}

GridSpec make_grid(double S, double T, int ns, int nt) {
  return GridSpec(S, T, ns, nt);
}

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* op) {
  if (!(a == b)) {
    fail(ErrorCode::ShapeError, std::string(op) + ": operands live on different grids");
  }
}

GridFunction::GridFunction(GridSpec grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.cells()) {
    std::ostringstream msg;
    msg << "grid function needs " << grid_.cells() << " values, got " << values_.size();
    fail(ErrorCode::ShapeError, msg.str());
  }
  for (double v : values_) {
    if (!std::isfinite(v)) fail(ErrorCode::InvalidFunction, "grid function value is not finite");
  }
}

GridFunction GridFunction::constant(const GridSpec& grid, double value) {
  return GridFunction(grid, std::vector<double>(grid.cells(), value));
}

GridFunction GridFunction::scaled(double factor) const {
  std::vector<double> out(values_.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = factor * values_[k];
  return GridFunction(grid_, std::move(out));
}

GridFunction sample_function(const std::function<double(double, double)>& fn,
                             const GridSpec& grid) {
  std::vector<double> values(grid.cells());
  for (int j = 0; j < grid.nt(); ++j) {
    for (int i = 0; i < grid.ns(); ++i) {
      const double v = fn(grid.s_mid(i), grid.t_mid(j));
      if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "function is not finite at (" << grid.s_mid(i) << ", " << grid.t_mid(j) << ")";
        fail(ErrorCode::InvalidFunction, msg.str());
      }
      values[grid.index(i, j)] = v;
    }
  }
  return GridFunction(grid, std::move(values));
}

double l2_inner(const GridFunction& u, const GridFunction& v) {
  require_same_grid(u.grid(), v.grid(), "l2_inner");
  double acc = 0.0;
  const auto a = u.values();
  const auto b = v.values();
  for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * b[k];
  return acc * u.grid().cell_area();
}

double l2_norm_sq(const GridFunction& u) { return l2_inner(u, u); }

double weighted_norm_sq(const GridFunction& u, const GridFunction& h) {
  require_same_grid(u.grid(), h.grid(), "weighted_norm_sq");
  double acc = 0.0;
  const auto a = u.values();
  const auto b = h.values();
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double p = a[k] * b[k];
    acc += p * p;
  }
  return acc * u.grid().cell_area();
}

GridFunction pointwise_mul(const GridFunction& u, const GridFunction& h) {
  require_same_grid(u.grid(), h.grid(), "pointwise_mul");
  std::vector<double> out(u.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = u[k] * h[k];
  return GridFunction(u.grid(), std::move(out));
}

GridFunction add(const GridFunction& u, const GridFunction& v) {
  require_same_grid(u.grid(), v.grid(), "add");
  std::vector<double> out(u.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = u[k] + v[k];
  return GridFunction(u.grid(), std::move(out));
}

GridFunction combine_kernels(std::span<const GridFunction> kernels) {
  if (kernels.empty()) fail(ErrorCode::InvalidArgument, "combine_kernels: empty kernel list");
  const GridSpec& grid = kernels.front().grid();
  std::vector<double> sumsq(grid.cells(), 0.0);
  for (const auto& h : kernels) {
    require_same_grid(grid, h.grid(), "combine_kernels");
    for (std::size_t k = 0; k < sumsq.size(); ++k) sumsq[k] += h[k] * h[k];
  }
  for (double& v : sumsq) v = std::sqrt(v);
  return GridFunction(grid, std::move(sumsq));
}

GridFunction combine_kernels(std::initializer_list<GridFunction> kernels) {
  return combine_kernels(std::span<const GridFunction>(kernels.begin(), kernels.size()));
}

double max_abs_diff(const GridFunction& a, const GridFunction& b) {
  require_same_grid(a.grid(), b.grid(), "max_abs_diff");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

std::size_t count_zero_cells(const GridFunction& h) {
  std::size_t zeros = 0;
  for (double v : h.values()) zeros += (v == 0.0);
  return zeros;
}

}  // namespace yf
