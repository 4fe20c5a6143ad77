#include "sheet.hpp"

#include <cmath>

#include "error.hpp"
#include "sampling.hpp"

namespace yf {

SheetPath::SheetPath(GridSpec grid, std::vector<double> increments)
    : grid_(grid), increments_(std::move(increments)) {
  if (increments_.size() != grid_.cells()) {
    fail(ErrorCode::ShapeError, "sheet path needs one increment per cell");
  }
}

SheetPath SheetPath::zero(const GridSpec& grid) {
  return SheetPath(grid, std::vector<double>(grid.cells(), 0.0));
}

double SheetPath::value_at(double s, double t) const {
  if (!grid_.contains(s, t)) fail(ErrorCode::InvalidArgument, "point outside Q");
  double acc = 0.0;
  for (int j = 0; j < grid_.nt() && grid_.t_mid(j) <= t; ++j) {
    for (int i = 0; i < grid_.ns() && grid_.s_mid(i) <= s; ++i) {
      acc += increments_[grid_.index(i, j)];
    }
  }
  return acc;
}

std::vector<double> SheetPath::node_values() const {
  const int ns = grid_.ns();
  const int nt = grid_.nt();
  const std::size_t stride = static_cast<std::size_t>(ns) + 1;
  std::vector<double> nodes(stride * (nt + 1), 0.0);
  for (int j = 0; j < nt; ++j) {
    double row = 0.0;
    for (int i = 0; i < ns; ++i) {
      row += increments_[grid_.index(i, j)];
      nodes[(j + 1) * stride + i + 1] = nodes[j * stride + i + 1] + row;
    }
  }
  return nodes;
}

SheetPath sample_sheet(const GridSpec& grid, const RngStream& rng, std::uint64_t index) {
  std::vector<double> inc(grid.cells());
  fill_standard_normals(rng, index, inc);
  const double sigma = std::sqrt(grid.cell_area());
  for (double& v : inc) v *= sigma;
  return SheetPath(grid, std::move(inc));
}

double pwz_integral(const GridFunction& v, const SheetPath& x) {
  require_same_grid(v.grid(), x.grid(), "pwz_integral");
  const auto dx = x.increments();
  double acc = 0.0;
  for (std::size_t k = 0; k < dx.size(); ++k) acc += v[k] * dx[k];
  return acc;
}

SheetPath gaussian_path(const GridFunction& h, const SheetPath& x) {
  require_same_grid(h.grid(), x.grid(), "gaussian_path");
  const auto dx = x.increments();
  std::vector<double> inc(dx.size());
  for (std::size_t k = 0; k < dx.size(); ++k) inc[k] = h[k] * dx[k];
  return SheetPath(x.grid(), std::move(inc));
}

SheetPath scale_path(const SheetPath& y, double rho) {
  const auto dx = y.increments();
  std::vector<double> inc(dx.size());
  for (std::size_t k = 0; k < dx.size(); ++k) inc[k] = rho * dx[k];
  return SheetPath(y.grid(), std::move(inc));
}

GridFunction windowed(const GridFunction& h, double s, double t) {
  const GridSpec& g = h.grid();
  if (!g.contains(s, t)) fail(ErrorCode::InvalidArgument, "point outside Q");
  std::vector<double> out(g.cells(), 0.0);
  for (int j = 0; j < g.nt(); ++j) {
    for (int i = 0; i < g.ns(); ++i) {
      if (g.s_mid(i) <= s && g.t_mid(j) <= t) out[g.index(i, j)] = h[g.index(i, j)];
    }
  }
  return GridFunction(g, std::move(out));
}

std::vector<double> pwz_samples(std::span<const GridFunction> vs, std::size_t n,
                                const RngStream& rng, int workers) {
  if (vs.empty()) return {};
  const GridSpec& grid = vs.front().grid();
  SheetProjector projector(grid, vs);
  const std::size_t m = vs.size();
  std::vector<double> out(n * m);
  parallel_blocks(block_count(n), workers, [&](std::size_t b) {
    const std::size_t first = b * kSheetBlock;
    const std::size_t count = std::min(kSheetBlock, n - first);
    const Eigen::MatrixXd proj = projector.project(rng, first, count);
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t k = 0; k < m; ++k) {
        out[(first + i) * m + k] =
            proj(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i));
      }
    }
  });
  return out;
}

double empirical_process_covariance(const GridFunction& h1, const GridFunction& h2, Point p,
                                    Point p_prime, std::size_t n, const RngStream& rng,
                                    int workers) {
  require_same_grid(h1.grid(), h2.grid(), "empirical_process_covariance");
  if (n == 0) fail(ErrorCode::InvalidArgument, "empirical_process_covariance: n must be positive");
  const std::vector<GridFunction> windows = {windowed(h1, p.s, p.t),
                                             windowed(h2, p_prime.s, p_prime.t)};
  const std::vector<double> samples = pwz_samples(windows, n, rng, workers);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += samples[2 * i] * samples[2 * i + 1];
  return acc / static_cast<double>(n);
}

}  // namespace yf
