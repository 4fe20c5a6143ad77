#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include <Eigen/Dense>

#include "grid.hpp"
#include "rng.hpp"

namespace yf {

// Sheets are processed in fixed blocks so that accumulation order never
// depends on how many workers run.
inline constexpr std::size_t kSheetBlock = 128;

inline std::size_t block_count(std::size_t n) { return (n + kSheetBlock - 1) / kSheetBlock; }

// Runs fn(block) for block in [0, blocks) on up to `workers` threads. fn must
// only write to per-block state.
void parallel_blocks(std::size_t blocks, int workers, const std::function<void(std::size_t)>& fn);

// Projects Brownian sheets onto a fixed set of directions w_1..w_m: for each
// sheet i the vector (<w_1, x_i>, ..., <w_m, x_i>) = (sum_c w_k[c] dx_i[c])_k.
class SheetProjector {
 public:
  SheetProjector(const GridSpec& grid, std::span<const GridFunction> directions);

  std::size_t directions() const { return static_cast<std::size_t>(weights_.cols()); }
  const GridSpec& grid() const { return grid_; }

  // Projections for sheets [first, first+count) of `rng`, as an
  // m x count matrix.
  Eigen::MatrixXd project(const RngStream& rng, std::size_t first, std::size_t count) const;

 private:
  GridSpec grid_;
  Eigen::MatrixXd weights_;  // cells x m
};

// Fills `out` (cells x count) with the increments of sheets [first, first+count).
void sheet_increment_block(const GridSpec& grid, const RngStream& rng, std::size_t first,
                           std::size_t count, Eigen::MatrixXd& out);

}  // namespace yf
