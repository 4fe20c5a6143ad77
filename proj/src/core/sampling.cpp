#include "sampling.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace yf {

void parallel_blocks(std::size_t blocks, int workers, const std::function<void(std::size_t)>& fn) {
  const std::size_t threads =
      std::min<std::size_t>(blocks, static_cast<std::size_t>(std::max(1, workers)));
  if (threads <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) fn(b);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= blocks) return;
      try {
        fn(b);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(blocks);
        return;
      }
    }
  };

  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (std::size_t k = 0; k < threads; ++k) pool.emplace_back(worker);
  pool.clear();
  if (error) std::rethrow_exception(error);
}

void sheet_increment_block(const GridSpec& grid, const RngStream& rng, std::size_t first,
                           std::size_t count, Eigen::MatrixXd& out) {
  const auto cells = static_cast<Eigen::Index>(grid.cells());
  out.resize(cells, static_cast<Eigen::Index>(count));
  const double sigma = std::sqrt(grid.cell_area());
  for (std::size_t k = 0; k < count; ++k) {
    double* col = out.col(static_cast<Eigen::Index>(k)).data();
    fill_standard_normals(rng, first + k, std::span<double>(col, grid.cells()));
    for (Eigen::Index c = 0; c < cells; ++c) col[c] *= sigma;
  }
}

SheetProjector::SheetProjector(const GridSpec& grid, std::span<const GridFunction> directions)
    : grid_(grid),
      weights_(static_cast<Eigen::Index>(grid.cells()),
               static_cast<Eigen::Index>(directions.size())) {
  for (std::size_t k = 0; k < directions.size(); ++k) {
    require_same_grid(grid, directions[k].grid(), "SheetProjector");
    const auto v = directions[k].values();
    std::copy(v.begin(), v.end(), weights_.col(static_cast<Eigen::Index>(k)).data());
  }
}

Eigen::MatrixXd SheetProjector::project(const RngStream& rng, std::size_t first,
                                        std::size_t count) const {
  Eigen::MatrixXd increments;
  sheet_increment_block(grid_, rng, first, count, increments);
  Eigen::MatrixXd out(weights_.cols(), static_cast<Eigen::Index>(count));
  out.noalias() = weights_.transpose() * increments;
  return out;
}

}  // namespace yf
