#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "grid.hpp"
#include "rng.hpp"

namespace yf {

// A continuous path on Q vanishing on the lower-left edges, stored as one
// increment per cell. x(s,t) is the sum of the increments of the cells whose
// midpoints lie in [0,s] x [0,t].
class SheetPath {
 public:
  SheetPath(GridSpec grid, std::vector<double> increments);

  static SheetPath zero(const GridSpec& grid);

  const GridSpec& grid() const { return grid_; }
  std::span<const double> increments() const { return increments_; }

  double value_at(double s, double t) const;

  // Values at the (ns+1) x (nt+1) grid nodes, s fastest; row 0 and column 0
  // are zero.
  std::vector<double> node_values() const;

 private:
  GridSpec grid_;
  std::vector<double> increments_;
};

// Discrete Yeh-Wiener measure: independent centred Gaussian increments with
// variance equal to the cell area.
SheetPath sample_sheet(const GridSpec& grid, const RngStream& rng, std::uint64_t index = 0);

double pwz_integral(const GridFunction& v, const SheetPath& x);

// Y_h(x; s, t) = <chi_[0,s]x[0,t] h, x>, represented by increments h * dx.
SheetPath gaussian_path(const GridFunction& h, const SheetPath& x);

SheetPath scale_path(const SheetPath& y, double rho);

// The window function chi_[0,s]x[0,t] * h on the grid.
GridFunction windowed(const GridFunction& h, double s, double t);

struct Point {
  double s;
  double t;
};

// Sample mean of Y_h1(x;p) * Y_h2(x;p') over n sheets of `rng`.
double empirical_process_covariance(const GridFunction& h1, const GridFunction& h2, Point p,
                                    Point p_prime, std::size_t n, const RngStream& rng,
                                    int workers = 1);

// <v_k, x_i> for sheets i in [0,n) of `rng`; row-major n x vs.size().
std::vector<double> pwz_samples(std::span<const GridFunction> vs, std::size_t n,
                                const RngStream& rng, int workers = 1);

}  // namespace yf
