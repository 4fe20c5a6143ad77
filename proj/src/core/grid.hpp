#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace yf {

// Uniform partition of Q = [0,S] x [0,T] into ns x nt cells. Cell (i,j) has
// i along s and j along t; flat index is j*ns + i.
class GridSpec {
 public:
  GridSpec(double S, double T, int ns, int nt);

  double S() const { return S_; }
  double T() const { return T_; }
  int ns() const { return ns_; }
  int nt() const { return nt_; }
  std::size_t cells() const { return static_cast<std::size_t>(ns_) * nt_; }
  double ds() const { return S_ / ns_; }
  double dt() const { return T_ / nt_; }
  double cell_area() const { return ds() * dt(); }

  double s_mid(int i) const { return (i + 0.5) * ds(); }
  double t_mid(int j) const { return (j + 0.5) * dt(); }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * ns_ + i;
  }

  bool contains(double s, double t) const {
    return s >= 0.0 && s <= S_ && t >= 0.0 && t <= T_;
  }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  double S_;
  double T_;
  int ns_;
  int nt_;
};

GridSpec make_grid(double S, double T, int ns, int nt);

// A real function on Q stored by its values at cell midpoints.
class GridFunction {
 public:
  GridFunction(GridSpec grid, std::vector<double> values);

  static GridFunction constant(const GridSpec& grid, double value);

  const GridSpec& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t k) const { return values_[k]; }
  std::size_t size() const { return values_.size(); }

  GridFunction scaled(double factor) const;
  GridFunction operator-() const { return scaled(-1.0); }

 private:
  GridSpec grid_;
  std::vector<double> values_;
};

GridFunction sample_function(const std::function<double(double, double)>& fn,
                             const GridSpec& grid);

double l2_inner(const GridFunction& u, const GridFunction& v);
double l2_norm_sq(const GridFunction& u);

// ||u h||_2^2 without materialising the product.
double weighted_norm_sq(const GridFunction& u, const GridFunction& h);

GridFunction pointwise_mul(const GridFunction& u, const GridFunction& h);
GridFunction add(const GridFunction& u, const GridFunction& v);

// s(H): the cellwise nonnegative root of h_1^2 + ... + h_n^2.
GridFunction combine_kernels(std::span<const GridFunction> kernels);
GridFunction combine_kernels(std::initializer_list<GridFunction> kernels);

// Largest cellwise |a - b|.
double max_abs_diff(const GridFunction& a, const GridFunction& b);

// Number of midpoints where |h| is zero; the a.e.-nonzero precondition on
// kernels is only approximated on a finite grid, so callers warn on this.
std::size_t count_zero_cells(const GridFunction& h);

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* op);

}  // namespace yf
