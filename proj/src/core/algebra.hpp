#pragma once

#include <complex>
#include <span>
#include <variant>
#include <vector>

#include "grid.hpp"
#include "sheet.hpp"

namespace yf {

using complex = std::complex<double>;

struct Atom {
  complex weight;
  GridFunction u;
};

// A finitely supported complex measure on L2(Q): sum_j c_j delta_{u_j}.
// The empty list is the zero measure.
class DiscreteMeasure {
 public:
  explicit DiscreteMeasure(GridSpec grid) : grid_(grid) {}
  DiscreteMeasure(GridSpec grid, std::vector<Atom> atoms);

  const GridSpec& grid() const { return grid_; }
  std::span<const Atom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }

  void add(complex weight, GridFunction u);

  double total_variation() const;
  complex total_mass() const;

 private:
  GridSpec grid_;
  std::vector<Atom> atoms_;
};

// F(x) = sum_j c_j exp{i <u_j, x>}, an element of the Fresnel-type algebra
// S(L2(Q)) with a finitely supported measure.
class CylinderFunctional {
 public:
  explicit CylinderFunctional(DiscreteMeasure measure) : measure_(std::move(measure)) {}

  // Unit mass at u.
  static CylinderFunctional exponential(GridFunction u, complex weight = 1.0);

  const DiscreteMeasure& measure() const { return measure_; }
  const GridSpec& grid() const { return measure_.grid(); }
  std::span<const Atom> atoms() const { return measure_.atoms(); }
  std::size_t size() const { return measure_.size(); }
  double total_variation() const { return measure_.total_variation(); }

 private:
  DiscreteMeasure measure_;
};

struct RealLambda {
  double lambda;
};
struct FeynmanQ {
  double q;  // the integral is the limit lambda -> -iq
};
using FeynmanParameter = std::variant<RealLambda, FeynmanQ>;

// Throws invalid-argument when lambda <= 0 or q == 0.
void validate(const FeynmanParameter& p);
// lambda for RealLambda, -iq for FeynmanQ.
complex as_complex_lambda(const FeynmanParameter& p);

complex evaluate(const CylinderFunctional& F, const SheetPath& y);

// Merge of the two atom lists: evaluate(F + G, y) = evaluate(F, y) + evaluate(G, y).
CylinderFunctional operator+(const CylinderFunctional& F, const CylinderFunctional& G);

// Generalized Fourier-Yeh-Feynman transform T_{q,h}: same atoms, weights
// multiplied by exp{-(i/2q) ||u_j h||^2}.
CylinderFunctional gfyft(const CylinderFunctional& F, const GridFunction& h, double q);

// Generalized convolution product (F*G)_q^{(k1,k2)}: atoms (u_j + v_k)/sqrt2,
// weights c_j d_k exp{-(i/4q) ||u_j k1 - v_k k2||^2}.
CylinderFunctional gcp(const CylinderFunctional& F, const CylinderFunctional& G,
                       const GridFunction& k1, const GridFunction& k2, double q);

// H(y) = F(y/sqrt2) G(y/sqrt2).
CylinderFunctional scaled_product(const CylinderFunctional& F, const CylinderFunctional& G);

// F(-x): atoms negated.
CylinderFunctional reflect(const CylinderFunctional& F);

// Merges atoms whose grids agree cellwise within `tol`, summing weights.
CylinderFunctional compact(const CylinderFunctional& F, double tol = 1e-12);

// Multiplies every weight by exp{i * phase}.
CylinderFunctional rotate_weights(const CylinderFunctional& F, double phase);

}  // namespace yf
