#include "algebra.hpp"

#include <cmath>
#include <numbers>

#include "error.hpp"

namespace yf {
namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

// exp{i theta} from the real phase.
complex unit_phase(double theta) { return {std::cos(theta), std::sin(theta)}; }

void require_nonzero_q(double q, const char* op) {
  if (q == 0.0 || !std::isfinite(q)) {
    fail(ErrorCode::InvalidArgument, std::string(op) + ": q must be a nonzero real");
  }
}

// (u + v)/sqrt2, the pair map of the convolution measure.
GridFunction rotated_sum(const GridFunction& u, const GridFunction& v) {
  std::vector<double> out(u.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = (u[k] + v[k]) * kInvSqrt2;
  return GridFunction(u.grid(), std::move(out));
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(GridSpec grid, std::vector<Atom> atoms)
    : grid_(grid), atoms_(std::move(atoms)) {
  for (const auto& a : atoms_) {
    require_same_grid(grid_, a.u.grid(), "DiscreteMeasure");
    if (!std::isfinite(a.weight.real()) || !std::isfinite(a.weight.imag())) {
      fail(ErrorCode::InvalidArgument, "measure weight is not finite");
    }
  }
}

void DiscreteMeasure::add(complex weight, GridFunction u) {
  require_same_grid(grid_, u.grid(), "DiscreteMeasure::add");
  atoms_.push_back(Atom{weight, std::move(u)});
}

double DiscreteMeasure::total_variation() const {
  double tv = 0.0;
  for (const auto& a : atoms_) tv += std::abs(a.weight);
  return tv;
}

complex DiscreteMeasure::total_mass() const {
  complex m = 0.0;
  for (const auto& a : atoms_) m += a.weight;
  return m;
}

CylinderFunctional CylinderFunctional::exponential(GridFunction u, complex weight) {
  DiscreteMeasure m(u.grid());
  m.add(weight, std::move(u));
  return CylinderFunctional(std::move(m));
}

void validate(const FeynmanParameter& p) {
  if (const auto* r = std::get_if<RealLambda>(&p)) {
    if (!(r->lambda > 0.0) || !std::isfinite(r->lambda)) {
      fail(ErrorCode::InvalidArgument, "lambda must be a positive real");
    }
  } else {
    require_nonzero_q(std::get<FeynmanQ>(p).q, "FeynmanQ");
  }
}

complex as_complex_lambda(const FeynmanParameter& p) {
  validate(p);
  if (const auto* r = std::get_if<RealLambda>(&p)) return {r->lambda, 0.0};
  return {0.0, -std::get<FeynmanQ>(p).q};
}

complex evaluate(const CylinderFunctional& F, const SheetPath& y) {
  require_same_grid(F.grid(), y.grid(), "evaluate");
  complex acc = 0.0;
  for (const auto& a : F.atoms()) acc += a.weight * unit_phase(pwz_integral(a.u, y));
  return acc;
}

CylinderFunctional operator+(const CylinderFunctional& F, const CylinderFunctional& G) {
  require_same_grid(F.grid(), G.grid(), "functional sum");
  std::vector<Atom> atoms(F.atoms().begin(), F.atoms().end());
  atoms.insert(atoms.end(), G.atoms().begin(), G.atoms().end());
  return CylinderFunctional(DiscreteMeasure(F.grid(), std::move(atoms)));
}

CylinderFunctional gfyft(const CylinderFunctional& F, const GridFunction& h, double q) {
  require_nonzero_q(q, "gfyft");
  require_same_grid(F.grid(), h.grid(), "gfyft");
  DiscreteMeasure out(F.grid());
  for (const auto& a : F.atoms()) {
    const double phase = -weighted_norm_sq(a.u, h) / (2.0 * q);
    out.add(a.weight * unit_phase(phase), a.u);
  }
  return CylinderFunctional(std::move(out));
}

CylinderFunctional gcp(const CylinderFunctional& F, const CylinderFunctional& G,
                       const GridFunction& k1, const GridFunction& k2, double q) {
  require_nonzero_q(q, "gcp");
  const GridSpec& grid = F.grid();
  require_same_grid(grid, G.grid(), "gcp");
  require_same_grid(grid, k1.grid(), "gcp");
  require_same_grid(grid, k2.grid(), "gcp");
  const double area = grid.cell_area();
  DiscreteMeasure out(grid);
  for (const auto& a : F.atoms()) {
    for (const auto& b : G.atoms()) {
      double norm_sq = 0.0;
      for (std::size_t k = 0; k < grid.cells(); ++k) {
        const double d = a.u[k] * k1[k] - b.u[k] * k2[k];
        norm_sq += d * d;
      }
      const double phase = -norm_sq * area / (4.0 * q);
      out.add(a.weight * b.weight * unit_phase(phase), rotated_sum(a.u, b.u));
    }
  }
  return CylinderFunctional(std::move(out));
}

CylinderFunctional scaled_product(const CylinderFunctional& F, const CylinderFunctional& G) {
  require_same_grid(F.grid(), G.grid(), "scaled_product");
  DiscreteMeasure out(F.grid());
  for (const auto& a : F.atoms()) {
    for (const auto& b : G.atoms()) out.add(a.weight * b.weight, rotated_sum(a.u, b.u));
  }
  return CylinderFunctional(std::move(out));
}

CylinderFunctional reflect(const CylinderFunctional& F) {
  DiscreteMeasure out(F.grid());
  for (const auto& a : F.atoms()) out.add(a.weight, -a.u);
  return CylinderFunctional(std::move(out));
}

CylinderFunctional compact(const CylinderFunctional& F, double tol) {
  std::vector<Atom> merged;
  for (const auto& a : F.atoms()) {
    bool absorbed = false;
    for (auto& m : merged) {
      if (max_abs_diff(m.u, a.u) <= tol) {
        m.weight += a.weight;
        absorbed = true;
        break;
      }
    }
    if (!absorbed) merged.push_back(a);
  }
  return CylinderFunctional(DiscreteMeasure(F.grid(), std::move(merged)));
}

CylinderFunctional rotate_weights(const CylinderFunctional& F, double phase) {
  DiscreteMeasure out(F.grid());
  const complex r = unit_phase(phase);
  for (const auto& a : F.atoms()) out.add(a.weight * r, a.u);
  return CylinderFunctional(std::move(out));
}

}  // namespace yf
