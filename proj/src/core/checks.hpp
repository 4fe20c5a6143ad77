#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "feynman.hpp"

namespace yf {

enum class CheckMode { Exact, Statistical };

const char* to_string(CheckMode mode);

// Outcome of one identity check. In exact mode max_abs_diff is the largest
// |lhs - rhs|; in statistical mode it is the largest componentwise z-score
// |lhs - rhs| / sigma, compared against a threshold of 3.
struct CheckReport {
  std::string name;
  CheckMode mode = CheckMode::Exact;
  std::vector<complex> lhs;
  std::vector<complex> rhs;
  double max_abs_diff = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::vector<std::pair<std::string, std::string>> metadata;
};

struct CheckOptions {
  // Added to the phase of the left-hand side; nonzero values are negative
  // controls and must make exact checks fail.
  double phase_perturbation = 0.0;
  // Shifts the closed-form oracle by this many standard errors in both
  // components (negative control for statistical checks).
  double oracle_offset_sigmas = 0.0;
  int workers = 1;
};

inline constexpr double kFubiniTolerance = 1e-12;
inline constexpr double kInverseTolerance = 1e-14;
inline constexpr double kExactTolerance = 1e-10;
inline constexpr double kHypothesisTolerance = 1e-10;
inline constexpr double kSigmaThreshold = 3.0;

// Iterated integral over H against the single integral under s(H).
CheckReport check_fubini(const CylinderFunctional& F, std::span<const GridFunction> H, double q,
                         const CheckOptions& opts = {});

// Weights of T_{-q,h} T_{q,h} F against those of F.
CheckReport check_inverse(const CylinderFunctional& F, const GridFunction& h, double q,
                          const CheckOptions& opts = {});

// T_{q_n,h} ... T_{q_1,h} F against T_{alpha_n,h} F at each y.
CheckReport check_transform_q_composition(const CylinderFunctional& F, const GridFunction& h,
                                          std::span<const double> qs,
                                          std::span<const SheetPath> ys,
                                          const CheckOptions& opts = {});

// T_{q,h_n} ... T_{q,h_1} F against T_{q,s(H)} F at each y.
CheckReport check_transform_kernel_composition(const CylinderFunctional& F,
                                               std::span<const GridFunction> H, double q,
                                               std::span<const SheetPath> ys,
                                               const CheckOptions& opts = {});

// Families H1, H2 with s(H1) = s(H2): the chain from the fully iterated form
// (H1 at q1, then H2 at q2) down to T_{q1 q2/(q1+q2), s(H1)} F.
CheckReport check_transform_mixed(const CylinderFunctional& F, std::span<const GridFunction> H1,
                                  std::span<const GridFunction> H2, double q1, double q2,
                                  std::span<const SheetPath> ys, const CheckOptions& opts = {});

// T_{q,h}((F*G)_q^{(k1,k2)})(y) against
// T_{q,s(h,k1)/sqrt2}(F)(y/sqrt2) T_{q,s(h,k2)/sqrt2}(G)(y/sqrt2); needs h^2 = k1 k2.
CheckReport check_relationship_I(const CylinderFunctional& F, const CylinderFunctional& G,
                                 const GridFunction& h, const GridFunction& k1,
                                 const GridFunction& k2, double q, std::span<const SheetPath> ys,
                                 const CheckOptions& opts = {});

// (T_{q,s(h,k1)/sqrt2} F * T_{q,s(h,k2)/sqrt2} G)_{-q}^{(k1,k2)}(y) against
// T_{q,h}(F(./sqrt2) G(./sqrt2))(y); needs h^2 = k1 k2.
CheckReport check_relationship_II(const CylinderFunctional& F, const CylinderFunctional& G,
                                  const GridFunction& h, const GridFunction& k1,
                                  const GridFunction& k2, double q, std::span<const SheetPath> ys,
                                  const CheckOptions& opts = {});

// Three-line chain for a kernel family H with s(H)^2 = k1 k2.
CheckReport check_relationship_II_extended(const CylinderFunctional& F,
                                           const CylinderFunctional& G,
                                           std::span<const GridFunction> H,
                                           const GridFunction& k1, const GridFunction& k2,
                                           double q, std::span<const SheetPath> ys,
                                           const CheckOptions& opts = {});

// Four-line chain for families K1, K2 with h^2 = s(K1) s(K2).
CheckReport check_relationship_II_dual_families(const CylinderFunctional& F,
                                                const CylinderFunctional& G,
                                                const GridFunction& h,
                                                std::span<const GridFunction> K1,
                                                std::span<const GridFunction> K2, double q,
                                                std::span<const SheetPath> ys,
                                                const CheckOptions& opts = {});

// Monte Carlo at real lambda against closed_form_real_lambda.
CheckReport check_mc_consistency(const CylinderFunctional& F, const GridFunction& h,
                                 double lambda, std::size_t n, const RngStream& rng,
                                 const CheckOptions& opts = {});

// As above for several targets on shared sheets; one report, lhs/rhs per target.
CheckReport check_mc_consistency_batch(std::span<const McTarget> targets, std::size_t n,
                                       const RngStream& rng, const CheckOptions& opts = {});

// Nested two-kernel estimate at lambda1 = lambda2 = lambda against the
// single-kernel estimate under s(h1,h2), on independent substreams.
CheckReport check_two_stage_mc(const CylinderFunctional& F, const GridFunction& h1,
                               const GridFunction& h2, double lambda, std::size_t n_outer,
                               std::size_t n_inner, const RngStream& rng,
                               const CheckOptions& opts = {});

// <alpha, Y_h(x)> against <alpha h, x> for each triple (alpha_i, h_i, x_i).
CheckReport check_pwz_identity(std::span<const GridFunction> alphas,
                               std::span<const GridFunction> hs, std::span<const SheetPath> xs,
                               const CheckOptions& opts = {});

// Over n sheets: sample mean of <v,x> against 0, sample variance against
// ||v||^2, and E exp{i a <v,x>} against exp{-a^2 ||v||^2 / 2} for each a.
CheckReport check_gaussian_law(const GridFunction& v, std::span<const double> alphas,
                               std::size_t n, const RngStream& rng, const CheckOptions& opts = {});

// Componentwise z-score of a - b given per-component sigmas; zero sigma counts
// as an exact comparison at 1e-12.
double z_score(complex a, complex b, double sigma_re, double sigma_im);

}  // namespace yf
