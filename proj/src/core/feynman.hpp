#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "algebra.hpp"
#include "rng.hpp"

namespace yf {

// Complex sample mean with per-component standard errors (stdev / sqrt n).
struct MCEstimate {
  complex mean;
  double se_re = 0.0;
  double se_im = 0.0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

struct McOptions {
  int workers = 1;
};

// sum_j c_j exp{-||u_j h||^2 / (2 lambda)} for Re lambda >= 0, lambda != 0.
// At real lambda > 0 this is the Yeh-Wiener integral J_F(h; lambda); at
// lambda = -iq it is the analytic Yeh-Feynman integral.
complex analytic_closed_form(const CylinderFunctional& F, const GridFunction& h, complex lambda);

complex feynman_closed_form(const CylinderFunctional& F, const GridFunction& h, double q);
complex closed_form_real_lambda(const CylinderFunctional& F, const GridFunction& h, double lambda);
complex feynman_integral(const CylinderFunctional& F, const GridFunction& h,
                         const FeynmanParameter& param);

// Iterated analytic integrals over independent processes Y_{h_1}, ..., Y_{h_n}
// at a common q: sum_j c_j exp{-(i/2q) sum_m ||u_j h_m||^2}.
complex iterated_closed_form(const CylinderFunctional& F, std::span<const GridFunction> kernels,
                             double q);

// Real-parameter counterpart for two kernels:
// sum_j c_j exp{-||u_j h1||^2/(2 lambda1) - ||u_j h2||^2/(2 lambda2)}.
complex iterated_closed_form_real_lambda(const CylinderFunctional& F, const GridFunction& h1,
                                         const GridFunction& h2, double lambda1, double lambda2);

// Iterated analytic integrals with a single kernel and distinct parameters
// q_1, ..., q_n: sum_j c_j exp{-(i/2) (sum_m 1/q_m) ||u_j h||^2}.
complex iterated_closed_form_distinct_q(const CylinderFunctional& F, const GridFunction& h,
                                        std::span<const double> qs);

// (1/q_1 + ... + 1/q_n)^{-1}; throws degenerate-parameter when a partial sum
// 1/q_1 + ... + 1/q_k (k >= 2) vanishes.
double alpha_n(std::span<const double> qs);
double alpha_n(std::initializer_list<double> qs);

// Sample mean of F(lambda^{-1/2} Y_h(x)) over sheets 0..n-1 of `rng`.
MCEstimate yeh_wiener_mc(const CylinderFunctional& F, const GridFunction& h, double lambda,
                         std::size_t n, const RngStream& rng, const McOptions& opts = {});

struct McTarget {
  const CylinderFunctional* F;
  const GridFunction* h;
  double lambda;
};

// Estimates for many targets from the same n sheets; each entry is what
// yeh_wiener_mc would report for that target and stream, up to GEMM
// rounding.
std::vector<MCEstimate> yeh_wiener_mc_batch(std::span<const McTarget> targets, std::size_t n,
                                            const RngStream& rng, const McOptions& opts = {});

// Running estimates after the first m sheets for each m in `checkpoints`
// (ascending, each <= n). The estimate at m = n is identical to
// yeh_wiener_mc with the same arguments.
std::vector<MCEstimate> yeh_wiener_mc_trace(const CylinderFunctional& F, const GridFunction& h,
                                            double lambda, std::size_t n, const RngStream& rng,
                                            std::span<const std::size_t> checkpoints,
                                            const McOptions& opts = {});

enum class FubiniOrder {
  InnerFirst,   // outer sheet x2, inner sheets x1
  InnerSecond,  // outer sheet x1, inner sheets x2
};

// Nested estimate of E_{x1,x2}[F(lambda1^{-1/2} Y_h1(x1) + lambda2^{-1/2} Y_h2(x2))]:
// each outer sheet is paired with n_inner fresh inner sheets. x1 and x2 are
// drawn from rng.substream(1) and rng.substream(2).
MCEstimate iterated_mc_two_kernels(const CylinderFunctional& F, const GridFunction& h1,
                                   const GridFunction& h2, double lambda1, double lambda2,
                                   std::size_t n_outer, std::size_t n_inner,
                                   const RngStream& rng,
                                   FubiniOrder order = FubiniOrder::InnerFirst,
                                   const McOptions& opts = {});

}  // namespace yf
