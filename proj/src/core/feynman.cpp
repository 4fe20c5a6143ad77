#include "feynman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include "error.hpp"
#include "sampling.hpp"

namespace yf {
namespace {

complex unit_phase(double theta) { return {std::cos(theta), std::sin(theta)}; }

void require_q(double q) {
  if (q == 0.0 || !std::isfinite(q)) fail(ErrorCode::InvalidArgument, "q must be a nonzero real");
}

void require_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    fail(ErrorCode::InvalidArgument, "lambda must be a positive real");
  }
}

void require_samples(std::size_t n) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "at least two samples are required");
  if (n > std::numeric_limits<std::uint32_t>::max()) {
    fail(ErrorCode::InvalidArgument, "sample count exceeds 2^32 sheets");
  }
}

// Running mean and centred sum of squares per component (Welford). Blocks are
// combined with the pairwise update, so a constant sample has exactly zero
// spread whatever the block layout.
struct Moments {
  double mean_re = 0.0, mean_im = 0.0, m2_re = 0.0, m2_im = 0.0;
  std::size_t n = 0;

  void add(complex z) {
    ++n;
    const double dn = static_cast<double>(n);
    const double dr = z.real() - mean_re, di = z.imag() - mean_im;
    mean_re += dr / dn;
    mean_im += di / dn;
    m2_re += dr * (z.real() - mean_re);
    m2_im += di * (z.imag() - mean_im);
  }
  void merge(const Moments& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(n), nb = static_cast<double>(o.n), nt = na + nb;
    const double dr = o.mean_re - mean_re, di = o.mean_im - mean_im;
    mean_re += dr * (nb / nt);
    mean_im += di * (nb / nt);
    m2_re += o.m2_re + dr * dr * (na * nb / nt);
    m2_im += o.m2_im + di * di * (na * nb / nt);
    n += o.n;
  }
};

double standard_error(double m2, std::size_t n) {
  if (n < 2) return 0.0;
  const double dn = static_cast<double>(n);
  return std::sqrt(std::max(0.0, m2) / (dn - 1.0) / dn);
}

MCEstimate finish(const Moments& m, const RngStream& rng) {
  MCEstimate e;
  e.mean = {m.mean_re, m.mean_im};
  e.se_re = standard_error(m.m2_re, m.n);
  e.se_im = standard_error(m.m2_im, m.n);
  e.n = m.n;
  e.seed = rng.seed;
  e.stream = rng.stream;
  return e;
}

// Directions u_j h for every atom of F, appended to `dirs`.
void append_directions(const CylinderFunctional& F, const GridFunction& h,
                       std::vector<GridFunction>& dirs) {
  require_same_grid(F.grid(), h.grid(), "Monte Carlo");
  for (const auto& a : F.atoms()) dirs.push_back(pointwise_mul(a.u, h));
}

// sum_j c_j exp{i rho d_j} with d_j read from rows [offset, offset + size) of
// column `col`.
complex functional_sample(const CylinderFunctional& F, const Eigen::MatrixXd& D,
                          Eigen::Index offset, Eigen::Index col, double rho) {
  complex acc = 0.0;
  Eigen::Index r = offset;
  for (const auto& a : F.atoms()) acc += a.weight * unit_phase(rho * D(r++, col));
  return acc;
}

// Per-sheet values of a single target, evaluated block by block.
std::vector<complex> single_target_samples(const CylinderFunctional& F, const GridFunction& h,
                                           double lambda, std::size_t n, const RngStream& rng,
                                           const McOptions& opts) {
  require_lambda(lambda);
  require_samples(n);
  std::vector<GridFunction> dirs;
  append_directions(F, h, dirs);
  const SheetProjector projector(F.grid(), dirs);
  const double rho = 1.0 / std::sqrt(lambda);
  std::vector<complex> values(n);
  parallel_blocks(block_count(n), opts.workers, [&](std::size_t b) {
    const std::size_t first = b * kSheetBlock;
    const std::size_t count = std::min(kSheetBlock, n - first);
    const Eigen::MatrixXd D = projector.project(rng, first, count);
    for (std::size_t k = 0; k < count; ++k) {
      values[first + k] = functional_sample(F, D, 0, static_cast<Eigen::Index>(k), rho);
    }
  });
  return values;
}

// Block-structured reduction of values[0, m): per-block sequential sums
// merged in block order, as in the batch path.
Moments reduce_prefix(std::span<const complex> values, std::size_t m) {
  Moments total;
  for (std::size_t first = 0; first < m; first += kSheetBlock) {
    Moments block;
    const std::size_t end = std::min(first + kSheetBlock, m);
    for (std::size_t k = first; k < end; ++k) block.add(values[k]);
    total.merge(block);
  }
  return total;
}

}  // namespace

complex analytic_closed_form(const CylinderFunctional& F, const GridFunction& h, complex lambda) {
  if (lambda == complex(0.0) || lambda.real() < 0.0 || !std::isfinite(lambda.real()) ||
      !std::isfinite(lambda.imag())) {
    fail(ErrorCode::InvalidArgument, "lambda must be nonzero with nonnegative real part");
  }
  require_same_grid(F.grid(), h.grid(), "analytic_closed_form");
  complex acc = 0.0;
  for (const auto& a : F.atoms()) acc += a.weight * std::exp(-weighted_norm_sq(a.u, h) / (2.0 * lambda));
  return acc;
}

complex feynman_closed_form(const CylinderFunctional& F, const GridFunction& h, double q) {
  require_q(q);
  require_same_grid(F.grid(), h.grid(), "feynman_closed_form");
  complex acc = 0.0;
  for (const auto& a : F.atoms()) acc += a.weight * unit_phase(-weighted_norm_sq(a.u, h) / (2.0 * q));
  return acc;
}

complex closed_form_real_lambda(const CylinderFunctional& F, const GridFunction& h, double lambda) {
  require_lambda(lambda);
  require_same_grid(F.grid(), h.grid(), "closed_form_real_lambda");
  complex acc = 0.0;
  for (const auto& a : F.atoms()) acc += a.weight * std::exp(-weighted_norm_sq(a.u, h) / (2.0 * lambda));
  return acc;
}

complex feynman_integral(const CylinderFunctional& F, const GridFunction& h,
                         const FeynmanParameter& param) {
  validate(param);
  if (const auto* r = std::get_if<RealLambda>(&param)) return closed_form_real_lambda(F, h, r->lambda);
  return feynman_closed_form(F, h, std::get<FeynmanQ>(param).q);
}

complex iterated_closed_form(const CylinderFunctional& F, std::span<const GridFunction> kernels,
                             double q) {
  require_q(q);
  if (kernels.empty()) fail(ErrorCode::InvalidArgument, "iterated integral needs at least one kernel");
  for (const auto& h : kernels) require_same_grid(F.grid(), h.grid(), "iterated_closed_form");
  complex acc = 0.0;
  for (const auto& a : F.atoms()) {
    double norm_sq = 0.0;
    for (const auto& h : kernels) norm_sq += weighted_norm_sq(a.u, h);
    acc += a.weight * unit_phase(-norm_sq / (2.0 * q));
  }
  return acc;
}

complex iterated_closed_form_real_lambda(const CylinderFunctional& F, const GridFunction& h1,
                                         const GridFunction& h2, double lambda1, double lambda2) {
  require_lambda(lambda1);
  require_lambda(lambda2);
  require_same_grid(F.grid(), h1.grid(), "iterated_closed_form_real_lambda");
  require_same_grid(F.grid(), h2.grid(), "iterated_closed_form_real_lambda");
  complex acc = 0.0;
  for (const auto& a : F.atoms()) {
    const double e = weighted_norm_sq(a.u, h1) / (2.0 * lambda1) +
                     weighted_norm_sq(a.u, h2) / (2.0 * lambda2);
    acc += a.weight * std::exp(-e);
  }
  return acc;
}

complex iterated_closed_form_distinct_q(const CylinderFunctional& F, const GridFunction& h,
                                        std::span<const double> qs) {
  if (qs.empty()) fail(ErrorCode::InvalidArgument, "iterated integral needs at least one q");
  double inv_sum = 0.0;
  for (double q : qs) {
    require_q(q);
    inv_sum += 1.0 / q;
  }
  require_same_grid(F.grid(), h.grid(), "iterated_closed_form_distinct_q");
  complex acc = 0.0;
  for (const auto& a : F.atoms()) acc += a.weight * unit_phase(-0.5 * inv_sum * weighted_norm_sq(a.u, h));
  return acc;
}

double alpha_n(std::span<const double> qs) {
  if (qs.empty()) fail(ErrorCode::InvalidArgument, "alpha_n needs at least one q");
  double sum = 0.0;
  double scale = 0.0;
  for (std::size_t k = 0; k < qs.size(); ++k) {
    require_q(qs[k]);
    sum += 1.0 / qs[k];
    scale += std::abs(1.0 / qs[k]);
    if (k >= 1 && std::abs(sum) <= 1e-12 * scale) {
      fail(ErrorCode::DegenerateParameter,
           "partial sum 1/q_1 + ... + 1/q_" + std::to_string(k + 1) + " vanishes");
    }
  }
  return 1.0 / sum;
}

double alpha_n(std::initializer_list<double> qs) {
  return alpha_n(std::span<const double>(qs.begin(), qs.size()));
}

MCEstimate yeh_wiener_mc(const CylinderFunctional& F, const GridFunction& h, double lambda,
                         std::size_t n, const RngStream& rng, const McOptions& opts) {
  const auto values = single_target_samples(F, h, lambda, n, rng, opts);
  return finish(reduce_prefix(values, n), rng);
}

std::vector<MCEstimate> yeh_wiener_mc_batch(std::span<const McTarget> targets, std::size_t n,
                                            const RngStream& rng, const McOptions& opts) {
  if (targets.empty()) return {};
  require_samples(n);
  const GridSpec& grid = targets.front().F->grid();

  // Targets sharing (F, h) share directions; lambda only rescales.
  std::map<std::pair<const CylinderFunctional*, const GridFunction*>, Eigen::Index> offsets;
  std::vector<GridFunction> dirs;
  std::vector<Eigen::Index> target_offset(targets.size());
  std::vector<double> rho(targets.size());
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const auto& tg = targets[t];
    require_lambda(tg.lambda);
    require_same_grid(grid, tg.F->grid(), "yeh_wiener_mc_batch");
    rho[t] = 1.0 / std::sqrt(tg.lambda);
    const auto key = std::make_pair(tg.F, tg.h);
    auto it = offsets.find(key);
    if (it == offsets.end()) {
      it = offsets.emplace(key, static_cast<Eigen::Index>(dirs.size())).first;
      append_directions(*tg.F, *tg.h, dirs);
    }
    target_offset[t] = it->second;
  }

  const SheetProjector projector(grid, dirs);
  const std::size_t blocks = block_count(n);
  std::vector<Moments> block_moments(blocks * targets.size());
  parallel_blocks(blocks, opts.workers, [&](std::size_t b) {
    const std::size_t first = b * kSheetBlock;
    const std::size_t count = std::min(kSheetBlock, n - first);
    const Eigen::MatrixXd D = projector.project(rng, first, count);
    Moments* row = &block_moments[b * targets.size()];
    for (std::size_t t = 0; t < targets.size(); ++t) {
      for (std::size_t k = 0; k < count; ++k) {
        row[t].add(functional_sample(*targets[t].F, D, target_offset[t],
                                     static_cast<Eigen::Index>(k), rho[t]));
      }
    }
  });

  std::vector<MCEstimate> out;
  out.reserve(targets.size());
  for (std::size_t t = 0; t < targets.size(); ++t) {
    Moments total;
    for (std::size_t b = 0; b < blocks; ++b) total.merge(block_moments[b * targets.size() + t]);
    out.push_back(finish(total, rng));
  }
  return out;
}

std::vector<MCEstimate> yeh_wiener_mc_trace(const CylinderFunctional& F, const GridFunction& h,
                                            double lambda, std::size_t n, const RngStream& rng,
                                            std::span<const std::size_t> checkpoints,
                                            const McOptions& opts) {
  std::size_t prev = 0;
  for (std::size_t m : checkpoints) {
    if (m < 2 || m > n || m < prev) {
      fail(ErrorCode::InvalidArgument, "checkpoints must be ascending within [2, n]");
    }
    prev = m;
  }
  const auto values = single_target_samples(F, h, lambda, n, rng, opts);
  std::vector<MCEstimate> out;
  out.reserve(checkpoints.size());
  for (std::size_t m : checkpoints) out.push_back(finish(reduce_prefix(values, m), rng));
  return out;
}

MCEstimate iterated_mc_two_kernels(const CylinderFunctional& F, const GridFunction& h1,
                                   const GridFunction& h2, double lambda1, double lambda2,
                                   std::size_t n_outer, std::size_t n_inner,
                                   const RngStream& rng, FubiniOrder order,
                                   const McOptions& opts) {
  require_lambda(lambda1);
  require_lambda(lambda2);
  require_samples(n_outer);
  if (n_inner == 0) fail(ErrorCode::InvalidArgument, "n_inner must be positive");
  if (n_outer > std::numeric_limits<std::uint32_t>::max() / n_inner) {
    fail(ErrorCode::InvalidArgument, "n_outer * n_inner exceeds 2^32 sheets");
  }

  const bool outer_is_x2 = order == FubiniOrder::InnerFirst;
  const GridFunction& h_outer = outer_is_x2 ? h2 : h1;
  const GridFunction& h_inner = outer_is_x2 ? h1 : h2;
  const double rho_outer = 1.0 / std::sqrt(outer_is_x2 ? lambda2 : lambda1);
  const double rho_inner = 1.0 / std::sqrt(outer_is_x2 ? lambda1 : lambda2);
  const RngStream rng_outer = rng.substream(outer_is_x2 ? 2 : 1);
  const RngStream rng_inner = rng.substream(outer_is_x2 ? 1 : 2);

  std::vector<GridFunction> dirs_outer, dirs_inner;
  append_directions(F, h_outer, dirs_outer);
  append_directions(F, h_inner, dirs_inner);
  const SheetProjector outer(F.grid(), dirs_outer);
  const SheetProjector inner(F.grid(), dirs_inner);
  const auto atoms = F.atoms();
  const auto m = static_cast<Eigen::Index>(atoms.size());

  std::vector<complex> values(n_outer);
  parallel_blocks(block_count(n_outer), opts.workers, [&](std::size_t b) {
    const std::size_t first = b * kSheetBlock;
    const std::size_t count = std::min(kSheetBlock, n_outer - first);
    const Eigen::MatrixXd Do = outer.project(rng_outer, first, count);
    std::vector<complex> acc(count, 0.0);
    const std::size_t inner_first = first * n_inner;
    const std::size_t inner_total = count * n_inner;
    for (std::size_t c0 = 0; c0 < inner_total; c0 += kSheetBlock) {
      const std::size_t cn = std::min(kSheetBlock, inner_total - c0);
      const Eigen::MatrixXd Di = inner.project(rng_inner, inner_first + c0, cn);
      for (std::size_t k = 0; k < cn; ++k) {
        const auto i = static_cast<Eigen::Index>((c0 + k) / n_inner);
        complex v = 0.0;
        for (Eigen::Index a = 0; a < m; ++a) {
          v += atoms[static_cast<std::size_t>(a)].weight *
               unit_phase(rho_outer * Do(a, i) + rho_inner * Di(a, static_cast<Eigen::Index>(k)));
        }
        acc[static_cast<std::size_t>(i)] += v;
      }
    }
    for (std::size_t k = 0; k < count; ++k) {
      values[first + k] = acc[k] / static_cast<double>(n_inner);
    }
  });
  return finish(reduce_prefix(values, n_outer), rng);
}

}  // namespace yf
