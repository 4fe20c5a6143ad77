#include "checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "error.hpp"

namespace yf {
namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string num_list(std::span<const double> vs) {
  std::string out;
  for (std::size_t k = 0; k < vs.size(); ++k) out += (k ? "," : "") + num(vs[k]);
  return out;
}

complex unit_phase(double theta) { return {std::cos(theta), std::sin(theta)}; }

CheckReport finish_exact(std::string name, std::vector<complex> lhs, std::vector<complex> rhs,
                         double diff, double threshold,
                         std::vector<std::pair<std::string, std::string>> meta) {
  CheckReport r;
  r.name = std::move(name);
  r.mode = CheckMode::Exact;
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.max_abs_diff = diff;
  r.threshold = threshold;
  r.passed = diff <= threshold;
  r.metadata = std::move(meta);
  return r;
}

double max_diff(std::span<const complex> a, std::span<const complex> b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

std::vector<complex> evaluate_all(const CylinderFunctional& F, std::span<const SheetPath> ys) {
  std::vector<complex> out;
  out.reserve(ys.size());
  for (const auto& y : ys) out.push_back(evaluate(F, y));
  return out;
}

// Evaluates the first line of a chain (perturbed) and every line against the
// last one; the report carries the first and last lines.
CheckReport chain_report(std::string name, std::span<const CylinderFunctional> lines,
                         std::span<const SheetPath> ys, const CheckOptions& opts,
                         std::vector<std::pair<std::string, std::string>> meta) {
  if (ys.empty()) fail(ErrorCode::InvalidArgument, name + ": no sample paths");
  const auto rhs = evaluate_all(lines.back(), ys);
  std::vector<complex> first;
  double diff = 0.0;
  for (std::size_t l = 0; l + 1 < lines.size(); ++l) {
    const CylinderFunctional line =
        l == 0 ? rotate_weights(lines[l], opts.phase_perturbation) : lines[l];
    auto values = evaluate_all(line, ys);
    diff = std::max(diff, max_diff(values, rhs));
    if (l == 0) first = std::move(values);
  }
  meta.emplace_back("paths", std::to_string(ys.size()));
  meta.emplace_back("chain_lines", std::to_string(lines.size()));
  return finish_exact(std::move(name), std::move(first), rhs, diff, kExactTolerance,
                      std::move(meta));
}

// Largest cellwise |a^2 - b c| (b == c allowed).
double product_gap(const GridFunction& a, const GridFunction& b, const GridFunction& c) {
  require_same_grid(a.grid(), b.grid(), "hypothesis");
  require_same_grid(a.grid(), c.grid(), "hypothesis");
  double gap = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) gap = std::max(gap, std::abs(a[k] * a[k] - b[k] * c[k]));
  return gap;
}

void require_hypothesis(double gap, const std::string& what) {
  if (!(gap <= kHypothesisTolerance)) {
    fail(ErrorCode::HypothesisViolated, what + " fails on the grid (max gap " + num(gap) + ")");
  }
}

GridFunction combine_with(std::span<const GridFunction> H, const GridFunction& k) {
  std::vector<GridFunction> all(H.begin(), H.end());
  all.push_back(k);
  return combine_kernels(all);
}

// T_{q, h_n/sqrt2} ... T_{q, h_1/sqrt2} F.
CylinderFunctional transform_each(CylinderFunctional F, std::span<const GridFunction> H, double q,
                                  double scale) {
  for (const auto& h : H) F = gfyft(F, h.scaled(scale), q);
  return F;
}

void require_nonempty(std::span<const GridFunction> H, const char* what) {
  if (H.empty()) fail(ErrorCode::InvalidArgument, std::string(what) + ": empty kernel list");
}

}  // namespace

const char* to_string(CheckMode mode) {
  return mode == CheckMode::Exact ? "exact" : "statistical";
}

double z_score(complex a, complex b, double sigma_re, double sigma_im) {
  auto one = [](double d, double sigma) {
    d = std::abs(d);
    if (sigma > 0.0) return d / sigma;
    return d <= 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
  };
  return std::max(one(a.real() - b.real(), sigma_re), one(a.imag() - b.imag(), sigma_im));
}

CheckReport check_fubini(const CylinderFunctional& F, std::span<const GridFunction> H, double q,
                         const CheckOptions& opts) {
  require_nonempty(H, "check_fubini");
  const complex lhs = iterated_closed_form(F, H, q) * unit_phase(opts.phase_perturbation);
  const complex rhs = feynman_closed_form(F, combine_kernels(H), q);
  return finish_exact("fubini", {lhs}, {rhs}, std::abs(lhs - rhs), kFubiniTolerance,
                      {{"q", num(q)}, {"kernels", std::to_string(H.size())},
                       {"atoms", std::to_string(F.size())}});
}

CheckReport check_inverse(const CylinderFunctional& F, const GridFunction& h, double q,
                          const CheckOptions& opts) {
  const auto back = rotate_weights(gfyft(gfyft(F, h, q), h, -q), opts.phase_perturbation);
  std::vector<complex> lhs, rhs;
  for (const auto& a : back.atoms()) lhs.push_back(a.weight);
  for (const auto& a : F.atoms()) rhs.push_back(a.weight);
  return finish_exact("inverse", lhs, rhs, max_diff(lhs, rhs), kInverseTolerance,
                      {{"q", num(q)}, {"atoms", std::to_string(F.size())}});
}

CheckReport check_transform_q_composition(const CylinderFunctional& F, const GridFunction& h,
                                          std::span<const double> qs,
                                          std::span<const SheetPath> ys,
                                          const CheckOptions& opts) {
  const double alpha = alpha_n(qs);
  CylinderFunctional iterated = F;
  for (double q : qs) iterated = gfyft(iterated, h, q);
  const CylinderFunctional lines[] = {iterated, gfyft(F, h, alpha)};
  return chain_report("transform_q_composition", lines, ys, opts,
                      {{"qs", num_list(qs)}, {"alpha_n", num(alpha)}});
}

CheckReport check_transform_kernel_composition(const CylinderFunctional& F,
                                               std::span<const GridFunction> H, double q,
                                               std::span<const SheetPath> ys,
                                               const CheckOptions& opts) {
  require_nonempty(H, "check_transform_kernel_composition");
  const CylinderFunctional lines[] = {transform_each(F, H, q, 1.0),
                                      gfyft(F, combine_kernels(H), q)};
  return chain_report("transform_kernel_composition", lines, ys, opts,
                      {{"q", num(q)}, {"kernels", std::to_string(H.size())}});
}

CheckReport check_transform_mixed(const CylinderFunctional& F, std::span<const GridFunction> H1,
                                  std::span<const GridFunction> H2, double q1, double q2,
                                  std::span<const SheetPath> ys, const CheckOptions& opts) {
  require_nonempty(H1, "check_transform_mixed");
  require_nonempty(H2, "check_transform_mixed");
  const GridFunction s1 = combine_kernels(H1);
  const GridFunction s2 = combine_kernels(H2);
  require_hypothesis(max_abs_diff(s1, s2), "s(H1) = s(H2)");
  const double qs[] = {q1, q2};
  const double q12 = alpha_n(qs);
  const CylinderFunctional lines[] = {
      transform_each(transform_each(F, H1, q1, 1.0), H2, q2, 1.0),
      transform_each(gfyft(F, s1, q1), H2, q2, 1.0),
      gfyft(gfyft(F, s1, q1), s2, q2),
      gfyft(F, s1, q12),
  };
  return chain_report("transform_mixed", lines, ys, opts,
                      {{"q1", num(q1)}, {"q2", num(q2)}, {"q1q2/(q1+q2)", num(q12)}});
}

CheckReport check_relationship_I(const CylinderFunctional& F, const CylinderFunctional& G,
                                 const GridFunction& h, const GridFunction& k1,
                                 const GridFunction& k2, double q, std::span<const SheetPath> ys,
                                 const CheckOptions& opts) {
  require_hypothesis(product_gap(h, k1, k2), "h^2 = k1 k2");
  if (ys.empty()) fail(ErrorCode::InvalidArgument, "relationship_I: no sample paths");
  const auto left = rotate_weights(gfyft(gcp(F, G, k1, k2, q), h, q), opts.phase_perturbation);
  const auto tf = gfyft(F, combine_kernels({h, k1}).scaled(kInvSqrt2), q);
  const auto tg = gfyft(G, combine_kernels({h, k2}).scaled(kInvSqrt2), q);
  std::vector<complex> lhs, rhs;
  for (const auto& y : ys) {
    const SheetPath half = scale_path(y, kInvSqrt2);
    lhs.push_back(evaluate(left, y));
    rhs.push_back(evaluate(tf, half) * evaluate(tg, half));
  }
  return finish_exact("relationship_I", lhs, rhs, max_diff(lhs, rhs), kExactTolerance,
                      {{"q", num(q)}, {"paths", std::to_string(ys.size())}});
}

CheckReport check_relationship_II(const CylinderFunctional& F, const CylinderFunctional& G,
                                  const GridFunction& h, const GridFunction& k1,
                                  const GridFunction& k2, double q, std::span<const SheetPath> ys,
                                  const CheckOptions& opts) {
  require_hypothesis(product_gap(h, k1, k2), "h^2 = k1 k2");
  const CylinderFunctional lines[] = {
      gcp(gfyft(F, combine_kernels({h, k1}).scaled(kInvSqrt2), q),
          gfyft(G, combine_kernels({h, k2}).scaled(kInvSqrt2), q), k1, k2, -q),
      gfyft(scaled_product(F, G), h, q),
  };
  return chain_report("relationship_II", lines, ys, opts, {{"q", num(q)}});
}

CheckReport check_relationship_II_extended(const CylinderFunctional& F,
                                           const CylinderFunctional& G,
                                           std::span<const GridFunction> H,
                                           const GridFunction& k1, const GridFunction& k2,
                                           double q, std::span<const SheetPath> ys,
                                           const CheckOptions& opts) {
  require_nonempty(H, "check_relationship_II_extended");
  const GridFunction sH = combine_kernels(H);
  require_hypothesis(product_gap(sH, k1, k2), "s(H)^2 = k1 k2");
  const CylinderFunctional lines[] = {
      gcp(gfyft(transform_each(F, H, q, kInvSqrt2), k1.scaled(kInvSqrt2), q),
          gfyft(transform_each(G, H, q, kInvSqrt2), k2.scaled(kInvSqrt2), q), k1, k2, -q),
      gcp(gfyft(F, combine_with(H, k1).scaled(kInvSqrt2), q),
          gfyft(G, combine_with(H, k2).scaled(kInvSqrt2), q), k1, k2, -q),
      gfyft(scaled_product(F, G), sH, q),
  };
  return chain_report("relationship_II_extended", lines, ys, opts,
                      {{"q", num(q)}, {"kernels", std::to_string(H.size())}});
}

CheckReport check_relationship_II_dual_families(const CylinderFunctional& F,
                                                const CylinderFunctional& G,
                                                const GridFunction& h,
                                                std::span<const GridFunction> K1,
                                                std::span<const GridFunction> K2, double q,
                                                std::span<const SheetPath> ys,
                                                const CheckOptions& opts) {
  require_nonempty(K1, "check_relationship_II_dual_families");
  require_nonempty(K2, "check_relationship_II_dual_families");
  const GridFunction s1 = combine_kernels(K1);
  const GridFunction s2 = combine_kernels(K2);
  require_hypothesis(product_gap(h, s1, s2), "h^2 = s(K1) s(K2)");
  const GridFunction hr = h.scaled(kInvSqrt2);
  const CylinderFunctional lines[] = {
      gcp(gfyft(transform_each(F, K1, q, kInvSqrt2), hr, q),
          gfyft(transform_each(G, K2, q, kInvSqrt2), hr, q), s1, s2, -q),
      gcp(gfyft(gfyft(F, s1.scaled(kInvSqrt2), q), hr, q),
          gfyft(gfyft(G, s2.scaled(kInvSqrt2), q), hr, q), s1, s2, -q),
      gcp(gfyft(F, combine_kernels({h, s1}).scaled(kInvSqrt2), q),
          gfyft(G, combine_kernels({h, s2}).scaled(kInvSqrt2), q), s1, s2, -q),
      gfyft(scaled_product(F, G), h, q),
  };
  return chain_report("relationship_II_dual_families", lines, ys, opts,
                      {{"q", num(q)},
                       {"K1", std::to_string(K1.size())},
                       {"K2", std::to_string(K2.size())}});
}

CheckReport check_mc_consistency_batch(std::span<const McTarget> targets, std::size_t n,
                                       const RngStream& rng, const CheckOptions& opts) {
  const auto estimates = yeh_wiener_mc_batch(targets, n, rng, McOptions{opts.workers});
  CheckReport r;
  r.name = "mc_consistency";
  r.mode = CheckMode::Statistical;
  r.threshold = kSigmaThreshold;
  std::size_t exceed = 0;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const auto& e = estimates[t];
    complex oracle = closed_form_real_lambda(*targets[t].F, *targets[t].h, targets[t].lambda);
    oracle += opts.oracle_offset_sigmas * complex(e.se_re, e.se_im);
    const double z = z_score(e.mean, oracle, e.se_re, e.se_im);
    if (z > kSigmaThreshold) ++exceed;
    r.max_abs_diff = std::max(r.max_abs_diff, z);
    r.lhs.push_back(e.mean);
    r.rhs.push_back(oracle);
  }
  r.passed = r.max_abs_diff <= r.threshold;
  r.metadata = {{"n", std::to_string(n)},
                {"seed", std::to_string(rng.seed)},
                {"stream", std::to_string(rng.stream)},
                {"targets", std::to_string(targets.size())},
                {"exceedances", std::to_string(exceed)}};
  return r;
}

CheckReport check_mc_consistency(const CylinderFunctional& F, const GridFunction& h,
                                 double lambda, std::size_t n, const RngStream& rng,
                                 const CheckOptions& opts) {
  const McTarget target{&F, &h, lambda};
  auto r = check_mc_consistency_batch(std::span<const McTarget>(&target, 1), n, rng, opts);
  r.metadata.emplace_back("lambda", num(lambda));
  return r;
}

CheckReport check_two_stage_mc(const CylinderFunctional& F, const GridFunction& h1,
                               const GridFunction& h2, double lambda, std::size_t n_outer,
                               std::size_t n_inner, const RngStream& rng,
                               const CheckOptions& opts) {
  const McOptions mc{opts.workers};
  const auto nested = iterated_mc_two_kernels(F, h1, h2, lambda, lambda, n_outer, n_inner,
                                              rng.substream(10), FubiniOrder::InnerFirst, mc);
  const GridFunction s = combine_kernels({h1, h2});
  const auto single = yeh_wiener_mc(F, s, lambda, n_outer, rng.substream(11), mc);
  const complex oracle = iterated_closed_form_real_lambda(F, h1, h2, lambda, lambda);
  const double sig_re = std::hypot(nested.se_re, single.se_re);
  const double sig_im = std::hypot(nested.se_im, single.se_im);
  const complex shifted = single.mean + opts.oracle_offset_sigmas * complex(sig_re, sig_im);
  CheckReport r;
  r.name = "two_stage_mc";
  r.mode = CheckMode::Statistical;
  r.lhs = {nested.mean};
  r.rhs = {shifted};
  r.max_abs_diff = z_score(nested.mean, shifted, sig_re, sig_im);
  r.threshold = kSigmaThreshold;
  r.passed = r.max_abs_diff <= r.threshold;
  r.metadata = {{"lambda", num(lambda)},
                {"n_outer", std::to_string(n_outer)},
                {"n_inner", std::to_string(n_inner)},
                {"seed", std::to_string(rng.seed)},
                {"closed_form_re", num(oracle.real())},
                {"closed_form_im", num(oracle.imag())}};
  return r;
}

}  // namespace yf

namespace yf {

CheckReport check_pwz_identity(std::span<const GridFunction> alphas,
                               std::span<const GridFunction> hs, std::span<const SheetPath> xs,
                               const CheckOptions& opts) {
  if (alphas.size() != hs.size() || hs.size() != xs.size() || xs.empty()) {
    fail(ErrorCode::InvalidArgument, "check_pwz_identity: need equally many alpha, h and x");
  }
  std::vector<complex> lhs, rhs;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    lhs.emplace_back(pwz_integral(alphas[k], gaussian_path(hs[k], xs[k])) + opts.phase_perturbation);
    rhs.emplace_back(pwz_integral(pointwise_mul(alphas[k], hs[k]), xs[k]));
  }
  return finish_exact("pwz_identity", lhs, rhs, max_diff(lhs, rhs), kInverseTolerance,
                      {{"triples", std::to_string(xs.size())}});
}

CheckReport check_gaussian_law(const GridFunction& v, std::span<const double> alphas,
                               std::size_t n, const RngStream& rng, const CheckOptions& opts) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "check_gaussian_law: n must be at least 2");
  const GridFunction dirs[] = {v};
  const auto p = pwz_samples(dirs, n, rng, opts.workers);
  const double dn = static_cast<double>(n);
  const double norm_sq = l2_norm_sq(v);

  double sum = 0.0;
  for (double x : p) sum += x;
  const double mean = sum / dn;
  double m2 = 0.0;
  for (double x : p) m2 += (x - mean) * (x - mean);
  const double var = m2 / (dn - 1.0);
  // Standard error of the variance from the spread of squared deviations.
  double m4 = 0.0;
  for (double x : p) {
    const double d = (x - mean) * (x - mean) - m2 / dn;
    m4 += d * d;
  }
  const double se_var = std::sqrt(m4 / (dn - 1.0) / dn);
  const double se_mean = std::sqrt(var / dn);

  CheckReport r;
  r.name = "gaussian_law";
  r.mode = CheckMode::Statistical;
  r.threshold = kSigmaThreshold;
  const double shift = opts.oracle_offset_sigmas;
  r.lhs = {mean, var};
  r.rhs = {shift * se_mean, norm_sq + shift * se_var};
  r.max_abs_diff = std::max(z_score(mean, r.rhs[0], se_mean, 0.0), z_score(var, r.rhs[1], se_var, 0.0));
  for (double a : alphas) {
    double sc = 0.0, ss = 0.0, qc = 0.0, qs = 0.0;
    for (double x : p) {
      const double c = std::cos(a * x), s = std::sin(a * x);
      sc += c;
      ss += s;
      qc += c * c;
      qs += s * s;
    }
    const complex est(sc / dn, ss / dn);
    const double se_re = std::sqrt(std::max(0.0, (qc - sc * sc / dn) / (dn - 1.0)) / dn);
    const double se_im = std::sqrt(std::max(0.0, (qs - ss * ss / dn) / (dn - 1.0)) / dn);
    const complex exact = std::exp(-0.5 * a * a * norm_sq) + shift * complex(se_re, se_im);
    r.lhs.push_back(est);
    r.rhs.push_back(exact);
    r.max_abs_diff = std::max(r.max_abs_diff, z_score(est, exact, se_re, se_im));
  }
  r.passed = r.max_abs_diff <= r.threshold;
  r.metadata = {{"n", std::to_string(n)},
                {"seed", std::to_string(rng.seed)},
                {"norm_sq", num(norm_sq)},
                {"alphas", num_list(alphas)}};
  return r;
}

}  // namespace yf
