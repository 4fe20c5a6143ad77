#include "yehfeynman.h"

#include <cstring>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "error.hpp"
#include "feynman.hpp"
#include "io.hpp"
#include "presets.hpp"
#include "runner.hpp"
#include "sheet.hpp"
#include "expression.hpp"

struct yf_grid {
  yf::GridSpec spec;
};
struct yf_function {
  yf::GridFunction f;
};
struct yf_functional {
  yf::CylinderFunctional F;
};
struct yf_path {
  yf::SheetPath x;
};
struct yf_run_result {
  yf::RunResult r;
};

namespace {

thread_local std::string g_last_error;

yf_status status_of(yf::ErrorCode code) {
  switch (code) {
    case yf::ErrorCode::InvalidArgument: return YF_ERR_INVALID_ARGUMENT;
    case yf::ErrorCode::ShapeError: return YF_ERR_SHAPE;
    case yf::ErrorCode::InvalidFunction: return YF_ERR_INVALID_FUNCTION;
    case yf::ErrorCode::DegenerateParameter: return YF_ERR_DEGENERATE_PARAMETER;
    case yf::ErrorCode::HypothesisViolated: return YF_ERR_HYPOTHESIS_VIOLATED;
    case yf::ErrorCode::ParseError: return YF_ERR_PARSE;
    case yf::ErrorCode::IoError: return YF_ERR_IO;
  }
  return YF_ERR_INTERNAL;
}

yf_status set_error(yf_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

// Runs fn, translating exceptions into status codes.
template <class Fn>
yf_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return YF_OK;
  } catch (const yf::Error& e) {
    return set_error(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(YF_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(YF_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(YF_ERR_INTERNAL, "unknown error");
  }
}

#define YF_REQUIRE(ptr)                                                   \
  do {                                                                    \
    if (!(ptr)) return set_error(YF_ERR_NULL_POINTER, #ptr " is NULL");   \
  } while (0)

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* yf_version(void) { return "0.1.0"; }

const char* yf_status_string(yf_status status) {
  switch (status) {
    case YF_OK: return "ok";
    case YF_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case YF_ERR_SHAPE: return "shape-error";
    case YF_ERR_INVALID_FUNCTION: return "invalid-function";
    case YF_ERR_DEGENERATE_PARAMETER: return "degenerate-parameter";
    case YF_ERR_HYPOTHESIS_VIOLATED: return "hypothesis-violated";
    case YF_ERR_PARSE: return "parse-error";
    case YF_ERR_IO: return "io-error";
    case YF_ERR_NULL_POINTER: return "null-pointer";
    case YF_ERR_INTERNAL: return "internal-error";
  }
  return "unknown-status";
}

const char* yf_last_error(void) { return g_last_error.c_str(); }

void yf_string_free(char* s) { std::free(s); }

yf_status yf_grid_create(double S, double T, int ns, int nt, yf_grid** out) {
  YF_REQUIRE(out);
  return guarded([&] { *out = new yf_grid{yf::GridSpec(S, T, ns, nt)}; });
}

void yf_grid_free(yf_grid* grid) { delete grid; }

size_t yf_grid_cells(const yf_grid* grid) { return grid ? grid->spec.cells() : 0; }

double yf_grid_cell_area(const yf_grid* grid) { return grid ? grid->spec.cell_area() : 0.0; }

yf_status yf_function_from_expression(const yf_grid* grid, const char* expr, yf_function** out) {
  YF_REQUIRE(grid);
  YF_REQUIRE(expr);
  YF_REQUIRE(out);
  return guarded([&] { *out = new yf_function{yf::sample_expression(expr, grid->spec)}; });
}

yf_status yf_function_from_values(const yf_grid* grid, const double* values, size_t count,
                                  yf_function** out) {
  YF_REQUIRE(grid);
  YF_REQUIRE(values);
  YF_REQUIRE(out);
  return guarded([&] {
    *out = new yf_function{yf::GridFunction(grid->spec, std::vector<double>(values, values + count))};
  });
}

yf_status yf_preset_size(const char* name, size_t* count) {
  YF_REQUIRE(name);
  YF_REQUIRE(count);
  return guarded([&] { *count = yf::preset_expressions(name).size(); });
}

yf_status yf_preset_kernel(const yf_grid* grid, const char* name, size_t index,
                           yf_function** out) {
  YF_REQUIRE(grid);
  YF_REQUIRE(name);
  YF_REQUIRE(out);
  return guarded([&] {
    auto kernels = yf::preset_kernels(name, grid->spec);
    if (index >= kernels.size()) {
      yf::fail(yf::ErrorCode::InvalidArgument, "preset index out of range");
    }
    *out = new yf_function{std::move(kernels[index])};
  });
}

yf_status yf_function_combine(const yf_function* const* kernels, size_t count, yf_function** out) {
  YF_REQUIRE(out);
  if (count > 0) YF_REQUIRE(kernels);
  return guarded([&] {
    std::vector<yf::GridFunction> H;
    for (size_t k = 0; k < count; ++k) {
      if (!kernels[k]) yf::fail(yf::ErrorCode::InvalidArgument, "NULL kernel in list");
      H.push_back(kernels[k]->f);
    }
    *out = new yf_function{yf::combine_kernels(H)};
  });
}

yf_status yf_function_values(const yf_function* f, double* out, size_t count) {
  YF_REQUIRE(f);
  YF_REQUIRE(out);
  if (count != f->f.size()) {
    return set_error(YF_ERR_SHAPE, "output buffer must hold one value per cell");
  }
  std::copy(f->f.values().begin(), f->f.values().end(), out);
  return YF_OK;
}

yf_status yf_l2_inner(const yf_function* u, const yf_function* v, double* out) {
  YF_REQUIRE(u);
  YF_REQUIRE(v);
  YF_REQUIRE(out);
  return guarded([&] { *out = yf::l2_inner(u->f, v->f); });
}

void yf_function_free(yf_function* f) { delete f; }

yf_status yf_functional_create(const yf_grid* grid, yf_functional** out) {
  YF_REQUIRE(grid);
  YF_REQUIRE(out);
  return guarded([&] { *out = new yf_functional{yf::CylinderFunctional(yf::DiscreteMeasure(grid->spec))}; });
}

yf_status yf_functional_add_atom(yf_functional* F, double weight_re, double weight_im,
                                 const yf_function* atom) {
  YF_REQUIRE(F);
  YF_REQUIRE(atom);
  return guarded([&] {
    std::vector<yf::Atom> atoms(F->F.atoms().begin(), F->F.atoms().end());
    atoms.push_back({yf::complex(weight_re, weight_im), atom->f});
    F->F = yf::CylinderFunctional(yf::DiscreteMeasure(F->F.grid(), std::move(atoms)));
  });
}

yf_status yf_functional_from_json(const yf_grid* grid, const char* json, yf_functional** out) {
  YF_REQUIRE(grid);
  YF_REQUIRE(json);
  YF_REQUIRE(out);
  return guarded([&] { *out = new yf_functional{yf::parse_functional(json, grid->spec)}; });
}

yf_status yf_functional_to_json(const yf_functional* F, char** out) {
  YF_REQUIRE(F);
  YF_REQUIRE(out);
  return guarded([&] { *out = dup_string(yf::functional_to_json(F->F)); });
}

size_t yf_functional_size(const yf_functional* F) { return F ? F->F.size() : 0; }

yf_status yf_functional_weight(const yf_functional* F, size_t index, double* re, double* im) {
  YF_REQUIRE(F);
  YF_REQUIRE(re);
  YF_REQUIRE(im);
  if (index >= F->F.size()) return set_error(YF_ERR_INVALID_ARGUMENT, "atom index out of range");
  const auto w = F->F.atoms()[index].weight;
  *re = w.real();
  *im = w.imag();
  return YF_OK;
}

void yf_functional_free(yf_functional* F) { delete F; }

yf_status yf_gfyft(const yf_functional* F, const yf_function* h, double q, yf_functional** out) {
  YF_REQUIRE(F);
  YF_REQUIRE(h);
  YF_REQUIRE(out);
  return guarded([&] { *out = new yf_functional{yf::gfyft(F->F, h->f, q)}; });
}

yf_status yf_gcp(const yf_functional* F, const yf_functional* G, const yf_function* k1,
                 const yf_function* k2, double q, yf_functional** out) {
  YF_REQUIRE(F);
  YF_REQUIRE(G);
  YF_REQUIRE(k1);
  YF_REQUIRE(k2);
  YF_REQUIRE(out);
  return guarded([&] { *out = new yf_functional{yf::gcp(F->F, G->F, k1->f, k2->f, q)}; });
}

yf_status yf_scaled_product(const yf_functional* F, const yf_functional* G, yf_functional** out) {
  YF_REQUIRE(F);
  YF_REQUIRE(G);
  YF_REQUIRE(out);
  return guarded([&] { *out = new yf_functional{yf::scaled_product(F->F, G->F)}; });
}

yf_status yf_sheet_sample(const yf_grid* grid, uint64_t seed, uint64_t stream, uint64_t index,
                          yf_path** out) {
  YF_REQUIRE(grid);
  YF_REQUIRE(out);
  if (index > UINT32_MAX) return set_error(YF_ERR_INVALID_ARGUMENT, "sheet index must be < 2^32");
  return guarded([&] {
    *out = new yf_path{yf::sample_sheet(grid->spec, yf::RngStream{seed, stream}, index)};
  });
}

yf_status yf_gaussian_path(const yf_function* h, const yf_path* x, yf_path** out) {
  YF_REQUIRE(h);
  YF_REQUIRE(x);
  YF_REQUIRE(out);
  return guarded([&] { *out = new yf_path{yf::gaussian_path(h->f, x->x)}; });
}

yf_status yf_path_value_at(const yf_path* x, double s, double t, double* out) {
  YF_REQUIRE(x);
  YF_REQUIRE(out);
  return guarded([&] { *out = x->x.value_at(s, t); });
}

yf_status yf_path_write_csv(const yf_path* x, const char* file) {
  YF_REQUIRE(x);
  YF_REQUIRE(file);
  return guarded([&] { yf::write_path_csv(file, x->x); });
}

yf_status yf_pwz_integral(const yf_function* v, const yf_path* x, double* out) {
  YF_REQUIRE(v);
  YF_REQUIRE(x);
  YF_REQUIRE(out);
  return guarded([&] { *out = yf::pwz_integral(v->f, x->x); });
}

void yf_path_free(yf_path* x) { delete x; }

yf_status yf_evaluate(const yf_functional* F, const yf_path* y, double* re, double* im) {
  YF_REQUIRE(F);
  YF_REQUIRE(y);
  YF_REQUIRE(re);
  YF_REQUIRE(im);
  return guarded([&] {
    const auto z = yf::evaluate(F->F, y->x);
    *re = z.real();
    *im = z.imag();
  });
}

yf_status yf_feynman_closed_form(const yf_functional* F, const yf_function* h, double q,
                                 double* re, double* im) {
  YF_REQUIRE(F);
  YF_REQUIRE(h);
  YF_REQUIRE(re);
  YF_REQUIRE(im);
  return guarded([&] {
    const auto z = yf::feynman_closed_form(F->F, h->f, q);
    *re = z.real();
    *im = z.imag();
  });
}

yf_status yf_closed_form_real_lambda(const yf_functional* F, const yf_function* h, double lambda,
                                     double* re, double* im) {
  YF_REQUIRE(F);
  YF_REQUIRE(h);
  YF_REQUIRE(re);
  YF_REQUIRE(im);
  return guarded([&] {
    const auto z = yf::closed_form_real_lambda(F->F, h->f, lambda);
    *re = z.real();
    *im = z.imag();
  });
}

yf_status yf_alpha_n(const double* qs, size_t count, double* out) {
  YF_REQUIRE(out);
  if (count > 0) YF_REQUIRE(qs);
  return guarded([&] { *out = yf::alpha_n(std::span<const double>(qs, count)); });
}

yf_status yf_yeh_wiener_mc(const yf_functional* F, const yf_function* h, double lambda,
                           uint64_t n, uint64_t seed, uint64_t stream, int workers,
                           yf_estimate* out) {
  YF_REQUIRE(F);
  YF_REQUIRE(h);
  YF_REQUIRE(out);
  return guarded([&] {
    const auto e = yf::yeh_wiener_mc(F->F, h->f, lambda, n, yf::RngStream{seed, stream},
                                     yf::McOptions{workers});
    *out = yf_estimate{e.mean.real(), e.mean.imag(), e.se_re, e.se_im, e.n, e.seed, e.stream};
  });
}

yf_status yf_convergence_csv(const yf_functional* F, const yf_function* h, double lambda,
                             uint64_t n, uint64_t seed, uint64_t stream, int workers,
                             const char* file) {
  YF_REQUIRE(F);
  YF_REQUIRE(h);
  YF_REQUIRE(file);
  return guarded([&] {
    const auto checkpoints = yf::convergence_checkpoints(n);
    const auto trace = yf::yeh_wiener_mc_trace(F->F, h->f, lambda, n, yf::RngStream{seed, stream},
                                               checkpoints, yf::McOptions{workers});
    yf::write_text_file(file, yf::convergence_csv(trace));
  });
}

yf_status yf_run(const char* command, const char* config_path, const char* overrides_json,
                 yf_run_result** out) {
  YF_REQUIRE(command);
  YF_REQUIRE(out);
  return guarded([&] {
    *out = new yf_run_result{yf::run_command(command, config_path ? config_path : "",
                                             overrides_json ? overrides_json : "")};
  });
}

int yf_run_exit_code(const yf_run_result* r) { return r ? r->r.exit_code : yf::kExitError; }

const char* yf_run_report(const yf_run_result* r) { return r ? r->r.report.c_str() : ""; }

const char* yf_run_summary(const yf_run_result* r) { return r ? r->r.summary_json.c_str() : ""; }

const char* yf_run_error(const yf_run_result* r) { return r ? r->r.error.c_str() : ""; }

void yf_run_result_free(yf_run_result* r) { delete r; }

yf_status yf_default_config(char** out) {
  YF_REQUIRE(out);
  return guarded([&] { *out = dup_string(yf::default_config_json()); });
}

}  // extern "C"
