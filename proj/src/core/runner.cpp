#include "runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <thread>

#include <json.hpp>

#include "checks.hpp"
#include "error.hpp"
#include "expression.hpp"
#include "io.hpp"
#include "presets.hpp"
#include "random_inputs.hpp"

namespace yf {
namespace {

using nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 20261017;

// Stream ids; every command draws from its own family.
constexpr std::uint64_t kStreamPaths = 1;
constexpr std::uint64_t kStreamMc = 2;
constexpr std::uint64_t kStreamTwoStage = 3;
constexpr std::uint64_t kStreamGaussian = 4;
constexpr std::uint64_t kStreamPwz = 5;
constexpr std::uint64_t kStreamDump = 6;
constexpr std::uint64_t kStreamTrace = 7;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::map<std::string, std::vector<std::string>, std::less<>>& command_checks() {
  static const std::map<std::string, std::vector<std::string>, std::less<>> kMap = {
      {"simulate", {"pwz_identity", "gaussian_law"}},
      {"integrate", {"mc_consistency"}},
      {"fubini", {"fubini", "two_stage_mc"}},
      {"transform",
       {"inverse", "transform_q_composition", "transform_kernel_composition", "transform_mixed"}},
      {"convolution",
       {"relationship_I", "relationship_II", "relationship_II_extended",
        "relationship_II_dual_families"}},
  };
  return kMap;
}

json defaults() {
  return {
      {"grid", {{"S", 1.0}, {"T", 1.0}, {"ns", 64}, {"nt", 64}}},
      {"seed", kDefaultSeed},
      {"samples", 20000},
      {"q", 1.0},
      {"lambda", 1.0},
      {"qs", {3.0, -6.0, 2.0}},
      {"kernels", {"one", "H4", "trig-pair"}},
      {"functionals", json::array()},
      {"random_functionals", 3},
      {"max_atoms", 5},
      {"paths", 10},
      {"n_inner", 1},
      {"checks", json::array()},
      {"report", ""},
      {"summary", ""},
      {"csv", ""},
      {"process_csv", ""},
      {"workers", 0},
  };
}

struct Config {
  GridSpec grid{1, 1, 1, 1};
  std::uint64_t seed = kDefaultSeed;
  std::size_t samples = 0;
  double q = 1.0;
  double lambda = 1.0;
  std::vector<double> qs;
  std::vector<std::string> kernels;
  json functionals;
  std::size_t random_functionals = 0;
  std::size_t max_atoms = 0;
  std::size_t paths = 0;
  std::size_t n_inner = 1;
  std::vector<std::string> checks;
  std::string report, summary, csv, process_csv;
  int workers = 1;
};

template <class T>
T get(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw UsageError(std::string("config: '") + key + "' has the wrong type");
  }
}

std::size_t get_count(const json& j, const char* key, std::size_t min) {
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < static_cast<long long>(min)) {
    throw UsageError(std::string("config: '") + key + "' must be an integer >= " +
                     std::to_string(min));
  }
  return v.get<std::size_t>();
}

Config parse_config(const json& j) {
  const json known = defaults();
  for (const auto& [key, _] : j.items()) {
    if (!known.contains(key)) throw UsageError("config: unknown key '" + key + "'");
  }
  Config c;
  const auto& g = j.at("grid");
  if (!g.is_object()) throw UsageError("config: 'grid' must be an object");
  for (const auto& [key, _] : g.items()) {
    if (key != "S" && key != "T" && key != "ns" && key != "nt") {
      throw UsageError("config: unknown grid key '" + key + "'");
    }
  }
  try {
    c.grid = GridSpec(get<double>(g, "S"), get<double>(g, "T"),
                      static_cast<int>(get_count(g, "ns", 1)), static_cast<int>(get_count(g, "nt", 1)));
  } catch (const Error& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  if (!j.at("seed").is_number_unsigned()) throw UsageError("config: 'seed' must be a nonnegative integer");
  c.seed = j.at("seed").get<std::uint64_t>();
  c.samples = get_count(j, "samples", 2);
  c.q = get<double>(j, "q");
  if (c.q == 0.0 || !std::isfinite(c.q)) throw UsageError("config: q must be a nonzero real");
  c.lambda = get<double>(j, "lambda");
  if (!(c.lambda > 0.0) || !std::isfinite(c.lambda)) {
    throw UsageError("config: lambda must be a positive real");
  }
  c.qs = get<std::vector<double>>(j, "qs");
  if (c.qs.empty()) throw UsageError("config: 'qs' must be nonempty");
  for (double q : c.qs) {
    if (q == 0.0 || !std::isfinite(q)) throw UsageError("config: every entry of 'qs' must be nonzero");
  }
  c.kernels = get<std::vector<std::string>>(j, "kernels");
  if (c.kernels.empty()) throw UsageError("config: 'kernels' must be nonempty");
  c.functionals = j.at("functionals");
  if (!c.functionals.is_array()) throw UsageError("config: 'functionals' must be an array");
  c.random_functionals = get_count(j, "random_functionals", 0);
  c.max_atoms = get_count(j, "max_atoms", 1);
  c.paths = get_count(j, "paths", 1);
  c.n_inner = get_count(j, "n_inner", 1);
  if (c.functionals.empty() && c.random_functionals == 0) {
    throw UsageError("config: no functionals (set 'functionals' or 'random_functionals')");
  }
  c.checks = get<std::vector<std::string>>(j, "checks");
  c.report = get<std::string>(j, "report");
  c.summary = get<std::string>(j, "summary");
  c.csv = get<std::string>(j, "csv");
  c.process_csv = get<std::string>(j, "process_csv");
  const long long workers = get<long long>(j, "workers");
  if (workers < 0) throw UsageError("config: 'workers' must be >= 0");
  c.workers = workers == 0 ? static_cast<int>(std::max(1u, std::thread::hardware_concurrency()))
                           : static_cast<int>(workers);
  return c;
}

json load_layers(const std::string& config_path, const std::string& overrides_json) {
  json cfg = defaults();
  if (const char* env = std::getenv("YEHFEYNMAN_SEED"); env && *env) {
    char* end = nullptr;
    const unsigned long long seed = std::strtoull(env, &end, 10);
    if (*end != '\0' || env[0] == '-') throw UsageError("YEHFEYNMAN_SEED is not a nonnegative integer");
    cfg["seed"] = static_cast<std::uint64_t>(seed);
  }
  auto layer = [&](const std::string& text, const std::string& what) {
    json patch;
    try {
      patch = json::parse(text);
    } catch (const json::parse_error& e) {
      throw UsageError(what + ": " + e.what());
    }
    if (!patch.is_object()) throw UsageError(what + ": expected a JSON object");
    cfg.merge_patch(patch);
  };
  if (!config_path.empty()) {
    std::string text;
    try {
      text = read_text_file(config_path);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    layer(text, "config file");
  }
  if (!overrides_json.empty()) layer(overrides_json, "overrides");
  // merge_patch drops keys set to null; restore their defaults.
  const json base = defaults();
  for (const auto& [key, value] : base.items()) {
    if (!cfg.contains(key)) cfg[key] = value;
  }
  return cfg;
}

struct Family {
  std::string label;
  std::vector<GridFunction> kernels;
};

struct NamedFunctional {
  std::string label;
  CylinderFunctional F;
};

struct Context {
  Config cfg;
  std::vector<Family> families;
  std::vector<NamedFunctional> functionals;
  std::vector<SheetPath> ys;
  std::vector<std::string> warnings;
};

Context build_context(Config cfg) {
  Context ctx{std::move(cfg), {}, {}, {}, {}};
  const GridSpec& grid = ctx.cfg.grid;
  for (const auto& spec : ctx.cfg.kernels) {
    try {
      ctx.families.push_back({spec, resolve_kernels(spec, grid)});
    } catch (const Error& e) {
      throw UsageError("kernel '" + spec + "': " + e.what());
    }
    const auto& fam = ctx.families.back();
    for (std::size_t k = 0; k < fam.kernels.size(); ++k) {
      if (const auto zeros = count_zero_cells(fam.kernels[k]); zeros > 0) {
        ctx.warnings.push_back("kernel " + spec + "[" + std::to_string(k) + "] vanishes at " +
                               std::to_string(zeros) + " midpoints");
      }
    }
  }
  std::size_t index = 0;
  for (const auto& entry : ctx.cfg.functionals) {
    const std::string label = "F" + std::to_string(index++);
    try {
      if (entry.is_string()) {
        ctx.functionals.push_back({label, read_functional(entry.get<std::string>(), grid)});
      } else {
        ctx.functionals.push_back({label, parse_functional(entry.dump(), grid)});
      }
    } catch (const Error& e) {
      throw UsageError("functional " + label + ": " + e.what());
    }
  }
  InputSampler in(ctx.cfg.seed);
  for (std::size_t k = 0; k < ctx.cfg.random_functionals; ++k) {
    ctx.functionals.push_back(
        {"F" + std::to_string(index++), random_functional(grid, ctx.cfg.max_atoms, in)});
  }
  ctx.ys = sample_paths(grid, RngStream{ctx.cfg.seed, kStreamPaths}, ctx.cfg.paths);
  return ctx;
}

struct Outcome {
  std::string name;
  std::string label;
  std::optional<CheckReport> report;
  std::string error_code;
  std::string error_message;
};

using CaseFn = std::function<CheckReport()>;

class Plan {
 public:
  explicit Plan(const std::vector<std::string>& selected) : selected_(selected) {}
  void add(const std::string& name, std::string label, CaseFn fn) {
    if (std::find(selected_.begin(), selected_.end(), name) == selected_.end()) return;
    cases_.push_back({name, std::move(label), std::move(fn)});
  }
  std::vector<Outcome> run() const {
    std::vector<Outcome> out;
    for (const auto& c : cases_) {
      Outcome o{c.name, c.label, std::nullopt, "", ""};
      try {
        o.report = c.fn();
      } catch (const Error& e) {
        o.error_code = to_string(e.code());
        o.error_message = e.what();
      }
      out.push_back(std::move(o));
    }
    return out;
  }

 private:
  struct Case {
    std::string name;
    std::string label;
    CaseFn fn;
  };
  std::vector<std::string> selected_;
  std::vector<Case> cases_;
};

GridFunction constant(const GridSpec& g, double v) { return GridFunction::constant(g, v); }

void plan_simulate(const Context& ctx, Plan& plan) {
  const auto& c = ctx.cfg;
  const GridSpec& g = c.grid;
  plan.add("pwz_identity", "random", [&ctx, g] {
    InputSampler in(ctx.cfg.seed ^ mix64(kStreamPwz));
    std::vector<GridFunction> alphas, hs;
    std::vector<SheetPath> xs;
    for (std::size_t k = 0; k < ctx.cfg.paths; ++k) {
      alphas.push_back(random_atom(g, in));
      hs.push_back(random_kernel(g, in));
      xs.push_back(sample_sheet(g, RngStream{ctx.cfg.seed, kStreamPwz}, k));
    }
    return check_pwz_identity(alphas, hs, xs);
  });
  const std::pair<const char*, const char*> vs[] = {
      {"v=1", "1"}, {"v=st", "s*t"}, {"v=sin-sin", "sin(2*pi*s/S)*sin(2*pi*t/T)"}};
  std::uint64_t k = 0;
  for (const auto& [label, expr] : vs) {
    const std::string text = expr;
    const RngStream rng = RngStream{c.seed, kStreamGaussian}.substream(k++);
    plan.add("gaussian_law", label, [&ctx, g, text, rng] {
      static constexpr double kAlphas[] = {0.5, 1.0, 2.0};
      return check_gaussian_law(sample_expression(text, g), kAlphas, ctx.cfg.samples, rng,
                                CheckOptions{0.0, 0.0, ctx.cfg.workers});
    });
  }
}

void plan_integrate(const Context& ctx, Plan& plan) {
  plan.add("mc_consistency", "all", [&ctx] {
    std::vector<McTarget> targets;
    for (const auto& f : ctx.functionals) {
      for (const auto& fam : ctx.families) {
        for (const auto& h : fam.kernels) targets.push_back({&f.F, &h, ctx.cfg.lambda});
      }
    }
    return check_mc_consistency_batch(targets, ctx.cfg.samples, RngStream{ctx.cfg.seed, kStreamMc},
                                      CheckOptions{0.0, 0.0, ctx.cfg.workers});
  });
}

void plan_fubini(const Context& ctx, Plan& plan) {
  for (const auto& f : ctx.functionals) {
    for (const auto& fam : ctx.families) {
      plan.add("fubini", f.label + "/" + fam.label,
               [&ctx, &f, &fam] { return check_fubini(f.F, fam.kernels, ctx.cfg.q); });
    }
  }
  const auto& f0 = ctx.functionals.front();
  std::uint64_t k = 0;
  for (const auto& fam : ctx.families) {
    if (fam.kernels.size() < 2) continue;
    const RngStream rng = RngStream{ctx.cfg.seed, kStreamTwoStage}.substream(k++);
    plan.add("two_stage_mc", f0.label + "/" + fam.label, [&ctx, &f0, &fam, rng] {
      return check_two_stage_mc(f0.F, fam.kernels[0], fam.kernels[1], ctx.cfg.lambda,
                                ctx.cfg.samples, ctx.cfg.n_inner, rng,
                                CheckOptions{0.0, 0.0, ctx.cfg.workers});
    });
  }
}

void plan_transform(const Context& ctx, Plan& plan) {
  const double q = ctx.cfg.q;
  for (const auto& f : ctx.functionals) {
    for (const auto& fam : ctx.families) {
      const std::string label = f.label + "/" + fam.label;
      plan.add("inverse", label,
               [&f, &fam, q] { return check_inverse(f.F, combine_kernels(fam.kernels), q); });
    }
    plan.add("transform_q_composition", f.label + "/" + ctx.families.front().label, [&ctx, &f] {
      return check_transform_q_composition(f.F, combine_kernels(ctx.families.front().kernels),
                                           ctx.cfg.qs, ctx.ys);
    });
    for (const auto& fam : ctx.families) {
      const std::string label = f.label + "/" + fam.label;
      plan.add("transform_kernel_composition", label, [&ctx, &f, &fam, q] {
        return check_transform_kernel_composition(f.F, fam.kernels, q, ctx.ys);
      });
      plan.add("transform_mixed", label, [&ctx, &f, &fam, q] {
        const GridFunction s[] = {combine_kernels(fam.kernels)};
        return check_transform_mixed(f.F, fam.kernels, s, q, 2.0 * q, ctx.ys);
      });
    }
  }
}

void plan_convolution(const Context& ctx, Plan& plan) {
  const GridSpec& g = ctx.cfg.grid;
  const double q = ctx.cfg.q;
  const auto& F = ctx.functionals.front().F;
  const auto& G = ctx.functionals[1 % ctx.functionals.size()].F;
  const auto pair = preset_kernels("k1k2-pair", g);  // k1, k2, h

  struct Triple {
    const char* label;
    GridFunction h, k1, k2;
  };
  const std::vector<Triple> triples = {
      {"unit", constant(g, 1), constant(g, 1), constant(g, 1)},
      {"k1k2-pair", pair[2], pair[0], pair[1]},
      {"constants", constant(g, 1), constant(g, 2), constant(g, 0.5)},
  };
  for (const auto& t : triples) {
    plan.add("relationship_I", t.label, [&ctx, &F, &G, t, q] {
      return check_relationship_I(F, G, t.h, t.k1, t.k2, q, ctx.ys);
    });
    plan.add("relationship_II", t.label, [&ctx, &F, &G, t, q] {
      return check_relationship_II(F, G, t.h, t.k1, t.k2, q, ctx.ys);
    });
  }

  const auto trig = preset_kernels("trig-pair", g);
  const auto h4 = preset_kernels("H4", g);
  const GridFunction sh4 = combine_kernels(h4);
  plan.add("relationship_II_extended", "trig-pair", [&ctx, &F, &G, trig, g, q] {
    return check_relationship_II_extended(F, G, trig, constant(g, 1), constant(g, 1), q, ctx.ys);
  });
  plan.add("relationship_II_extended", "H4", [&ctx, &F, &G, h4, sh4, g, q] {
    return check_relationship_II_extended(F, G, h4, pointwise_mul(sh4, sh4), constant(g, 1), q,
                                          ctx.ys);
  });

  plan.add("relationship_II_dual_families", "trig-pair/one", [&ctx, &F, &G, trig, g, q] {
    const GridFunction one[] = {constant(g, 1)};
    return check_relationship_II_dual_families(F, G, constant(g, 1), trig, one, q, ctx.ys);
  });
  plan.add("relationship_II_dual_families", "k1k2-split", [&ctx, &F, &G, pair, q] {
    const double r = 1.0 / std::numbers::sqrt2;
    const GridFunction K1[] = {pair[0].scaled(r), pair[0].scaled(r)};
    const GridFunction K2[] = {pair[1].scaled(0.6), pair[1].scaled(0.8)};
    return check_relationship_II_dual_families(F, G, pair[2], K1, K2, q, ctx.ys);
  });
}

std::string complex_text(complex z) { return format_double(z.real()) + "," + format_double(z.imag()); }

json complex_json(const std::vector<complex>& zs) {
  json out = json::array();
  for (const auto& z : zs) out.push_back({z.real(), z.imag()});
  return out;
}

std::vector<std::string> selected_checks(const Config& cfg, std::string_view command) {
  std::vector<std::string> allowed;
  if (command == "suite") {
    allowed = check_names();
  } else {
    allowed = command_checks().find(command)->second;
  }
  if (cfg.checks.empty()) return allowed;
  for (const auto& name : cfg.checks) {
    if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
      throw UsageError("check '" + name + "' is not available for command '" +
                       std::string(command) + "'");
    }
  }
  return cfg.checks;
}

}  // namespace

std::vector<std::string> command_names() {
  return {"simulate", "integrate", "fubini", "transform", "convolution", "suite"};
}

std::vector<std::string> check_names() {
  std::vector<std::string> out;
  for (const char* cmd : {"simulate", "integrate", "fubini", "transform", "convolution"}) {
    for (const auto& n : command_checks().find(cmd)->second) out.push_back(n);
  }
  return out;
}

std::string default_config_json() { return defaults().dump(2); }

RunResult run_command(std::string_view command, const std::string& config_path,
                      const std::string& overrides_json) {
  RunResult result;
  const auto cmds = command_names();
  if (std::find(cmds.begin(), cmds.end(), command) == cmds.end()) {
    result.exit_code = kExitUsage;
    result.error = "unknown command '" + std::string(command) + "'";
    return result;
  }

  std::optional<Context> ctx;
  std::vector<std::string> selected;
  try {
    Config cfg = parse_config(load_layers(config_path, overrides_json));
    selected = selected_checks(cfg, command);
    ctx.emplace(build_context(std::move(cfg)));
  } catch (const UsageError& e) {
    result.exit_code = kExitUsage;
    result.error = e.what();
    return result;
  } catch (const Error& e) {
    result.exit_code = kExitError;
    result.error = std::string(to_string(e.code())) + ": " + e.what();
    return result;
  }
  const Config& cfg = ctx->cfg;

  Plan plan(selected);
  const bool all = command == "suite";
  if (all || command == "simulate") plan_simulate(*ctx, plan);
  if (all || command == "integrate") plan_integrate(*ctx, plan);
  if (all || command == "fubini") plan_fubini(*ctx, plan);
  if (all || command == "transform") plan_transform(*ctx, plan);
  if (all || command == "convolution") plan_convolution(*ctx, plan);
  const auto outcomes = plan.run();

  std::string rep = "yehfeynman report\n";
  rep += "command=" + std::string(command) + " seed=" + std::to_string(cfg.seed) +
         " samples=" + std::to_string(cfg.samples) + " grid=" + format_double(cfg.grid.S()) +
         "x" + format_double(cfg.grid.T()) + ":" + std::to_string(cfg.grid.ns()) + "x" +
         std::to_string(cfg.grid.nt()) + " q=" + format_double(cfg.q) +
         " lambda=" + format_double(cfg.lambda) + "\n";
  for (const auto& w : ctx->warnings) rep += "warning " + w + "\n";

  json summary = {{"command", command},
                  {"seed", cfg.seed},
                  {"samples", cfg.samples},
                  {"grid", {{"S", cfg.grid.S()}, {"T", cfg.grid.T()}, {"ns", cfg.grid.ns()}, {"nt", cfg.grid.nt()}}},
                  {"warnings", ctx->warnings},
                  {"checks", json::array()}};
  std::size_t passed = 0, failed = 0, errors = 0;
  for (const auto& o : outcomes) {
    json entry = {{"name", o.name}, {"case", o.label}};
    if (!o.report) {
      ++errors;
      rep += "check=" + o.name + " case=" + o.label + " status=error code=" + o.error_code +
             " message=\"" + o.error_message + "\"\n";
      entry["status"] = "error";
      entry["code"] = o.error_code;
      entry["message"] = o.error_message;
      summary["checks"].push_back(entry);
      continue;
    }
    const auto& r = *o.report;
    (r.passed ? passed : failed)++;
    const char* status = r.passed ? "pass" : "fail";
    rep += "check=" + o.name + " case=" + o.label + " mode=" + to_string(r.mode) +
           " status=" + status + " max_abs_diff=" + format_double(r.max_abs_diff) +
           " threshold=" + format_double(r.threshold) + "\n";
    for (const auto& [k, v] : r.metadata) rep += "  " + k + "=" + v + "\n";
    const std::size_t shown = std::min<std::size_t>(r.lhs.size(), 3);
    for (std::size_t i = 0; i < shown; ++i) {
      rep += "  lhs[" + std::to_string(i) + "]=" + complex_text(r.lhs[i]) + " rhs[" +
             std::to_string(i) + "]=" + complex_text(r.rhs[i]) + "\n";
    }
    entry["status"] = status;
    entry["mode"] = to_string(r.mode);
    entry["max_abs_diff"] = r.max_abs_diff;
    entry["threshold"] = r.threshold;
    entry["lhs"] = complex_json(r.lhs);
    entry["rhs"] = complex_json(r.rhs);
    json meta = json::object();
    for (const auto& [k, v] : r.metadata) meta[k] = v;
    entry["metadata"] = meta;
    summary["checks"].push_back(entry);
  }

  result.exit_code = errors ? kExitError : failed ? kExitFail : kExitPass;

  // Command outputs beyond the checks.
  try {
    if (command == "simulate" && (!cfg.csv.empty() || !cfg.process_csv.empty())) {
      const SheetPath x = sample_sheet(cfg.grid, RngStream{cfg.seed, kStreamDump}, 0);
      if (!cfg.csv.empty()) write_path_csv(cfg.csv, x);
      if (!cfg.process_csv.empty()) {
        write_path_csv(cfg.process_csv, gaussian_path(ctx->families.front().kernels.front(), x));
      }
    }
    if (command == "integrate") {
      const auto& f = ctx->functionals.front();
      const auto& h = ctx->families.front().kernels.front();
      const RngStream rng{cfg.seed, kStreamTrace};
      const auto checkpoints = convergence_checkpoints(cfg.samples);
      const auto trace = yeh_wiener_mc_trace(f.F, h, cfg.lambda, cfg.samples, rng, checkpoints,
                                             McOptions{cfg.workers});
      const complex closed = closed_form_real_lambda(f.F, h, cfg.lambda);
      const complex feyn = feynman_closed_form(f.F, h, cfg.q);
      rep += "estimate functional=" + f.label + " kernel=" + ctx->families.front().label +
             "[0] " + estimate_json(trace.back()) + "\n";
      rep += "  closed_form_real_lambda=" + complex_text(closed) + "\n";
      rep += "  feynman_closed_form=" + complex_text(feyn) + "\n";
      summary["estimate"] = json::parse(estimate_json(trace.back()));
      summary["closed_form_real_lambda"] = {closed.real(), closed.imag()};
      summary["feynman_closed_form"] = {feyn.real(), feyn.imag()};
      if (!cfg.csv.empty()) write_text_file(cfg.csv, convergence_csv(trace));
    }
  } catch (const Error& e) {
    ++errors;
    result.exit_code = kExitError;
    result.error = std::string(to_string(e.code())) + ": " + e.what();
    rep += "output status=error code=" + std::string(to_string(e.code())) + " message=\"" +
           e.what() + "\"\n";
  }

  rep += "summary total=" + std::to_string(outcomes.size()) + " passed=" + std::to_string(passed) +
         " failed=" + std::to_string(failed) + " errors=" + std::to_string(errors) + "\n";
  summary["passed"] = passed;
  summary["failed"] = failed;
  summary["errors"] = errors;
  summary["exit_code"] = result.exit_code;
  result.report = std::move(rep);
  result.summary_json = summary.dump(2) + "\n";

  try {
    if (!cfg.report.empty()) write_text_file(cfg.report, result.report);
    if (!cfg.summary.empty()) write_text_file(cfg.summary, result.summary_json);
  } catch (const Error& e) {
    result.exit_code = kExitError;
    result.error = std::string(to_string(e.code())) + ": " + e.what();
  }
  return result;
}

}  // namespace yf
