// yehfeynman command-line front end. All work happens behind the C API; this
// file only turns flags into a JSON override document.
#include <cstdio>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "yehfeynman.h"

namespace {

constexpr int kUsage = 2;

bool parse_grid(const std::string& text, int& ns, int& nt) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) return false;
  try {
    std::size_t a = 0, b = 0;
    ns = std::stoi(text.substr(0, x), &a);
    nt = std::stoi(text.substr(x + 1), &b);
    return a == x && b == text.size() - x - 1 && ns > 0 && nt > 0;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analytic Yeh-Feynman integrals, transforms and convolution products: "
               "closed forms, Brownian-sheet Monte Carlo and identity checks."};
  app.set_version_flag("--version", yf_version());

  std::string command;
  std::string config, csv, process_csv, report, summary, grid;
  std::vector<std::string> checks, kernels;
  std::uint64_t seed = 0, samples = 0;
  double q = 0.0, lambda = 0.0;
  int workers = 0;
  bool print_config = false, quiet = false;

  app.add_option("command", command,
                 "simulate | integrate | fubini | transform | convolution | suite");
  app.add_option("--config", config, "JSON configuration file");
  auto* o_seed = app.add_option("--seed", seed, "Base seed (default: $YEHFEYNMAN_SEED or 20261017)");
  auto* o_samples = app.add_option("--samples", samples, "Monte Carlo sample count");
  auto* o_grid = app.add_option("--grid", grid, "Cells as NSxNT, e.g. 64x64");
  auto* o_q = app.add_option("--q", q, "Feynman parameter q (nonzero)");
  auto* o_lambda = app.add_option("--lambda", lambda, "Real parameter lambda (> 0)");
  app.add_option("--check", checks, "Restrict to this check (repeatable)");
  app.add_option("--kernel", kernels, "Kernel preset or expression in s,t (repeatable)");
  auto* o_csv = app.add_option("--csv", csv, "Convergence CSV (integrate) or sheet CSV (simulate)");
  auto* o_pcsv = app.add_option("--process-csv", process_csv, "Process path CSV (simulate)");
  auto* o_report = app.add_option("--report", report, "Write the text report here");
  auto* o_summary = app.add_option("--summary", summary, "Write the JSON summary here");
  auto* o_workers = app.add_option("--workers", workers, "Worker threads (default: all cores)")
                        ->check(CLI::PositiveNumber);
  app.add_flag("--print-config", print_config, "Print the built-in defaults and exit");
  app.add_flag("--quiet", quiet, "Do not print the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  if (print_config) {
    char* text = nullptr;
    if (yf_default_config(&text) != YF_OK) return 3;
    std::printf("%s\n", text);
    yf_string_free(text);
    return 0;
  }
  if (command.empty()) {
    std::fprintf(stderr, "error: a command is required\n%s", app.help().c_str());
    return kUsage;
  }

  nlohmann::json over = nlohmann::json::object();
  if (*o_seed) over["seed"] = seed;
  if (*o_samples) over["samples"] = samples;
  if (*o_grid) {
    int ns = 0, nt = 0;
    if (!parse_grid(grid, ns, nt)) {
      std::fprintf(stderr, "error: --grid expects NSxNT with positive integers\n");
      return kUsage;
    }
    over["grid"] = {{"ns", ns}, {"nt", nt}};
  }
  if (*o_q) over["q"] = q;
  if (*o_lambda) over["lambda"] = lambda;
  if (!checks.empty()) over["checks"] = checks;
  if (!kernels.empty()) over["kernels"] = kernels;
  if (*o_csv) over["csv"] = csv;
  if (*o_pcsv) over["process_csv"] = process_csv;
  if (*o_report) over["report"] = report;
  if (*o_summary) over["summary"] = summary;
  over["workers"] = *o_workers ? workers
                               : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  yf_run_result* result = nullptr;
  if (yf_run(command.c_str(), config.empty() ? nullptr : config.c_str(), over.dump().c_str(),
             &result) != YF_OK) {
    std::fprintf(stderr, "error: %s\n", yf_last_error());
    return 3;
  }
  const int code = yf_run_exit_code(result);
  if (!quiet) std::fputs(yf_run_report(result), stdout);
  if (*yf_run_error(result)) std::fprintf(stderr, "error: %s\n", yf_run_error(result));
  yf_run_result_free(result);
  return code;
}
