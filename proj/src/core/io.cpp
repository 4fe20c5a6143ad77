#include "io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "error.hpp"
#include "expression.hpp"

namespace yf {
namespace {

using nlohmann::json;

double number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    fail(ErrorCode::ParseError, std::string("functional: missing numeric '") + key + "'");
  }
  return j.at(key).get<double>();
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

CylinderFunctional parse_functional(std::string_view json_text, const GridSpec& grid) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, std::string("functional: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("atoms") || !doc.at("atoms").is_array()) {
    fail(ErrorCode::ParseError, "functional: expected an object with an 'atoms' array");
  }
  bool doc_grid_matches = true;
  if (doc.contains("grid")) {
    const auto& g = doc.at("grid");
    const GridSpec named(number(g, "S"), number(g, "T"), static_cast<int>(number(g, "ns")),
                         static_cast<int>(number(g, "nt")));
    doc_grid_matches = named == grid;
  }
  DiscreteMeasure m(grid);
  for (const auto& a : doc.at("atoms")) {
    if (!a.is_object() || !a.contains("atom")) fail(ErrorCode::ParseError, "functional: atom entry needs 'atom'");
    const complex w(number(a, "weight_re"), a.contains("weight_im") ? number(a, "weight_im") : 0.0);
    const auto& atom = a.at("atom");
    if (atom.is_string()) {
      m.add(w, sample_expression(atom.get<std::string>(), grid));
    } else if (atom.is_array()) {
      if (!doc_grid_matches) fail(ErrorCode::ShapeError, "functional: value array on a different grid");
      std::vector<double> values;
      values.reserve(atom.size());
      for (const auto& v : atom) {
        if (!v.is_number()) fail(ErrorCode::ParseError, "functional: non-numeric atom value");
        values.push_back(v.get<double>());
      }
      m.add(w, GridFunction(grid, std::move(values)));
    } else {
      fail(ErrorCode::ParseError, "functional: 'atom' must be an expression or an array");
    }
  }
  return CylinderFunctional(std::move(m));
}

CylinderFunctional read_functional(const std::string& path, const GridSpec& grid) {
  return parse_functional(read_text_file(path), grid);
}

std::string functional_to_json(const CylinderFunctional& F) {
  const auto& g = F.grid();
  json doc;
  doc["grid"] = {{"S", g.S()}, {"T", g.T()}, {"ns", g.ns()}, {"nt", g.nt()}};
  doc["atoms"] = json::array();
  for (const auto& a : F.atoms()) {
    doc["atoms"].push_back({{"weight_re", a.weight.real()},
                            {"weight_im", a.weight.imag()},
                            {"atom", std::vector<double>(a.u.values().begin(), a.u.values().end())}});
  }
  return doc.dump();
}

void write_functional(const std::string& path, const CylinderFunctional& F) {
  write_text_file(path, functional_to_json(F) + "\n");
}

std::string path_csv(const SheetPath& x) {
  const auto& g = x.grid();
  const auto nodes = x.node_values();
  std::string out = "s,t,value\n";
  const std::size_t stride = static_cast<std::size_t>(g.ns()) + 1;
  for (int j = 0; j <= g.nt(); ++j) {
    for (int i = 0; i <= g.ns(); ++i) {
      out += format_double(i * g.ds()) + "," + format_double(j * g.dt()) + "," +
             format_double(nodes[j * stride + i]) + "\n";
    }
  }
  return out;
}

void write_path_csv(const std::string& path, const SheetPath& x) { write_text_file(path, path_csv(x)); }

std::string estimate_json(const MCEstimate& e) {
  json j = {{"mean_re", e.mean.real()}, {"mean_im", e.mean.imag()}, {"se_re", e.se_re},
            {"se_im", e.se_im},         {"n", e.n},                {"seed", e.seed}};
  return j.dump();
}

std::vector<std::size_t> convergence_checkpoints(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t m = 2; m < n; m *= 2) out.push_back(m);
  if (n >= 2) out.push_back(n);
  return out;
}

std::string convergence_csv(const std::vector<MCEstimate>& trace) {
  std::string out = "n,mean_re,mean_im,se_re,se_im\n";
  for (const auto& e : trace) {
    out += std::to_string(e.n) + "," + format_double(e.mean.real()) + "," +
           format_double(e.mean.imag()) + "," + format_double(e.se_re) + "," +
           format_double(e.se_im) + "\n";
  }
  return out;
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) fail(ErrorCode::IoError, "write to '" + path + "' failed");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace yf
