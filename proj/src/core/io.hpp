#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "algebra.hpp"
#include "feynman.hpp"
#include "sheet.hpp"

namespace yf {

// Functional documents:
//   {"grid": {"S":1,"T":1,"ns":64,"nt":64},            (optional)
//    "atoms": [{"weight_re": 0.5, "weight_im": 0, "atom": "sin(pi*s)*t"},
//              {"weight_re": 1, "weight_im": -1, "atom": [v_0, ..., v_{ns*nt-1}]}]}
// Expression atoms are sampled on `grid`; value arrays must have ns*nt
// entries and, when the document names a grid, that grid must equal `grid`.
CylinderFunctional parse_functional(std::string_view json_text, const GridSpec& grid);
CylinderFunctional read_functional(const std::string& path, const GridSpec& grid);

// Atoms are written as value arrays.
std::string functional_to_json(const CylinderFunctional& F);
void write_functional(const std::string& path, const CylinderFunctional& F);

// Node values with header "s,t,value".
std::string path_csv(const SheetPath& x);
void write_path_csv(const std::string& path, const SheetPath& x);

// {"mean_re":..,"mean_im":..,"se_re":..,"se_im":..,"n":..,"seed":..}
std::string estimate_json(const MCEstimate& e);

// 2, 4, 8, ... below n, then n.
std::vector<std::size_t> convergence_checkpoints(std::size_t n);

// Header "n,mean_re,mean_im,se_re,se_im", one row per estimate.
std::string convergence_csv(const std::vector<MCEstimate>& trace);

// Throws io-error when the file cannot be written.
void write_text_file(const std::string& path, std::string_view text);
std::string read_text_file(const std::string& path);

// Shortest round-trip decimal form of a double.
std::string format_double(double v);

}  // namespace yf
