#pragma once

#include <string>

#include "ptf/polynomial.hpp"

namespace ptf {

// Line-oriented PTF text format:
//   PTF v1
//   n=<int> theta=<decimal>
//   <coefficient> : <i1> <i2> ... <ik>
// Indices ascending, a repeated index encodes multiplicity, an empty index
// list is the constant term. Lines starting with '#' are comments.
// Coefficients are written with 17 significant digits so they round-trip to
// the same binary value.
std::string serialize(const Ptf& f);
std::string serialize(const Polynomial& p);

Ptf parse_ptf(const std::string& text);

Ptf load_ptf_file(const std::string& path);
void save_ptf_file(const Ptf& f, const std::string& path);

}  // namespace ptf
