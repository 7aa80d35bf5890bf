#pragma once

#include <iosfwd>
#include <string>

#include "swfa/sampling.hpp"
#include "swfa/wfa.hpp"

namespace swfa::io {

using sampling::Sample;
using wfa::LinearRepresentation;

// "wfa v1" model text format:
//   wfa v1
//   alphabet <sym> <sym> ...
//   dim <d>
//   initial <d floats>
//   final <d floats>
//   matrix <sym>
//   <d rows of d floats>      (one block per symbol)
// '#' starts a comment; floats use decimal notation with optional exponent.
LinearRepresentation parse_model(std::istream& in, const std::string& name = "<stream>");
LinearRepresentation load_model(const std::string& path);
void render_model(std::ostream& out, const LinearRepresentation& rep);
void save_model(const std::string& path, const LinearRepresentation& rep);

// Sample files: header "# sample model=<id> seed=<s> n=<n>", then one
// string per line with space-separated symbols; an empty line is epsilon.
void render_sample(std::ostream& out, const Sample& s, const lang::Alphabet& alphabet);
void save_sample(const std::string& path, const Sample& s, const lang::Alphabet& alphabet);
Sample parse_sample(std::istream& in, const lang::Alphabet& alphabet,
                    const std::string& name = "<stream>");
Sample load_sample(const std::string& path, const lang::Alphabet& alphabet);

// CSV number formatting: 6 significant digits by default, 10 for t values.
std::string csv_num(double x, int significant_digits = 6);

}  // namespace swfa::io
