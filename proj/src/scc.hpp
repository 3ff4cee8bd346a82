#pragma once

#include <iosfwd>
#include <string>

#include "chain_complex.hpp"

namespace mpc {

// Reads an scc2020 document. The result is validated, colex-normalized and
// carries the original grade text of every generator. Throws ParseError with
// a source position for grammar, range and homogeneity problems, and
// ValidationError when the boundaries do not form a chain complex.
ChainComplex parse_scc(std::istream& in);
ChainComplex parse_scc(const std::string& text);

// Canonical rendering: LF newlines, single spaces, ascending boundary
// indices, grades printed from preserved tokens. parse_scc(write_scc(c)) is
// structurally equal to c.
void write_scc(const ChainComplex& c, std::ostream& out);
std::string write_scc(const ChainComplex& c);

}  // namespace mpc
