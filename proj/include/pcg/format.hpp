#pragma once

#include <iosfwd>
#include <string>

#include "pcg/presentation.hpp"

namespace pcg {

/// Parse error with a 1-based line number.
class ParseError : public InputError {
public:
  ParseError(std::size_t line, const std::string& msg)
      : InputError("line " + std::to_string(line) + ": " + msg), line_number(line) {}
  std::size_t line_number;
};

/// Portable text format, one relation per line, '#' comments:
///   p <prime>
///   gens <n>
///   relorder <i> <e_i>                      (every generator exactly once)
///   pow <i> : <j1>^<k1> <j2>^<k2> ...       (g_i^{p^{e_i}} = product; empty = identity)
///   comm <j> <i> : <j1>^<k1> ...            ([g_j, g_i], j > i; omitted = trivial)
/// Directives must appear in the order p, gens, relorder*, then pow/comm.
/// Parsing is strict: unknown directives, duplicates, index or support
/// violations all raise ParseError.
PcPresentation read_presentation(std::istream& in);
PcPresentation read_presentation_file(const std::string& path);

/// Canonical serialization: relorder lines ascending, only nontrivial
/// tails, commutators sorted by (j, i). Re-exporting a parsed file
/// reproduces it byte for byte.
void write_presentation(std::ostream& out, const PcPresentation& pres);
std::string presentation_to_string(const PcPresentation& pres);
void write_presentation_file(const std::string& path, const PcPresentation& pres);

} // namespace pcg
