#pragma once

#include <stdexcept>
#include <string>

#include "epc/coeff.hpp"

namespace epc {

// Syntax or model error while reading a coefficient expression; `offset` is
// the byte position in the input where the problem was noticed.
struct ParseError : std::runtime_error {
  size_t offset;
  ParseError(const std::string& what, size_t at)
      : std::runtime_error(what + " (byte " + std::to_string(at) + ")"), offset(at) {}
};

/*
 * Grammar:
 *   expr   := term (('+'|'-') term)*
 *   term   := factor ('*' factor)*
 *   factor := atom ('^' unsigned-int)?
 *   atom   := gaussian-literal | var | char | '(' expr ')'
 *   gaussian-literal := rational ('i')?   rational := int ('/' posint)?
 *   var    := 'z' index | 'zb' index            (chart models only)
 *   char   := 'e[' intlist ';' intlist ']'      (torus models only)
 * Whitespace is insignificant.  Indices are 1-based and checked against the
 * model dimension; both frequency lists must have length n.
 */
CoeffFn parse_expr(const std::string& text, Model model);

}  // namespace epc
