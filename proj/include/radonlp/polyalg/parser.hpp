#pragma once

#include "radonlp/polyalg/multipoly.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace radonlp {

/// Syntax or semantic error in a polynomial expression. `position` is the
/// 0-based character offset of the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position, std::vector<std::string> expected = {})
      : std::runtime_error(what), position(position), expected(std::move(expected)) {}

  std::size_t position;
  std::vector<std::string> expected;
};

/// Parses an expression in the grammar of docs/grammar.md over the given
/// ordered variable names. Throws ParseError.
MultiPoly parse_poly(std::string_view text, const std::vector<std::string>& variables);

}  // namespace radonlp
