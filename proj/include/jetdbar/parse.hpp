#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "jetdbar/ratfunc.hpp"

namespace jetdbar {

/// Malformed expression or input file; `position` is a 0-based offset.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at offset " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

/// Resolve a variable token such as "z1", "zb2", "t1" under a naming table.
std::optional<Var> lookup_variable(std::string_view token, const NameTable& names);

/// Parse an expression over Q(i): integers, i, variables, + - * / ^ and parentheses.
RatFunc parse_rational(std::string_view text, const NameTable& names = NameTable::jet());
/// As parse_rational, but rejects a non-polynomial result.
Poly parse_poly(std::string_view text, const NameTable& names = NameTable::jet());

}  // namespace jetdbar
