#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "wsat/cnf.hpp"

namespace wsat {

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& message, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

struct ParseOptions {
  /// When set, clauses must have exactly the declared arity d and at least
  /// the declared dprime negated literals (keys taken from the header
  /// comments). Off by default so hand-written formulas with unit or
  /// mixed-arity clauses remain usable.
  bool strict = false;
};

/// Reads the instance format:
///
///   c key=value            recognized: k, n, d, dprime, p, c, seed, model
///   p cnf <n> <m>
///   <m> clause lines of nonzero integers, each terminated by 0
///
/// Negative integers are negated literals. Generation parameters are
/// attached when the comments carry d, dprime, seed and one of p or c.
Instance parse_dimacs(std::string_view text, const ParseOptions& options = {});
Instance parse_dimacs(std::istream& in, const ParseOptions& options = {});

/// Canonical text form; parse_dimacs is a left inverse. Comments carry the
/// weight target and, for generated instances, the model parameters
/// (authoritative p or c only; the derived one is recomputed on parse).
std::string serialize_dimacs(const Instance& instance);

} // namespace wsat
