// kwproto :: exception types shared by every module

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kwproto {

// A table lookup outside the domain the table was built for.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or unsupported input values (wrong value kind, bad widths, ...).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An operation was called on data that does not meet its stated precondition.
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised by trace when a feasible inner vertex has no feasible child.
struct StuckError : std::runtime_error {
  std::size_t vertex;
  StuckError(std::size_t v, const std::string& what) : std::runtime_error(what), vertex(v) {}
};

// Resource cap hit by the saturation prover.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  std::size_t line;
  std::size_t column;
  ParseError(std::size_t l, std::size_t c, const std::string& msg)
      : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg), line(l), column(c) {}
};

}  // namespace kwproto
