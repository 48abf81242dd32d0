// kwproto :: function files
//
//   n=3
//   zeros:
//   000
//   ones:
//   111

#pragma once

#include <ostream>

#include "kwproto/function.hpp"
#include "kwproto/io/reader.hpp"

namespace kwproto::io {

inline BitString parse_bits(Cursor& c) {
  auto w = c.word();
  try {
    return BitString::parse(w);
  } catch (const InputError&) {
    c.fail("malformed bit string '" + std::string(w) + "'", c.last_column() + w.find_first_not_of("01"));
  }
}

inline PartialMonotoneFunction parse_function(std::istream& in) {
  auto lines = read_lines(in);
  if (lines.empty()) throw ParseError(1, 1, "empty function file");
  Cursor& head = lines.front();
  auto h = head.word();
  std::size_t n = 0;
  if (h.substr(0, 2) != "n=") head.fail("expected 'n=<int>'", head.last_column());
  {
    Cursor num(std::string(h.substr(2)), head.line());
    n = num.number();
  }
  head.expect_end();
  if (n == 0) head.fail("n must be positive", 1);

  std::vector<BitString> zeros, ones;
  std::vector<BitString>* section = nullptr;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    Cursor& c = lines[i];
    c.skip_space();
    std::size_t col = c.column();
    auto w = c.word();
    if (w == "zeros:") {
      section = &zeros;
    } else if (w == "ones:") {
      section = &ones;
    } else {
      if (!section) c.fail("bit string outside a 'zeros:' or 'ones:' section", col);
      BitString s;
      try {
        s = BitString::parse(w);
      } catch (const InputError&) {
        c.fail("malformed bit string '" + std::string(w) + "'", col + w.find_first_not_of("01"));
      }
      if (s.size() != n) c.fail("bit string has length " + std::to_string(s.size()) + ", expected " + std::to_string(n), col);
      section->push_back(std::move(s));
    }
    c.expect_end();
  }
  try {
    return PartialMonotoneFunction(n, std::move(zeros), std::move(ones));
  } catch (const InputError& e) {
    throw ParseError(head.line(), 1, e.what());
  }
}

inline void write_function(std::ostream& os, const PartialMonotoneFunction& f) {
  os << "n=" << f.n() << "\nzeros:\n";
  for (const auto& s : f.zeros()) os << s << '\n';
  os << "ones:\n";
  for (const auto& s : f.ones()) os << s << '\n';
}

}  // namespace kwproto::io
