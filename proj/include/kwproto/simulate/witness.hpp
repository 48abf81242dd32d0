// kwproto :: bit decomposition of inequalities, witness tuples, χ terms, Φ labels

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kwproto/label.hpp"

namespace kwproto {

// The position i with a[1..i−1] = b[1..i−1], a[i] = 0, b[i] = 1, which
// exists exactly when a < b as unsigned numbers.
inline std::optional<std::size_t> decompose_inequality(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) throw InputError("decompose_inequality: length mismatch");
  if (a.empty()) throw InputError("decompose_inequality: empty strings");
  for (std::size_t i = 1; i <= a.size(); ++i) {
    if (a.bit(i) == b.bit(i)) continue;
    if (!a.bit(i)) return i;
    return std::nullopt;
  }
  return std::nullopt;
}

// I = (i_1, …, i_c), one first-difference position per inequality.
struct WitnessTuple {
  std::vector<std::size_t> entries;

  std::size_t arity() const { return entries.size(); }
  std::size_t operator[](std::size_t j) const { return entries[j]; }

  friend bool operator==(const WitnessTuple&, const WitnessTuple&) = default;
  friend auto operator<=>(const WitnessTuple&, const WitnessTuple&) = default;
};

// All of [w]^c in lexicographic order.
inline std::vector<WitnessTuple> all_witness_tuples(std::size_t c, std::size_t w) {
  std::vector<WitnessTuple> out;
  WitnessTuple t{std::vector<std::size_t>(c, 1)};
  while (true) {
    out.push_back(t);
    std::size_t j = c;
    while (j > 0 && t.entries[j - 1] == w) t.entries[--j] = 1;
    if (j == 0) break;
    ++t.entries[j - 1];
  }
  return out;
}

// A label read as a conjunction of inequalities: an inequality is one of arity 1.
inline std::vector<TablePair> conjunction_pairs(const FeasibilityLabel& label) {
  if (auto* l = std::get_if<InequalityLabel>(&label)) return {l->tables};
  if (auto* l = std::get_if<ConjunctionLabel>(&label)) return l->pairs;
  throw PreconditionError(std::string("expected an inequality or conjunction label, got ") + label_kind(label));
}

// Witness of a conjunction vertex for (x, y), present iff the vertex is feasible.
inline std::optional<WitnessTuple> witnesses(const std::vector<TablePair>& pairs, std::size_t width,
                                             const BitString& x, const BitString& y) {
  WitnessTuple out;
  for (const auto& tp : pairs) {
    auto i = decompose_inequality(value_bits(tp.q->at(x), width), value_bits(tp.r->at(y), width));
    if (!i) return std::nullopt;
    out.entries.push_back(*i);
  }
  return out;
}

enum class Chi : std::uint8_t { eq, ne, lt, gt };

// Appends χ for one bit pair a (x-side) / b (y-side):
//   =  : a = b          ≠ : a = 1−b
//   <  : a = 0 ∧ 1 = b  > : a = 1 ∧ 0 = b
inline void append_chi(BitEqualityConjunction& out, const BitTerm& a, const BitTerm& b, Chi kind) {
  switch (kind) {
    case Chi::eq:
      out.add(a, b);
      break;
    case Chi::ne:
      out.add(a, b.flipped());
      break;
    case Chi::lt:
      out.add(a, BitTerm::constant(false));
      out.add(BitTerm::constant(true), b);
      break;
    case Chi::gt:
      out.add(a, BitTerm::constant(true));
      out.add(BitTerm::constant(false), b);
      break;
  }
}

inline void append_table_chi(BitEqualityConjunction& out, const TablePair& tp, std::size_t width, std::size_t position, Chi kind) {
  append_chi(out, BitTerm::table_bit(tp.q, width, position), BitTerm::table_bit(tp.r, width, position), kind);
}

// Φ^I: for each j, equalities on bits 1..i_j−1 followed by the < term at i_j.
inline BitEqualityConjunction phi_label(const std::vector<TablePair>& pairs, std::size_t width, const WitnessTuple& I) {
  if (I.arity() != pairs.size()) throw InputError("phi_label: witness arity differs from conjunction arity");
  BitEqualityConjunction out;
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    if (I[j] < 1 || I[j] > width) throw InputError("phi_label: witness entry out of range");
    for (std::size_t k = 1; k < I[j]; ++k) append_table_chi(out, pairs[j], width, k, Chi::eq);
    append_table_chi(out, pairs[j], width, I[j], Chi::lt);
  }
  return out;
}

}  // namespace kwproto
