// kwproto :: feasibility labels and bit-equality conjunctions

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "kwproto/bitstring.hpp"
#include "kwproto/value.hpp"

namespace kwproto {

// One bit computed from a single input string: a constant, an input bit, or
// a bit of a normalized table value. Constants belong to neither side.
class BitTerm {
 public:
  enum class Kind : std::uint8_t { constant, input, table };

  static BitTerm constant(bool b) {
    BitTerm t;
    t.kind_ = Kind::constant;
    t.negated_ = b;
    return t;
  }

  static BitTerm input(Side side, std::size_t position, bool negated = false) {
    BitTerm t;
    t.kind_ = Kind::input;
    t.side_ = side;
    t.position_ = position;
    t.negated_ = negated;
    return t;
  }

  // `position`-th most significant bit of the table value read as a
  // width-bit number.
  static BitTerm table_bit(TablePtr table, std::size_t width, std::size_t position, bool negated = false) {
    if (position < 1 || position > width) throw InputError("table bit position out of range");
    BitTerm t;
    t.kind_ = Kind::table;
    t.side_ = table->side();
    t.position_ = position;
    t.width_ = width;
    t.negated_ = negated;
    t.table_ = std::move(table);
    return t;
  }

  // The same bit, complemented.
  BitTerm flipped() const {
    BitTerm t = *this;
    t.negated_ = !negated_;
    return t;
  }

  Kind kind() const { return kind_; }
  std::optional<Side> side() const {
    if (kind_ == Kind::constant) return std::nullopt;
    return side_;
  }
  bool negated() const { return negated_; }
  bool constant_value() const { return negated_; }
  std::size_t position() const { return position_; }
  std::size_t width() const { return width_; }
  const TablePtr& table() const { return table_; }

  bool eval(const BitString& s) const {
    switch (kind_) {
      case Kind::constant:
        return negated_;
      case Kind::input:
        return s.bit(position_) != negated_;
      case Kind::table:
        return value_bit(table_->at(s), width_, position_) != negated_;
    }
    return false;
  }

  friend bool operator==(const BitTerm& a, const BitTerm& b) { return (a <=> b) == 0; }
  friend std::strong_ordering operator<=>(const BitTerm& a, const BitTerm& b) {
    if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
    if (a.kind_ != Kind::constant)
      if (auto c = a.side_ <=> b.side_; c != 0) return c;
    if (auto c = a.position_ <=> b.position_; c != 0) return c;
    if (auto c = a.width_ <=> b.width_; c != 0) return c;
    if (auto c = a.negated_ <=> b.negated_; c != 0) return c;
    return std::compare_three_way{}(a.table_.get(), b.table_.get());
  }

 private:
  BitTerm() = default;

  Kind kind_ = Kind::constant;
  Side side_ = Side::x;
  bool negated_ = false;
  std::uint32_t position_ = 0;
  std::uint32_t width_ = 0;
  TablePtr table_;
};

struct BitEquality {
  BitTerm lhs;
  BitTerm rhs;
  friend bool operator==(const BitEquality&, const BitEquality&) = default;
  friend auto operator<=>(const BitEquality&, const BitEquality&) = default;
};

// Conjunction of bit equalities lhs(x) = rhs(y). The empty conjunction is true.
class BitEqualityConjunction {
 public:
  BitEqualityConjunction() = default;

  void add(BitTerm lhs, BitTerm rhs) {
    if (lhs.side() == Side::y) throw InputError("bit equality: left-hand side must not depend on y");
    if (rhs.side() == Side::x) throw InputError("bit equality: right-hand side must not depend on x");
    terms_.push_back({std::move(lhs), std::move(rhs)});
  }

  void append(const BitEqualityConjunction& other) {
    terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  }

  const std::vector<BitEquality>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  bool eval(const BitString& x, const BitString& y) const {
    for (const auto& t : terms_)
      if (t.lhs.eval(x) != t.rhs.eval(y)) return false;
    return true;
  }

  // The bit string of left-hand sides (resp. right-hand sides).
  BitString lhs_bits(const BitString& x) const {
    BitString out(terms_.size());
    for (std::size_t i = 0; i < terms_.size(); ++i) out.set(i, terms_[i].lhs.eval(x));
    return out;
  }
  BitString rhs_bits(const BitString& y) const {
    BitString out(terms_.size());
    for (std::size_t i = 0; i < terms_.size(); ++i) out.set(i, terms_[i].rhs.eval(y));
    return out;
  }

  friend bool operator==(const BitEqualityConjunction&, const BitEqualityConjunction&) = default;
  friend auto operator<=>(const BitEqualityConjunction&, const BitEqualityConjunction&) = default;

 private:
  std::vector<BitEquality> terms_;
};

// x_i = 0 ∧ 1 = y_i, the relation of a sink with index i.
inline BitEqualityConjunction canonical_sink_conjunction(std::size_t index) {
  BitEqualityConjunction c;
  c.add(BitTerm::input(Side::x, index), BitTerm::constant(false));
  c.add(BitTerm::constant(true), BitTerm::input(Side::y, index));
  return c;
}

struct TablePair {
  TablePtr q;  // x-side
  TablePtr r;  // y-side
};

struct InequalityLabel {
  TablePair tables;
};
struct EqualityLabel {
  TablePair tables;
};
struct ConjunctionLabel {
  std::vector<TablePair> pairs;
};
struct BitConjunctionLabel {
  BitEqualityConjunction conj;
};

using FeasibilityLabel = std::variant<InequalityLabel, EqualityLabel, ConjunctionLabel, BitConjunctionLabel>;

inline const char* label_kind(const FeasibilityLabel& l) {
  static constexpr const char* names[] = {"ineq", "eq", "conj", "bits"};
  return names[l.index()];
}

inline bool eval_label(const FeasibilityLabel& label, const BitString& x, const BitString& y) {
  struct Visitor {
    const BitString& x;
    const BitString& y;
    bool operator()(const InequalityLabel& l) const { return less_than(l.tables.q->at(x), l.tables.r->at(y)); }
    bool operator()(const EqualityLabel& l) const { return l.tables.q->at(x) == l.tables.r->at(y); }
    bool operator()(const ConjunctionLabel& l) const {
      for (const auto& p : l.pairs)
        if (!less_than(p.q->at(x), p.r->at(y))) return false;
      return true;
    }
    bool operator()(const BitConjunctionLabel& l) const { return l.conj.eval(x, y); }
  };
  return std::visit(Visitor{x, y}, label);
}

// Calls fn(table) for every value table a label references, bit terms included.
template <class Fn>
void for_each_table(const FeasibilityLabel& label, Fn&& fn) {
  std::visit(
      [&](const auto& l) {
        using L = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<L, InequalityLabel> || std::is_same_v<L, EqualityLabel>) {
          fn(l.tables.q);
          fn(l.tables.r);
        } else if constexpr (std::is_same_v<L, ConjunctionLabel>) {
          for (const auto& p : l.pairs) {
            fn(p.q);
            fn(p.r);
          }
        } else {
          for (const auto& t : l.conj.terms())
            for (const BitTerm* b : {&t.lhs, &t.rhs})
              if (b->kind() == BitTerm::Kind::table) fn(b->table());
        }
      },
      label);
}

// Turns a bit-equality conjunction into one equality: q(x) is the string of
// left-hand bits over U, r(y) the string of right-hand bits over V.
inline TablePair encode_bit_conjunction(const BitEqualityConjunction& conj, const KeySet& zeros, const KeySet& ones) {
  std::vector<Value> qv, rv;
  qv.reserve(zeros->size());
  rv.reserve(ones->size());
  for (const auto& x : *zeros) qv.emplace_back(conj.lhs_bits(x));
  for (const auto& y : *ones) rv.emplace_back(conj.rhs_bits(y));
  return {make_table(ValueTable(Side::x, zeros, std::move(qv))), make_table(ValueTable(Side::y, ones, std::move(rv)))};
}

}  // namespace kwproto
