// kwproto :: Value, ValueTable

#pragma once

#include <algorithm>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "kwproto/bitstring.hpp"
#include "kwproto/error.hpp"

namespace kwproto {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class Side { x, y };

inline const char* side_name(Side s) { return s == Side::x ? "x" : "y"; }

// A label value: either an exact rational number (ordered) or an
// arbitrary-length bit string (equality only, length-sensitive). Values of
// different kinds are never equal.
class Value {
 public:
  Value() : v_(Rational(0)) {}
  Value(Rational r) : v_(std::move(r)) {}
  Value(Integer i) : v_(Rational(std::move(i))) {}
  Value(long long i) : v_(Rational(i)) {}
  Value(int i) : v_(Rational(i)) {}
  Value(BitString b) : v_(std::move(b)) {}

  bool is_number() const { return std::holds_alternative<Rational>(v_); }
  bool is_bits() const { return std::holds_alternative<BitString>(v_); }

  const Rational& number() const {
    if (!is_number()) throw InputError("expected a numeric value, got bit string #" + std::get<BitString>(v_).str());
    return std::get<Rational>(v_);
  }
  const BitString& bits() const {
    if (!is_bits()) throw InputError("expected a bit-string value");
    return std::get<BitString>(v_);
  }

  bool is_integer() const { return is_number() && denominator(number()) == 1; }

  friend bool operator==(const Value& a, const Value& b) { return a.v_ == b.v_; }

  // Numeric strict order; both sides must be numbers.
  friend bool less_than(const Value& a, const Value& b) { return a.number() < b.number(); }

 private:
  std::variant<Rational, BitString> v_;
};

// "5", "-3/2", or "#<length>:<big-endian hex>" for bit strings ("#0:" is empty).
inline std::string to_string(const Value& v) {
  if (v.is_number()) return v.number().str();
  const BitString& b = v.bits();
  static constexpr char digits[] = "0123456789abcdef";
  std::string out = "#" + std::to_string(b.size()) + ":";
  const std::size_t pad = (4 - b.size() % 4) % 4;
  unsigned nibble = 0;
  for (std::size_t i = 0; i < pad + b.size(); ++i) {
    nibble = (nibble << 1) | ((i >= pad && b[i - pad]) ? 1u : 0u);
    if (i % 4 == 3) {
      out += digits[nibble];
      nibble = 0;
    }
  }
  return out;
}

using KeySet = std::shared_ptr<const std::vector<BitString>>;

inline KeySet make_keys(std::vector<BitString> keys) {
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return std::make_shared<const std::vector<BitString>>(std::move(keys));
}

// Function from input strings of one side to values, stored only on the
// strings it was built for. Keys may be shared between tables.
class ValueTable {
 public:
  ValueTable(Side side, KeySet keys, std::vector<Value> values)
      : side_(side), keys_(std::move(keys)), values_(std::move(values)) {
    if (!keys_ || keys_->size() != values_.size())
      throw InputError("value table: key and value counts differ");
    if (!std::is_sorted(keys_->begin(), keys_->end()) ||
        std::adjacent_find(keys_->begin(), keys_->end()) != keys_->end())
      throw InputError("value table: keys must be sorted and distinct");
  }

  ValueTable(Side side, std::vector<std::pair<BitString, Value>> entries) : side_(side) {
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<BitString> keys;
    keys.reserve(entries.size());
    values_.reserve(entries.size());
    for (auto& [k, v] : entries) {
      if (!keys.empty() && keys.back() == k) throw InputError("value table: duplicate entry for " + k.str());
      keys.push_back(k);
      values_.push_back(std::move(v));
    }
    keys_ = std::make_shared<const std::vector<BitString>>(std::move(keys));
  }

  static ValueTable constant(Side side, KeySet keys, const Value& v) {
    std::vector<Value> values(keys->size(), v);
    return ValueTable(side, std::move(keys), std::move(values));
  }

  Side side() const { return side_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<BitString>& keys() const { return *keys_; }
  const KeySet& key_set() const { return keys_; }
  const std::vector<Value>& values() const { return values_; }

  const Value* find(const BitString& s) const {
    auto it = std::lower_bound(keys_->begin(), keys_->end(), s);
    if (it == keys_->end() || *it != s) return nullptr;
    return &values_[static_cast<std::size_t>(it - keys_->begin())];
  }

  const Value& at(const BitString& s) const {
    if (const Value* v = find(s)) return *v;
    throw DomainError(std::string(side_name(side_)) + "-side table has no value for " + s.str());
  }

  friend bool operator==(const ValueTable& a, const ValueTable& b) {
    return a.side_ == b.side_ && *a.keys_ == *b.keys_ && a.values_ == b.values_;
  }

 private:
  Side side_;
  KeySet keys_;
  std::vector<Value> values_;
};

using TablePtr = std::shared_ptr<const ValueTable>;

inline TablePtr make_table(ValueTable t) { return std::make_shared<const ValueTable>(std::move(t)); }

inline std::size_t msb_or_zero(const Integer& i) { return i == 0 ? 0 : static_cast<std::size_t>(msb(i)); }

// k-th most significant bit (1-based) of a value read as a width-bit unsigned
// integer. Throws InputError if the value is not an integer in [0, 2^width).
inline bool value_bit(const Value& v, std::size_t width, std::size_t position) {
  if (!v.is_integer()) throw InputError("unnormalized value: not an integer");
  const Integer& i = numerator(v.number());
  if (i < 0 || msb_or_zero(i) >= width) throw InputError("unnormalized value: out of width " + std::to_string(width));
  return bit_test(i, static_cast<unsigned>(width - position));
}

// w-bit rendering of a normalized value.
inline BitString value_bits(const Value& v, std::size_t width) {
  BitString out(width);
  for (std::size_t k = 1; k <= width; ++k) out.set(k - 1, value_bit(v, width, k));
  return out;
}

// Injective map from bit strings of any length to non-negative integers:
// reads "1" followed by the bits as a binary number.
inline Integer bits_to_integer(const BitString& b) {
  Integer v = 1;
  for (std::size_t i = 0; i < b.size(); ++i) {
    v <<= 1;
    if (b[i]) v |= 1;
  }
  return v;
}

}  // namespace kwproto
