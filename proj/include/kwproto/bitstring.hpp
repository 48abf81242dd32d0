// kwproto :: BitString

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "kwproto/error.hpp"

namespace kwproto {

// Finite sequence of bits. Position 1 (see bit()) is the most significant one;
// operator[] is the plain 0-based accessor.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t length, bool fill = false) : bits_(length, fill) {}

  // Accepts only '0'/'1'; throws InputError naming the offending offset.
  static BitString parse(std::string_view text) {
    BitString out;
    out.bits_.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
      char ch = text[i];
      if (ch != '0' && ch != '1')
        throw InputError("invalid bit '" + std::string(1, ch) + "' at offset " + std::to_string(i));
      out.bits_.push_back(ch == '1');
    }
    return out;
  }

  // Big-endian `width`-bit rendering of value; value must fit.
  static BitString from_uint(std::uint64_t value, std::size_t width) {
    BitString out(width);
    for (std::size_t i = 0; i < width; ++i) out.bits_[width - 1 - i] = i < 64 && ((value >> i) & 1u);
    return out;
  }

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }

  bool operator[](std::size_t i) const { return bits_[i]; }
  // 1-based, most significant first.
  bool bit(std::size_t position) const { return bits_.at(position - 1); }

  void set(std::size_t i, bool b) { bits_[i] = b; }
  void push_back(bool b) { bits_.push_back(b); }
  void append(const BitString& other) { bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end()); }

  std::uint64_t to_uint() const {
    std::uint64_t v = 0;
    for (bool b : bits_) v = (v << 1) | (b ? 1u : 0u);
    return v;
  }

  // Coordinatewise order: every 1 of *this is also a 1 of other.
  bool leq(const BitString& other) const {
    if (size() != other.size()) return false;
    for (std::size_t i = 0; i < size(); ++i)
      if (bits_[i] && !other.bits_[i]) return false;
    return true;
  }

  std::string str() const {
    std::string s;
    s.reserve(bits_.size());
    for (bool b : bits_) s.push_back(b ? '1' : '0');
    return s;
  }

  friend bool operator==(const BitString&, const BitString&) = default;
  // Shorter strings first, then lexicographic (numeric for equal lengths).
  friend std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a.bits_[i] != b.bits_[i]) return a.bits_[i] ? std::strong_ordering::greater : std::strong_ordering::less;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const BitString& b) { return os << b.str(); }

 private:
  std::vector<bool> bits_;
};

// All 2^n strings of length n in increasing numeric order.
inline std::vector<BitString> all_bitstrings(std::size_t n) {
  std::vector<BitString> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) out.push_back(BitString::from_uint(v, n));
  return out;
}

}  // namespace kwproto
