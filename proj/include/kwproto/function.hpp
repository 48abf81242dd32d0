// kwproto :: PartialMonotoneFunction

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "kwproto/bitstring.hpp"
#include "kwproto/value.hpp"

namespace kwproto {

// Partial Boolean function given by its zero set U and one set V. The
// constructor enforces U ∩ V = ∅ and equal lengths; monotone compatibility is
// checked separately by check_monotone so that violations can be reported.
class PartialMonotoneFunction {
 public:
  PartialMonotoneFunction(std::size_t n, std::vector<BitString> zeros, std::vector<BitString> ones) : n_(n) {
    if (n == 0) throw InputError("function: n must be positive");
    for (const auto* set : {&zeros, &ones})
      for (const auto& s : *set)
        if (s.size() != n) throw InputError("function: string " + s.str() + " does not have length " + std::to_string(n));
    zeros_ = make_keys(std::move(zeros));
    ones_ = make_keys(std::move(ones));
    for (const auto& z : *zeros_)
      if (std::binary_search(ones_->begin(), ones_->end(), z))
        throw InputError("function: " + z.str() + " is both a zero and a one");
  }

  std::size_t n() const { return n_; }
  const std::vector<BitString>& zeros() const { return *zeros_; }
  const std::vector<BitString>& ones() const { return *ones_; }
  const KeySet& zero_keys() const { return zeros_; }
  const KeySet& one_keys() const { return ones_; }
  const KeySet& keys(Side s) const { return s == Side::x ? zeros_ : ones_; }

  bool is_zero(const BitString& s) const { return std::binary_search(zeros_->begin(), zeros_->end(), s); }
  bool is_one(const BitString& s) const { return std::binary_search(ones_->begin(), ones_->end(), s); }

  friend bool operator==(const PartialMonotoneFunction& a, const PartialMonotoneFunction& b) {
    return a.n_ == b.n_ && *a.zeros_ == *b.zeros_ && *a.ones_ == *b.ones_;
  }

 private:
  std::size_t n_;
  KeySet zeros_;
  KeySet ones_;
};

// Some i with x_i = 0 and y_i = 1 (1-based), if any.
inline std::optional<std::size_t> kw_solution(const BitString& x, const BitString& y) {
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
    if (!x[i] && y[i]) return i + 1;
  return std::nullopt;
}

struct MonotoneViolation {
  BitString x;
  BitString y;
};

// nullopt when every (x, y) ∈ U×V has a KW solution, i.e. the game is total.
inline std::optional<MonotoneViolation> check_monotone(const PartialMonotoneFunction& f) {
  for (const auto& x : f.zeros())
    for (const auto& y : f.ones())
      if (!kw_solution(x, y)) return MonotoneViolation{x, y};
  return std::nullopt;
}

// Downward closure of U and upward closure of V over {0,1}^n.
inline PartialMonotoneFunction monotone_closure(const PartialMonotoneFunction& f) {
  std::vector<BitString> down, up;
  for (const auto& s : all_bitstrings(f.n())) {
    bool below = false, above = false;
    for (const auto& u : f.zeros()) below = below || s.leq(u);
    for (const auto& v : f.ones()) above = above || v.leq(s);
    if (below && above) throw InputError("closure: " + s.str() + " lies in both closures");
    if (below) down.push_back(s);
    if (above) up.push_back(s);
  }
  return PartialMonotoneFunction(f.n(), std::move(down), std::move(up));
}

}  // namespace kwproto
