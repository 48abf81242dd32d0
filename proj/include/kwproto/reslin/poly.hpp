// kwproto :: linear polynomials over GF(2) and R(LIN) clauses

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "kwproto/error.hpp"

namespace kwproto {

using VarId = std::uint32_t;

// constant + Σ variables over GF(2).
class LinearPolynomial {
 public:
  LinearPolynomial() = default;

  // Repeated variables cancel in pairs.
  LinearPolynomial(std::vector<VarId> vars, bool constant) : constant_(constant) {
    std::sort(vars.begin(), vars.end());
    for (std::size_t i = 0; i < vars.size();) {
      std::size_t j = i;
      while (j < vars.size() && vars[j] == vars[i]) ++j;
      if ((j - i) % 2 == 1) vars_.push_back(vars[i]);
      i = j;
    }
  }

  static LinearPolynomial zero() { return {}; }
  static LinearPolynomial one() { return {{}, true}; }
  static LinearPolynomial variable(VarId v, bool plus_one = false) { return {{v}, plus_one}; }

  const std::vector<VarId>& vars() const { return vars_; }
  bool constant() const { return constant_; }
  bool is_zero() const { return vars_.empty() && !constant_; }
  bool is_constant() const { return vars_.empty(); }

  friend LinearPolynomial operator+(const LinearPolynomial& a, const LinearPolynomial& b) {
    LinearPolynomial out;
    std::set_symmetric_difference(a.vars_.begin(), a.vars_.end(), b.vars_.begin(), b.vars_.end(), std::back_inserter(out.vars_));
    out.constant_ = a.constant_ != b.constant_;
    return out;
  }

  // Restriction to the variables accepted by keep (plus the constant when asked).
  LinearPolynomial restricted(const std::function<bool(VarId)>& keep, bool keep_constant) const {
    LinearPolynomial out;
    for (VarId v : vars_)
      if (keep(v)) out.vars_.push_back(v);
    out.constant_ = keep_constant && constant_;
    return out;
  }

  template <class Lookup>
  bool eval(Lookup&& value_of) const {
    bool acc = constant_;
    for (VarId v : vars_) acc ^= static_cast<bool>(value_of(v));
    return acc;
  }

  // "0", "1", "x3", "1+x3+x5".
  std::string str() const {
    if (is_zero()) return "0";
    std::string s = constant_ ? "1" : "";
    for (VarId v : vars_) {
      if (!s.empty()) s += '+';
      s += "x" + std::to_string(v);
    }
    return s;
  }

  friend bool operator==(const LinearPolynomial&, const LinearPolynomial&) = default;
  // Canonical order: by variable set, then constant.
  friend auto operator<=>(const LinearPolynomial&, const LinearPolynomial&) = default;

 private:
  std::vector<VarId> vars_;
  bool constant_ = false;
};

// A set of polynomials, read as the disjunction f_1 = 1 ∨ … ∨ f_k = 1.
class RlinClause {
 public:
  RlinClause() = default;
  RlinClause(std::initializer_list<LinearPolynomial> polys) : RlinClause(std::vector<LinearPolynomial>(polys)) {}
  explicit RlinClause(std::vector<LinearPolynomial> polys) : polys_(std::move(polys)) { normalize(); }

  const std::vector<LinearPolynomial>& polys() const { return polys_; }
  std::size_t size() const { return polys_.size(); }
  bool empty() const { return polys_.empty(); }

  bool contains(const LinearPolynomial& p) const { return std::binary_search(polys_.begin(), polys_.end(), p); }

  void insert(const LinearPolynomial& p) {
    auto it = std::lower_bound(polys_.begin(), polys_.end(), p);
    if (it == polys_.end() || *it != p) polys_.insert(it, p);
  }

  RlinClause without(const LinearPolynomial& p) const {
    RlinClause out = *this;
    auto it = std::lower_bound(out.polys_.begin(), out.polys_.end(), p);
    if (it != out.polys_.end() && *it == p) out.polys_.erase(it);
    return out;
  }

  friend RlinClause operator|(const RlinClause& a, const RlinClause& b) {
    RlinClause out;
    std::set_union(a.polys_.begin(), a.polys_.end(), b.polys_.begin(), b.polys_.end(), std::back_inserter(out.polys_));
    return out;
  }

  template <class Lookup>
  bool satisfied(Lookup&& value_of) const {
    return std::any_of(polys_.begin(), polys_.end(), [&](const LinearPolynomial& p) { return p.eval(value_of); });
  }

  std::vector<VarId> vars() const {
    std::vector<VarId> out;
    for (const auto& p : polys_) out.insert(out.end(), p.vars().begin(), p.vars().end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  // "{1+x1; x2}", "{}".
  std::string str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < polys_.size(); ++i) {
      if (i) s += "; ";
      s += polys_[i].str();
    }
    return s + "}";
  }

  friend bool operator==(const RlinClause&, const RlinClause&) = default;
  friend auto operator<=>(const RlinClause&, const RlinClause&) = default;

 private:
  void normalize() {
    std::sort(polys_.begin(), polys_.end());
    polys_.erase(std::unique(polys_.begin(), polys_.end()), polys_.end());
  }

  std::vector<LinearPolynomial> polys_;
};

}  // namespace kwproto
