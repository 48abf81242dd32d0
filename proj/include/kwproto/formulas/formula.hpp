// kwproto :: interpolation formulas φ(x,y) ∧ ψ(x,z): clause splitting and the selection encoder

#pragma once

#include "kwproto/function.hpp"
#include "kwproto/reslin/interpolant.hpp"
#include "kwproto/reslin/resolution.hpp"

namespace kwproto {

// A CNF whose first phi_count clauses form φ and the rest ψ.
struct InterpolationFormula {
  std::size_t num_vars = 0;
  VariablePartition roles;
  std::vector<LiteralClause> clauses;
  std::size_t phi_count = 0;

  std::vector<LiteralClause> phi() const {
    return {clauses.begin(), clauses.begin() + static_cast<std::ptrdiff_t>(phi_count)};
  }
  std::vector<LiteralClause> psi() const {
    return {clauses.begin() + static_cast<std::ptrdiff_t>(phi_count), clauses.end()};
  }
};

// {ℓ_1..ℓ_k, ℓ'_1..ℓ'_m} with x-literals ℓ_i becomes
//   {ℓ'_1..ℓ'_m, ℓ_1, u_1}, {¬u_1, ℓ_2, u_2}, …, {¬u_{k−1}, ℓ_k}
// with fresh variables u_t drawn from next_var. Clauses with k ≤ 1 are kept.
inline std::vector<LiteralClause> clause_split(const LiteralClause& clause, const std::vector<VarId>& x_vars, VarId& next_var) {
  auto is_x = [&](Literal l) {
    return std::find(x_vars.begin(), x_vars.end(), static_cast<VarId>(l < 0 ? -l : l)) != x_vars.end();
  };
  LiteralClause xs, rest;
  for (Literal l : clause) (is_x(l) ? xs : rest).push_back(l);
  if (xs.size() <= 1) return {clause};
  std::vector<LiteralClause> out;
  LiteralClause first = rest;
  first.push_back(xs[0]);
  Literal link = static_cast<Literal>(next_var++);
  first.push_back(link);
  out.push_back(std::move(first));
  for (std::size_t t = 1; t < xs.size(); ++t) {
    LiteralClause c{-link, xs[t]};
    if (t + 1 < xs.size()) {
      link = static_cast<Literal>(next_var++);
      c.push_back(link);
    }
    out.push_back(std::move(c));
  }
  return out;
}

// Splits every ψ clause so that each has at most one x-literal; the new
// variables join z. φ is left alone: its x-literals are only negative and
// the compiler never needs its clauses to be split.
inline InterpolationFormula split_formula(const InterpolationFormula& in) {
  InterpolationFormula out = in;
  out.clauses = in.phi();
  VarId next = static_cast<VarId>(in.num_vars + 1);
  for (const auto& c : in.psi())
    for (auto& piece : clause_split(c, in.roles.x, next)) out.clauses.push_back(std::move(piece));
  for (VarId v = static_cast<VarId>(in.num_vars + 1); v < next; ++v) out.roles.z.push_back(v);
  out.num_vars = next - 1;
  return out;
}

struct SelectionEncoding {
  InterpolationFormula formula;
  // φ(a,·) is satisfiable iff a lies below some element of U, ψ(b,·) iff b
  // lies above some element of V; this is the function the formula encodes.
  PartialMonotoneFunction closure;
};

inline std::vector<BitString> downward_closure(const std::vector<BitString>& set, std::size_t n) {
  std::vector<BitString> out;
  for (const auto& s : all_bitstrings(n))
    if (std::any_of(set.begin(), set.end(), [&](const BitString& u) { return s.leq(u); })) out.push_back(s);
  return out;
}

inline std::vector<BitString> upward_closure(const std::vector<BitString>& set, std::size_t n) {
  std::vector<BitString> out;
  for (const auto& s : all_bitstrings(n))
    if (std::any_of(set.begin(), set.end(), [&](const BitString& v) { return v.leq(s); })) out.push_back(s);
  return out;
}

// Variables: x_1..x_n are 1..n, then one selector y_a per a ∈ U, then one
// z_b per b ∈ V (both in sorted order).
//   φ: (∨_a y_a), and (¬y_a ∨ ¬x_i) for every a and i with a_i = 0
//   ψ: (∨_b z_b), and (¬z_b ∨ x_i) for every b and i with b_i = 1
inline SelectionEncoding selection_encode(const PartialMonotoneFunction& f) {
  if (f.zeros().empty() || f.ones().empty()) throw PreconditionError("selection_encode needs nonempty U and V");
  if (auto bad = check_monotone(f))
    throw PreconditionError("selection_encode: closures intersect at x=" + bad->x.str() + " y=" + bad->y.str());
  const std::size_t n = f.n();
  InterpolationFormula out;
  VarId next = 1;
  for (std::size_t i = 1; i <= n; ++i) out.roles.x.push_back(next++);
  for (std::size_t k = 0; k < f.zeros().size(); ++k) out.roles.y.push_back(next++);
  for (std::size_t k = 0; k < f.ones().size(); ++k) out.roles.z.push_back(next++);
  out.num_vars = next - 1;
  auto lit = [](VarId v, bool positive) { return positive ? static_cast<Literal>(v) : -static_cast<Literal>(v); };

  LiteralClause some_y;
  for (VarId v : out.roles.y) some_y.push_back(lit(v, true));
  out.clauses.push_back(some_y);
  for (std::size_t k = 0; k < f.zeros().size(); ++k)
    for (std::size_t i = 1; i <= n; ++i)
      if (!f.zeros()[k].bit(i)) out.clauses.push_back({lit(out.roles.y[k], false), lit(out.roles.x[i - 1], false)});
  out.phi_count = out.clauses.size();

  LiteralClause some_z;
  for (VarId v : out.roles.z) some_z.push_back(lit(v, true));
  out.clauses.push_back(some_z);
  for (std::size_t k = 0; k < f.ones().size(); ++k)
    for (std::size_t i = 1; i <= n; ++i)
      if (f.ones()[k].bit(i)) out.clauses.push_back({lit(out.roles.z[k], false), lit(out.roles.x[i - 1], true)});

  PartialMonotoneFunction closure(n, downward_closure(f.zeros(), n), upward_closure(f.ones(), n));
  return {std::move(out), std::move(closure)};
}

}  // namespace kwproto
