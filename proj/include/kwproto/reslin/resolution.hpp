// kwproto :: resolution refutations and their replay in R(LIN)

#pragma once

#include "kwproto/reslin/refutation.hpp"

namespace kwproto {

// Sorted by variable, negative literal first; duplicates removed.
inline LiteralClause canonical_clause(LiteralClause c) {
  auto key = [](Literal l) { return std::pair(l < 0 ? -l : l, l > 0); };
  std::sort(c.begin(), c.end(), [&](Literal a, Literal b) { return key(a) < key(b); });
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return c;
}

inline bool is_tautology(const LiteralClause& canonical) {
  for (std::size_t i = 1; i < canonical.size(); ++i)
    if (canonical[i] == -canonical[i - 1]) return true;
  return false;
}

inline bool has_literal(const LiteralClause& canonical, Literal l) {
  return std::find(canonical.begin(), canonical.end(), l) != canonical.end();
}

// (P \ {v}) ∪ (N \ {¬v}).
inline LiteralClause resolvent(const LiteralClause& pos, const LiteralClause& neg, VarId var) {
  const Literal v = static_cast<Literal>(var);
  LiteralClause out;
  for (Literal l : pos)
    if (l != v) out.push_back(l);
  for (Literal l : neg)
    if (l != -v) out.push_back(l);
  return canonical_clause(std::move(out));
}

struct ResolutionLine {
  std::size_t id;
  LiteralClause clause;  // canonical
  bool axiom = true;
  std::size_t positive = 0;  // premise holding var
  std::size_t negative = 0;  // premise holding ¬var
  VarId var = 0;
};

struct ResolutionProof {
  std::vector<ResolutionLine> lines;

  const ResolutionLine* find(std::size_t id) const {
    for (const auto& l : lines)
      if (l.id == id) return &l;
    return nullptr;
  }
};

// Throws InputError naming the first bad line.
inline void check_resolution(const std::vector<LiteralClause>& cnf, const ResolutionProof& proof) {
  std::set<LiteralClause> axioms;
  for (const auto& c : cnf) axioms.insert(canonical_clause(c));
  std::map<std::size_t, const ResolutionLine*> seen;
  auto bad = [](std::size_t id, const std::string& why) { return InputError("resolution line " + std::to_string(id) + ": " + why); };
  for (const auto& l : proof.lines) {
    if (seen.count(l.id)) throw bad(l.id, "duplicate id");
    if (l.clause != canonical_clause(l.clause)) throw bad(l.id, "clause is not in canonical order");
    if (l.axiom) {
      if (!axioms.count(l.clause)) throw bad(l.id, "not a clause of the formula");
    } else {
      auto p = seen.find(l.positive), n = seen.find(l.negative);
      if (p == seen.end() || n == seen.end()) throw bad(l.id, "premise is not an earlier line");
      const Literal v = static_cast<Literal>(l.var);
      if (!has_literal(p->second->clause, v)) throw bad(l.id, "positive premise lacks x" + std::to_string(l.var));
      if (!has_literal(n->second->clause, -v)) throw bad(l.id, "negative premise lacks ¬x" + std::to_string(l.var));
      if (l.clause != resolvent(p->second->clause, n->second->clause, l.var)) throw bad(l.id, "wrong resolvent");
    }
    seen[l.id] = &l;
  }
  if (proof.lines.empty() || !proof.lines.back().clause.empty())
    throw InputError("resolution proof does not end in the empty clause");
}

// Every resolution step on v becomes an addition with g = v, h = 1 + v
// (yielding the 0 polynomial) followed by a contraction.
inline RlinRefutation resolution_to_rlin(const std::vector<LiteralClause>& cnf, const ResolutionProof& proof) {
  check_resolution(cnf, proof);
  RlinRefutation out;
  std::map<std::size_t, std::size_t> line_of;  // resolution id → R(LIN) id
  for (const auto& l : proof.lines) {
    if (l.axiom) {
      line_of[l.id] = out.axiom(translate_clause(l.clause));
      continue;
    }
    std::size_t sum = out.add_step(line_of.at(l.positive), line_of.at(l.negative), LinearPolynomial::variable(l.var),
                                   LinearPolynomial::variable(l.var, true));
    line_of[l.id] = out.contract_step(sum);
  }
  return out;
}

}  // namespace kwproto
