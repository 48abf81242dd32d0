// kwproto :: R(LIN) refutations, their checker, and translations into R(LIN)

#pragma once

#include <map>
#include <optional>
#include <set>
#include <variant>

#include "kwproto/reslin/poly.hpp"

namespace kwproto {

// A CNF clause as signed variable ids (DIMACS literals).
using Literal = std::int64_t;
using LiteralClause = std::vector<Literal>;

struct AxiomRule {};
// From C ∪ {0} infer C.
struct ContractRule {
  std::size_t premise;  // line id
  LinearPolynomial removed;
};
// From C ∪ {g} and D ∪ {h} infer C ∪ D ∪ {g + h + 1}.
struct AddRule {
  std::size_t first;
  std::size_t second;
  LinearPolynomial g;
  LinearPolynomial h;
};

using RlinRule = std::variant<AxiomRule, ContractRule, AddRule>;

struct RlinLine {
  std::size_t id;
  RlinClause clause;
  RlinRule rule;

  bool is_axiom() const { return std::holds_alternative<AxiomRule>(rule); }
  std::vector<std::size_t> premises() const {
    if (auto* c = std::get_if<ContractRule>(&rule)) return {c->premise};
    if (auto* a = std::get_if<AddRule>(&rule)) return {a->first, a->second};
    return {};
  }
};

class RlinRefutation {
 public:
  const std::vector<RlinLine>& lines() const { return lines_; }
  std::vector<RlinLine>& lines() { return lines_; }
  std::size_t size() const { return lines_.size(); }

  // Index into lines() of the line with this id, if any.
  std::optional<std::size_t> index_of(std::size_t id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const RlinClause* clause_of(std::size_t id) const {
    auto i = index_of(id);
    return i ? &lines_[*i].clause : nullptr;
  }

  // Line ids must be fresh; derived clauses are whatever the caller states.
  std::size_t add(RlinLine line) {
    if (index_.count(line.id)) throw InputError("R(LIN) proof: duplicate line id " + std::to_string(line.id));
    index_[line.id] = lines_.size();
    lines_.push_back(std::move(line));
    return lines_.back().id;
  }

  std::size_t next_id() const { return lines_.empty() ? 1 : lines_.back().id + 1; }

  std::size_t axiom(RlinClause c) { return add({next_id(), std::move(c), AxiomRule{}}); }

  // Appends the honest conclusion of an addition; premises must exist.
  std::size_t add_step(std::size_t first, std::size_t second, LinearPolynomial g, LinearPolynomial h) {
    RlinClause c = addition_result(require(first), require(second), g, h);
    return add({next_id(), std::move(c), AddRule{first, second, std::move(g), std::move(h)}});
  }

  std::size_t contract_step(std::size_t premise) {
    RlinClause c = require(premise).without(LinearPolynomial::zero());
    return add({next_id(), std::move(c), ContractRule{premise, LinearPolynomial::zero()}});
  }

  static RlinClause addition_result(const RlinClause& a, const RlinClause& b, const LinearPolynomial& g,
                                    const LinearPolynomial& h) {
    RlinClause out = a.without(g) | b.without(h);
    out.insert(g + h + LinearPolynomial::one());
    return out;
  }

 private:
  const RlinClause& require(std::size_t id) const {
    const RlinClause* c = clause_of(id);
    if (!c) throw InputError("R(LIN) proof: unknown line " + std::to_string(id));
    return *c;
  }

  std::vector<RlinLine> lines_;
  std::map<std::size_t, std::size_t> index_;
};

struct RefutationCheck {
  bool ok = true;
  std::optional<std::size_t> line;  // id of the offending line
  std::string reason;

  explicit operator bool() const { return ok; }
};

// Validates every line against its rule and the axiom list; the last line
// must be the empty clause. Reports the first failing line.
inline RefutationCheck check_refutation(const std::vector<RlinClause>& axioms, const RlinRefutation& proof) {
  auto fail = [](std::optional<std::size_t> line, std::string why) { return RefutationCheck{false, line, std::move(why)}; };
  const std::set<RlinClause> axiom_set(axioms.begin(), axioms.end());
  std::map<std::size_t, std::size_t> seen;  // id → position
  const auto& lines = proof.lines();
  for (std::size_t pos = 0; pos < lines.size(); ++pos) {
    const RlinLine& l = lines[pos];
    if (seen.count(l.id)) return fail(l.id, "duplicate line id");
    auto premise = [&](std::size_t id) -> const RlinClause* {
      auto it = seen.find(id);
      return it == seen.end() ? nullptr : &lines[it->second].clause;
    };
    if (std::holds_alternative<AxiomRule>(l.rule)) {
      if (!axiom_set.count(l.clause)) return fail(l.id, "clause " + l.clause.str() + " is not an axiom");
    } else if (auto* c = std::get_if<ContractRule>(&l.rule)) {
      const RlinClause* p = premise(c->premise);
      if (!p) return fail(l.id, "premise " + std::to_string(c->premise) + " is not an earlier line");
      if (!c->removed.is_zero()) return fail(l.id, "contraction removes " + c->removed.str() + ", which is not 0");
      if (!p->contains(c->removed)) return fail(l.id, "premise has no 0 polynomial");
      if (l.clause != p->without(c->removed)) return fail(l.id, "contraction result should be " + p->without(c->removed).str());
    } else {
      const auto& a = std::get<AddRule>(l.rule);
      const RlinClause* p1 = premise(a.first);
      const RlinClause* p2 = premise(a.second);
      if (!p1) return fail(l.id, "premise " + std::to_string(a.first) + " is not an earlier line");
      if (!p2) return fail(l.id, "premise " + std::to_string(a.second) + " is not an earlier line");
      if (!p1->contains(a.g)) return fail(l.id, a.g.str() + " is not in line " + std::to_string(a.first));
      if (!p2->contains(a.h)) return fail(l.id, a.h.str() + " is not in line " + std::to_string(a.second));
      // C may keep g and D may keep h under set semantics.
      const RlinClause base = RlinRefutation::addition_result(*p1, *p2, a.g, a.h);
      bool match = false;
      for (int keep = 0; keep < 4 && !match; ++keep) {
        RlinClause candidate = base;
        if (keep & 1) candidate.insert(a.g);
        if (keep & 2) candidate.insert(a.h);
        match = candidate == l.clause;
      }
      if (!match) return fail(l.id, "addition result should be " + base.str());
    }
    seen[l.id] = pos;
  }
  if (lines.empty()) return fail(std::nullopt, "proof has no lines");
  if (!lines.back().clause.empty()) return fail(lines.back().id, "last line is not the empty clause");
  return {};
}

// x_i ↦ x_i, ¬x_i ↦ 1 + x_i.
inline RlinClause translate_clause(const LiteralClause& clause) {
  std::vector<LinearPolynomial> polys;
  for (Literal lit : clause) {
    if (lit == 0) throw InputError("literal 0 in a clause");
    polys.push_back(LinearPolynomial::variable(static_cast<VarId>(lit > 0 ? lit : -lit), lit < 0));
  }
  return RlinClause(std::move(polys));
}

inline std::vector<RlinClause> translate_cnf(const std::vector<LiteralClause>& cnf) {
  std::vector<RlinClause> out;
  out.reserve(cnf.size());
  for (const auto& c : cnf) out.push_back(translate_clause(c));
  return out;
}

}  // namespace kwproto
