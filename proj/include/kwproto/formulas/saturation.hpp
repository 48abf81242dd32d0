// kwproto :: resolution by saturation, for producing small test refutations

#pragma once

#include <queue>

#include "kwproto/reslin/resolution.hpp"

namespace kwproto {

// Satisfying assignment, indexed by variable id (entry 0 unused).
using Model = std::vector<bool>;

inline bool satisfies(const Model& m, const LiteralClause& c) {
  return std::any_of(c.begin(), c.end(), [&](Literal l) {
    auto v = static_cast<std::size_t>(l < 0 ? -l : l);
    return v < m.size() && m[v] == (l > 0);
  });
}

namespace detail {

inline std::size_t max_var(const std::vector<LiteralClause>& cnf) {
  std::size_t n = 0;
  for (const auto& c : cnf)
    for (Literal l : c) n = std::max(n, static_cast<std::size_t>(l < 0 ? -l : l));
  return n;
}

// Plain DPLL with unit propagation; variables left open default to 0.
inline std::optional<Model> dpll(const std::vector<LiteralClause>& cnf, std::size_t num_vars) {
  std::vector<signed char> val(num_vars + 1, -1);
  auto lit_value = [&](Literal l) -> int {
    signed char v = val[static_cast<std::size_t>(l < 0 ? -l : l)];
    return v < 0 ? -1 : (v == (l > 0 ? 1 : 0));
  };
  std::function<bool()> solve = [&]() -> bool {
    std::vector<std::size_t> trail;
    auto undo = [&] {
      for (std::size_t v : trail) val[v] = -1;
    };
    for (bool progress = true; progress;) {
      progress = false;
      for (const auto& c : cnf) {
        int open = 0;
        Literal last = 0;
        bool sat = false;
        for (Literal l : c) {
          int lv = lit_value(l);
          if (lv == 1) {
            sat = true;
            break;
          }
          if (lv == -1) {
            ++open;
            last = l;
          }
        }
        if (sat) continue;
        if (open == 0) {
          undo();
          return false;
        }
        if (open == 1) {
          auto v = static_cast<std::size_t>(last < 0 ? -last : last);
          val[v] = last > 0;
          trail.push_back(v);
          progress = true;
        }
      }
    }
    for (std::size_t v = 1; v <= num_vars; ++v) {
      if (val[v] != -1) continue;
      for (signed char b : {0, 1}) {
        val[v] = b;
        if (solve()) return true;
      }
      val[v] = -1;
      undo();
      return false;
    }
    return true;
  };
  if (!solve()) return std::nullopt;
  Model m(num_vars + 1, false);
  for (std::size_t v = 1; v <= num_vars; ++v) m[v] = val[v] == 1;
  return m;
}

inline bool subsumes(const LiteralClause& a, const LiteralClause& b) {
  return std::all_of(a.begin(), a.end(), [&](Literal l) { return has_literal(b, l); });
}

}  // namespace detail

struct SaturationResult {
  std::optional<ResolutionProof> refutation;
  std::optional<Model> model;
  std::size_t generated = 0;
};

// Given-clause saturation: the shortest unprocessed clause (oldest first on
// ties) is resolved against all processed ones; tautologies are dropped and
// subsumed clauses discarded in both directions. Throws BudgetError once more
// than `budget` clauses have been generated. The returned refutation holds
// only the ancestry of the empty clause, numbered from 1.
inline SaturationResult saturation_refute(const std::vector<LiteralClause>& cnf, std::size_t budget = 100000) {
  struct Entry {
    LiteralClause clause;
    bool axiom;
    std::size_t pos = 0, neg = 0;
    VarId var = 0;
  };
  std::vector<Entry> store;
  using Key = std::pair<std::size_t, std::size_t>;  // (length, store index)
  std::priority_queue<Key, std::vector<Key>, std::greater<>> passive;
  std::vector<std::size_t> active;

  auto push = [&](Entry e) {
    store.push_back(std::move(e));
    passive.push({store.back().clause.size(), store.size() - 1});
  };
  for (const auto& c : cnf) {
    auto cc = canonical_clause(c);
    if (!is_tautology(cc)) push({cc, true});
  }

  SaturationResult result;
  std::optional<std::size_t> empty;
  while (!passive.empty() && !empty) {
    const std::size_t given = passive.top().second;
    passive.pop();
    const LiteralClause g = store[given].clause;  // store grows below
    if (std::any_of(active.begin(), active.end(), [&](std::size_t a) { return detail::subsumes(store[a].clause, g); })) continue;
    if (g.empty()) {
      empty = given;
      break;
    }
    std::erase_if(active, [&](std::size_t a) { return detail::subsumes(g, store[a].clause); });
    active.push_back(given);
    const std::vector<std::size_t> partners = active;
    for (std::size_t other : partners) {
      for (Literal l : g) {
        if (!has_literal(store[other].clause, -l)) continue;
        const std::size_t pos = l > 0 ? given : other, neg = l > 0 ? other : given;
        const VarId var = static_cast<VarId>(l > 0 ? l : -l);
        LiteralClause r = resolvent(store[pos].clause, store[neg].clause, var);
        if (is_tautology(r)) continue;
        if (++result.generated > budget)
          throw BudgetError("saturation budget of " + std::to_string(budget) + " clauses exceeded");
        push({std::move(r), false, pos, neg, var});
      }
    }
  }

  if (!empty) {
    result.model = detail::dpll(cnf, detail::max_var(cnf));
    if (!result.model) throw std::logic_error("saturation ended without the empty clause on an unsatisfiable formula");
    return result;
  }

  std::vector<bool> needed(store.size(), false);
  needed[*empty] = true;
  for (std::size_t i = store.size(); i-- > 0;)
    if (needed[i] && !store[i].axiom) needed[store[i].pos] = needed[store[i].neg] = true;
  ResolutionProof proof;
  std::vector<std::size_t> id(store.size(), 0);
  for (std::size_t i = 0; i < store.size(); ++i) {
    if (!needed[i]) continue;
    id[i] = proof.lines.size() + 1;
    ResolutionLine line{id[i], store[i].clause, store[i].axiom};
    if (!store[i].axiom) {
      line.positive = id[store[i].pos];
      line.negative = id[store[i].neg];
      line.var = store[i].var;
    }
    proof.lines.push_back(std::move(line));
  }
  result.refutation = std::move(proof);
  return result;
}

}  // namespace kwproto
