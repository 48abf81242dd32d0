// kwproto :: R(LIN) proofs, resolution proofs and DIMACS formulas
//
// R(LIN):      line 1 axiom {1+x1}
//              line 3 add 2 1 x1 1+x1       conclusion C ∪ D ∪ {g+h+1}
//              line 4 contract 3 0
// Resolution:  res 1 axiom 1 -2 0
//              res 3 resolve 1 2 1           positive premise, negative premise, variable
// DIMACS:      c roles x 1 2 / c roles y 3 / c roles z 4 / c phi <count>, then p cnf and clauses

#pragma once

#include <ostream>

#include "kwproto/formulas/formula.hpp"
#include "kwproto/io/reader.hpp"

namespace kwproto::io {

inline LinearPolynomial parse_polynomial(std::string_view text, const Cursor& at, std::size_t col) {
  if (text.empty()) at.fail("empty polynomial", col);
  std::vector<VarId> vars;
  bool constant = false;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t plus = text.find('+', start);
    if (plus == std::string_view::npos) plus = text.size();
    std::string_view t = text.substr(start, plus - start);
    const std::size_t tcol = col + start;
    if (t == "0") {
    } else if (t == "1") {
      constant = !constant;
    } else if (t.size() > 1 && t.front() == 'x') {
      VarId v = 0;
      auto [p, ec] = std::from_chars(t.data() + 1, t.data() + t.size(), v);
      if (ec != std::errc() || p != t.data() + t.size() || v == 0) at.fail("malformed variable '" + std::string(t) + "'", tcol);
      vars.push_back(v);
    } else {
      at.fail("malformed polynomial term '" + std::string(t) + "'", tcol);
    }
    start = plus + 1;
  }
  return LinearPolynomial(std::move(vars), constant);
}

inline LinearPolynomial parse_polynomial(Cursor& c) {
  auto w = c.word();
  return parse_polynomial(w, c, c.last_column());
}

// "{p; p; …}" as the rest of the line.
inline RlinClause parse_rlin_clause(Cursor& c) {
  auto text = c.rest();
  const std::size_t col = c.last_column();
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') c.fail("expected a clause '{p; p; ...}'", col);
  std::vector<LinearPolynomial> polys;
  std::string_view body = text.substr(1, text.size() - 2);
  std::size_t start = 0;
  if (body.find_first_not_of(' ') == std::string_view::npos) return {};
  while (start <= body.size()) {
    std::size_t semi = body.find(';', start);
    if (semi == std::string_view::npos) semi = body.size();
    std::string_view item = body.substr(start, semi - start);
    std::size_t lead = item.find_first_not_of(' ');
    if (lead == std::string_view::npos) c.fail("empty polynomial in clause", col + 1 + start);
    item.remove_prefix(lead);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    polys.push_back(parse_polynomial(item, c, col + 1 + start + lead));
    start = semi + 1;
  }
  return RlinClause(std::move(polys));
}

inline RlinRefutation parse_rlin(std::istream& in) {
  RlinRefutation proof;
  for (Cursor& c : read_lines(in)) {
    c.expect("line");
    std::size_t id = c.number();
    const std::size_t id_col = c.last_column();
    if (proof.index_of(id)) c.fail("duplicate line id " + std::to_string(id), id_col);
    auto kind = c.word();
    const std::size_t kind_col = c.last_column();
    auto premise = [&]() {
      std::size_t p = c.number();
      const RlinClause* clause = proof.clause_of(p);
      if (!clause) c.fail("line " + std::to_string(p) + " is not defined above", c.last_column());
      return std::pair(p, clause);
    };
    if (kind == "axiom") {
      proof.add({id, parse_rlin_clause(c), AxiomRule{}});
    } else if (kind == "add") {
      auto [p1, c1] = premise();
      auto [p2, c2] = premise();
      LinearPolynomial g = parse_polynomial(c);
      LinearPolynomial h = parse_polynomial(c);
      c.expect_end();
      RlinClause result = RlinRefutation::addition_result(*c1, *c2, g, h);
      proof.add({id, std::move(result), AddRule{p1, p2, std::move(g), std::move(h)}});
    } else if (kind == "contract") {
      auto [p1, c1] = premise();
      LinearPolynomial z = parse_polynomial(c);
      c.expect_end();
      proof.add({id, c1->without(z), ContractRule{p1, std::move(z)}});
    } else {
      c.fail("expected 'axiom', 'add' or 'contract'", kind_col);
    }
  }
  return proof;
}

// Derived clauses are implied by their rule and not written.
inline void write_rlin(std::ostream& os, const RlinRefutation& proof) {
  for (const auto& l : proof.lines()) {
    os << "line " << l.id << ' ';
    if (l.is_axiom()) {
      os << "axiom " << l.clause.str();
    } else if (auto* c = std::get_if<ContractRule>(&l.rule)) {
      os << "contract " << c->premise << ' ' << c->removed.str();
    } else {
      const auto& a = std::get<AddRule>(l.rule);
      os << "add " << a.first << ' ' << a.second << ' ' << a.g.str() << ' ' << a.h.str();
    }
    os << '\n';
  }
}

inline std::string literals_string(const LiteralClause& c) {
  std::string s;
  for (Literal l : c) s += std::to_string(l) + ' ';
  return s + '0';
}

inline ResolutionProof parse_resolution(std::istream& in) {
  ResolutionProof proof;
  for (Cursor& c : read_lines(in)) {
    c.expect("res");
    std::size_t id = c.number();
    if (proof.find(id)) c.fail("duplicate line id " + std::to_string(id), c.last_column());
    auto kind = c.word();
    if (kind == "axiom") {
      LiteralClause lits;
      while (true) {
        auto w = c.word();
        Literal l = 0;
        auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), l);
        if (ec != std::errc() || p != w.data() + w.size()) c.fail("malformed literal '" + std::string(w) + "'", c.last_column());
        if (l == 0) break;
        lits.push_back(l);
      }
      c.expect_end();
      proof.lines.push_back({id, canonical_clause(std::move(lits)), true});
    } else if (kind == "resolve") {
      ResolutionLine line{id, {}, false};
      line.positive = c.number();
      const ResolutionLine* pos = proof.find(line.positive);
      if (!pos) c.fail("line " + std::to_string(line.positive) + " is not defined above", c.last_column());
      line.negative = c.number();
      const ResolutionLine* neg = proof.find(line.negative);
      if (!neg) c.fail("line " + std::to_string(line.negative) + " is not defined above", c.last_column());
      line.var = static_cast<VarId>(c.number());
      c.expect_end();
      line.clause = resolvent(pos->clause, neg->clause, line.var);
      proof.lines.push_back(std::move(line));
    } else {
      c.fail("expected 'axiom' or 'resolve'", c.last_column());
    }
  }
  return proof;
}

inline void write_resolution(std::ostream& os, const ResolutionProof& proof) {
  for (const auto& l : proof.lines) {
    if (l.axiom)
      os << "res " << l.id << " axiom " << literals_string(l.clause) << '\n';
    else
      os << "res " << l.id << " resolve " << l.positive << ' ' << l.negative << ' ' << l.var << '\n';
  }
}

inline InterpolationFormula parse_dimacs(std::istream& in) {
  InterpolationFormula out;
  bool header = false;
  std::size_t declared = 0;
  LiteralClause pending;
  std::size_t last_line = 1;
  for (Cursor& c : read_lines(in)) {
    last_line = c.line();
    c.skip_space();
    auto first = c.word();
    if (first == "c") {
      auto tag = c.maybe_word();
      if (tag == "roles") {
        auto role = c.word();
        std::vector<VarId>* target = role == "x" ? &out.roles.x : role == "y" ? &out.roles.y : role == "z" ? &out.roles.z : nullptr;
        if (!target) c.fail("role must be x, y or z", c.last_column());
        while (!c.at_end()) target->push_back(static_cast<VarId>(c.number()));
      } else if (tag == "phi") {
        out.phi_count = c.number();
        c.expect_end();
      }
      continue;
    }
    if (first == "p") {
      if (header) c.fail("second problem line", c.last_column());
      c.expect("cnf");
      out.num_vars = c.number();
      declared = c.number();
      c.expect_end();
      header = true;
      continue;
    }
    if (!header) c.fail("clause before the 'p cnf' line", c.last_column());
    for (std::optional<std::string_view> w = first; w; w = c.maybe_word()) {
      Literal l = 0;
      auto [p, ec] = std::from_chars(w->data(), w->data() + w->size(), l);
      if (ec != std::errc() || p != w->data() + w->size()) c.fail("malformed literal '" + std::string(*w) + "'", c.last_column());
      if (l == 0) {
        out.clauses.push_back(std::move(pending));
        pending.clear();
        continue;
      }
      if (static_cast<std::size_t>(l < 0 ? -l : l) > out.num_vars) c.fail("literal exceeds the declared variable count", c.last_column());
      pending.push_back(l);
    }
  }
  if (!header) throw ParseError(last_line, 1, "missing 'p cnf' line");
  if (!pending.empty()) throw ParseError(last_line, 1, "last clause is not terminated by 0");
  if (out.clauses.size() != declared)
    throw ParseError(last_line, 1, "declared " + std::to_string(declared) + " clauses, found " + std::to_string(out.clauses.size()));
  if (out.phi_count > out.clauses.size()) throw ParseError(last_line, 1, "phi count exceeds the number of clauses");
  try {
    out.roles.validate();
  } catch (const InputError& e) {
    throw ParseError(1, 1, e.what());
  }
  return out;
}

inline void write_dimacs(std::ostream& os, const InterpolationFormula& f) {
  auto roles = [&](const char* name, const std::vector<VarId>& vars) {
    if (vars.empty()) return;
    os << "c roles " << name;
    for (VarId v : vars) os << ' ' << v;
    os << '\n';
  };
  roles("x", f.roles.x);
  roles("y", f.roles.y);
  roles("z", f.roles.z);
  os << "c phi " << f.phi_count << '\n';
  os << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (const auto& c : f.clauses) os << literals_string(c) << '\n';
}

}  // namespace kwproto::io
