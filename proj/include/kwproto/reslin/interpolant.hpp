// kwproto :: equality protocols from R(LIN) refutations of φ(x,y) ∧ ψ(x,z)

#pragma once

#include <map>
#include <set>

#include "kwproto/protocol.hpp"
#include "kwproto/reslin/refutation.hpp"

namespace kwproto {

// x[i−1] is the variable of input bit i; y and z are the private variables
// of the two formulas.
struct VariablePartition {
  std::vector<VarId> x;
  std::vector<VarId> y;
  std::vector<VarId> z;

  enum class Role { x, y, z, none };

  Role role(VarId v) const {
    if (std::find(x.begin(), x.end(), v) != x.end()) return Role::x;
    if (std::find(y.begin(), y.end(), v) != y.end()) return Role::y;
    if (std::find(z.begin(), z.end(), v) != z.end()) return Role::z;
    return Role::none;
  }

  std::size_t input_index(VarId v) const {
    auto it = std::find(x.begin(), x.end(), v);
    if (it == x.end()) throw InputError("x" + std::to_string(v) + " is not an input variable");
    return static_cast<std::size_t>(it - x.begin()) + 1;
  }

  void validate() const {
    std::set<VarId> all;
    for (const auto* part : {&x, &y, &z})
      for (VarId v : *part)
        if (!all.insert(v).second) throw InputError("variable x" + std::to_string(v) + " has more than one role");
  }
};

// f = f0 + f1 with f0 over x, y and the constant, f1 over z.
inline std::pair<LinearPolynomial, LinearPolynomial> split_polynomial(const LinearPolynomial& f, const VariablePartition& part) {
  for (VarId v : f.vars())
    if (part.role(v) == VariablePartition::Role::none) throw InputError("split_polynomial: unknown variable x" + std::to_string(v));
  auto is_z = [&](VarId v) { return part.role(v) == VariablePartition::Role::z; };
  return {f.restricted([&](VarId v) { return !is_z(v); }, true), f.restricted(is_z, false)};
}

// Value of every variable of an assignment, keyed by id.
using Assignment = std::map<VarId, bool>;

// For each input string s, the lexicographically least assignment to `ext`
// (ascending ids, 0 before 1) satisfying all clauses together with x = s.
inline std::map<BitString, Assignment> find_witnesses(const std::vector<RlinClause>& clauses, const std::vector<VarId>& x,
                                                      std::vector<VarId> ext, const std::vector<BitString>& domain) {
  std::sort(ext.begin(), ext.end());
  std::map<BitString, Assignment> out;
  for (const auto& s : domain) {
    if (s.size() != x.size()) throw InputError("find_witnesses: " + s.str() + " has the wrong length");
    Assignment a;
    for (std::size_t i = 0; i < x.size(); ++i) a[x[i]] = s[i];
    for (const auto& c : clauses)
      for (VarId v : c.vars())
        if (!a.count(v) && !std::binary_search(ext.begin(), ext.end(), v))
          throw InputError("find_witnesses: clause " + c.str() + " uses x" + std::to_string(v) + ", which is neither input nor extension");

    // A clause is refuted once all its variables are assigned and it is false.
    auto refuted = [&]() {
      for (const auto& c : clauses) {
        bool open = false;
        for (VarId v : c.vars())
          if (!a.count(v)) {
            open = true;
            break;
          }
        if (!open && !c.satisfied([&](VarId v) { return a.at(v); })) return true;
      }
      return false;
    };
    std::function<bool(std::size_t)> search = [&](std::size_t k) {
      if (refuted()) return false;
      if (k == ext.size()) return true;
      for (bool b : {false, true}) {
        a[ext[k]] = b;
        if (search(k + 1)) return true;
      }
      a.erase(ext[k]);
      return false;
    };
    if (!search(0)) throw InputError("find_witnesses: no satisfying extension for " + s.str());
    Assignment w;
    for (VarId v : ext) w[v] = a.at(v);
    out.emplace(s, std::move(w));
  }
  return out;
}

enum class LineFate { inner, sink, phi_only, pure_z, childless, unused };

inline const char* fate_name(LineFate f) {
  switch (f) {
    case LineFate::inner: return "inner";
    case LineFate::sink: return "sink";
    case LineFate::phi_only: return "deleted-phi-only";
    case LineFate::pure_z: return "deleted-pure-z";
    case LineFate::childless: return "deleted-childless";
    case LineFate::unused: return "deleted-unused";
  }
  return "?";
}

struct CompiledInterpolant {
  Protocol protocol{0, 2};
  std::vector<LineFate> fate;                    // per proof line position
  std::vector<std::optional<VertexId>> vertex;   // per proof line position
  std::map<BitString, Assignment> y_witness;     // a ∈ U ↦ ȳ_a
  std::map<BitString, Assignment> z_witness;     // b ∈ V ↦ z̄_b
};

// Witnesses may be supplied to override the search (used to test that bad
// witnesses break the protocol).
struct InterpolantWitnesses {
  std::optional<std::map<BitString, Assignment>> y;
  std::optional<std::map<BitString, Assignment>> z;
};

// The proof DAG reversed: the empty clause becomes the source, lines derived
// only from φ-axioms are dropped, ψ-axioms become sinks at their x variable,
// and every other line v gets q_v(a) = (f_i^0(a, ȳ_a))_i, r_v(b) = (f_i^1(z̄_b))_i,
// so q_v = r_v exactly when the clause is false.
inline CompiledInterpolant compile_interpolant_detailed(const std::vector<RlinClause>& phi, const std::vector<RlinClause>& psi,
                                                        const RlinRefutation& proof, const VariablePartition& part,
                                                        const PartialMonotoneFunction& f, const InterpolantWitnesses& given = {}) {
  part.validate();
  if (part.x.size() != f.n())
    throw PreconditionError("partition has " + std::to_string(part.x.size()) + " input variables but n=" + std::to_string(f.n()));
  std::vector<RlinClause> axioms = phi;
  axioms.insert(axioms.end(), psi.begin(), psi.end());
  if (auto check = check_refutation(axioms, proof); !check)
    throw PreconditionError("refutation does not check" + (check.line ? " at line " + std::to_string(*check.line) : std::string()) +
                            ": " + check.reason);

  CompiledInterpolant out;
  out.y_witness = given.y ? *given.y : find_witnesses(phi, part.x, part.y, f.zeros());
  out.z_witness = given.z ? *given.z : find_witnesses(psi, part.x, part.z, f.ones());

  const auto& lines = proof.lines();
  const std::size_t L = lines.size();
  const std::set<RlinClause> phi_set(phi.begin(), phi.end());
  std::vector<std::vector<std::size_t>> premises(L);
  for (std::size_t i = 0; i < L; ++i)
    for (std::size_t id : lines[i].premises()) premises[i].push_back(*proof.index_of(id));

  // Ancestry of the empty clause; whether any contributing axiom is a ψ-axiom.
  std::vector<bool> used(L, false), touches_psi(L, false);
  used[L - 1] = true;
  for (std::size_t i = L; i-- > 0;)
    if (used[i])
      for (std::size_t p : premises[i]) used[p] = true;
  for (std::size_t i = 0; i < L; ++i) {
    if (lines[i].is_axiom())
      touches_psi[i] = !phi_set.count(lines[i].clause);
    else
      for (std::size_t p : premises[i]) touches_psi[i] = touches_psi[i] || touches_psi[p];
  }

  out.fate.assign(L, LineFate::inner);
  std::vector<std::optional<std::size_t>> sink_index(L);
  for (std::size_t i = 0; i < L; ++i) {
    if (!used[i]) {
      out.fate[i] = LineFate::unused;
    } else if (!touches_psi[i]) {
      out.fate[i] = LineFate::phi_only;
    } else if (lines[i].is_axiom()) {
      std::optional<VarId> xv;
      for (VarId v : lines[i].clause.vars()) {
        if (part.role(v) != VariablePartition::Role::x) continue;
        if (xv) throw InputError("ψ-axiom " + lines[i].clause.str() + " has more than one input variable");
        xv = v;
      }
      if (xv) {
        out.fate[i] = LineFate::sink;
        sink_index[i] = part.input_index(*xv);
      } else {
        out.fate[i] = LineFate::pure_z;
      }
    }
  }
  // Inner lines all of whose premises were dropped can never be feasible.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < L; ++i) {
      if (out.fate[i] != LineFate::inner) continue;
      bool any = std::any_of(premises[i].begin(), premises[i].end(),
                             [&](std::size_t p) { return out.fate[p] == LineFate::inner || out.fate[p] == LineFate::sink; });
      if (!any) {
        out.fate[i] = LineFate::childless;
        changed = true;
      }
    }
  }
  if (out.fate[L - 1] != LineFate::inner) throw PreconditionError("the empty clause does not depend on any ψ-axiom");

  auto label_for = [&](const RlinClause& c) {
    std::vector<std::pair<LinearPolynomial, LinearPolynomial>> split;
    for (const auto& poly : c.polys()) split.push_back(split_polynomial(poly, part));
    std::vector<Value> q, r;
    for (const auto& a : f.zeros()) {
      const Assignment& ya = out.y_witness.at(a);
      BitString bits;
      for (const auto& [f0, f1] : split)
        bits.push_back(f0.eval([&](VarId v) {
          if (part.role(v) == VariablePartition::Role::x) return a.bit(part.input_index(v));
          auto it = ya.find(v);
          if (it == ya.end()) throw InputError("no witness value for x" + std::to_string(v));
          return it->second;
        }));
      q.emplace_back(std::move(bits));
    }
    for (const auto& b : f.ones()) {
      const Assignment& zb = out.z_witness.at(b);
      BitString bits;
      for (const auto& [f0, f1] : split)
        bits.push_back(f1.eval([&](VarId v) {
          auto it = zb.find(v);
          if (it == zb.end()) throw InputError("no witness value for x" + std::to_string(v));
          return it->second;
        }));
      r.emplace_back(std::move(bits));
    }
    return EqualityLabel{{make_table(ValueTable(Side::x, f.zero_keys(), std::move(q))),
                          make_table(ValueTable(Side::y, f.one_keys(), std::move(r)))}};
  };

  Protocol p(f.n(), 2);
  out.vertex.assign(L, std::nullopt);
  for (std::size_t i = L; i-- > 0;) {
    if (out.fate[i] == LineFate::inner)
      out.vertex[i] = p.add_inner(label_for(lines[i].clause));
    else if (out.fate[i] == LineFate::sink)
      out.vertex[i] = p.add_sink(*sink_index[i]);
  }
  for (std::size_t i = L; i-- > 0;) {
    if (out.fate[i] != LineFate::inner) continue;
    std::vector<VertexId> children;
    for (std::size_t pr : premises[i])
      if (out.vertex[pr] && std::find(children.begin(), children.end(), *out.vertex[pr]) == children.end())
        children.push_back(*out.vertex[pr]);
    for (VertexId c : children) p.add_edge(*out.vertex[i], c);
  }
  out.protocol = std::move(p);
  return out;
}

inline Protocol compile_interpolant(const std::vector<RlinClause>& phi, const std::vector<RlinClause>& psi,
                                    const RlinRefutation& proof, const VariablePartition& part,
                                    const PartialMonotoneFunction& f, const InterpolantWitnesses& given = {}) {
  return compile_interpolant_detailed(phi, psi, proof, part, f, given).protocol;
}

}  // namespace kwproto
