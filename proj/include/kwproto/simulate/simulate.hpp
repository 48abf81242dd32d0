// kwproto :: conjunction-of-inequalities → degree-2 equality simulation and
// the equality pipelines built on it

#pragma once

#include "kwproto/normalize.hpp"
#include "kwproto/simulate/skeleton.hpp"
#include "kwproto/simulate/tree.hpp"
#include "kwproto/verifier.hpp"

namespace kwproto {

struct SimulateOptions {
  bool check = false;  // verify the input first; PreconditionError if it fails
  unsigned jobs = 1;
};

struct SimulationResult {
  Protocol protocol{0, 2};
  std::size_t width = 0;
  std::size_t arity = 0;
  std::size_t skeleton_size = 0;
  std::size_t tree_count = 0;
  Integer tree_vertices = 0;  // Σ |T| over all trees, leaf references included
};

// Children of v as search candidates: inner children take positions 1.. in
// child order, sinks follow, so a sink is at position 1 only if all are sinks.
inline std::vector<Candidate> search_candidates(const Protocol& p, const std::vector<VertexId>& children) {
  std::vector<Candidate> out;
  for (VertexId c : children)
    if (!p.vertex(c).is_sink()) out.push_back(Candidate::inner(c, conjunction_pairs(p.vertex(c).inner().label)));
  for (VertexId c : children)
    if (p.vertex(c).is_sink()) out.push_back(Candidate::sink(c, p.vertex(c).sink().index));
  return out;
}

namespace detail {

inline void require_check(const Protocol& p, const PartialMonotoneFunction& f, const SimulateOptions& opt) {
  if (!opt.check) return;
  VerifyOptions vo;
  vo.jobs = opt.jobs;
  auto report = verify_solves(p, f, vo);
  if (!report.passed()) {
    const auto& v = report.violations.front();
    throw PreconditionError("input protocol does not solve f: " + std::string(condition_name(v.condition)) + " at vertex " +
                            std::to_string(v.vertex) + " x=" + v.x.str() + " y=" + v.y.str());
  }
}

}  // namespace detail

// Simulates a protocol whose inner labels are conjunctions of c inequalities
// over w-bit normalized values (an inequality counts as c = 1) by a degree-2
// equality protocol. Skeleton vertices are shared by identity: v(I) by
// (v, I), relabeled sinks by index.
inline SimulationResult simulate_with_stats(const Protocol& p, const PartialMonotoneFunction& f, std::size_t width,
                                            const SimulateOptions& opt = {}) {
  if (p.n() != f.n()) throw PreconditionError("protocol has n=" + std::to_string(p.n()) + " but function has n=" + std::to_string(f.n()));
  auto wf = check_wellformed(p);
  if (!wf.ok()) throw PreconditionError("protocol is not well-formed: " + wf.issues.front().message);
  require_normalized(p, width);
  detail::require_check(p, f, opt);

  const Skeleton skeleton = build_skeleton(p, width);
  const std::size_t c = skeleton.arity;
  const KeySet zeros = f.zero_keys(), ones = f.one_keys();

  SimulationResult result;
  result.width = width;
  result.arity = c;
  Protocol out(p.n(), 2);
  auto encoded = [&](const BitEqualityConjunction& label) {
    return FeasibilityLabel{EqualityLabel{encode_bit_conjunction(label, zeros, ones)}};
  };

  const VertexId source = out.add_inner(EqualityLabel{encode_bit_conjunction({}, zeros, ones)});

  std::vector<VertexId> skeleton_ids(skeleton.vertices.size());
  std::map<std::size_t, VertexId> sink_by_index;
  for (std::size_t i = 0; i < skeleton.vertices.size(); ++i) {
    const auto& sv = skeleton.vertices[i];
    if (sv.sink_index) {
      auto [it, fresh] = sink_by_index.try_emplace(*sv.sink_index, 0);
      if (fresh) it->second = out.add_sink(*sv.sink_index);
      skeleton_ids[i] = it->second;
    } else {
      skeleton_ids[i] = out.add_inner(encoded(sv.label));
    }
  }
  result.skeleton_size = out.size() - 1;

  auto attach = [&](const SearchTree& tree, const BitEqualityConjunction& phi, VertexId root_id) {
    std::vector<VertexId> ids(tree.size());
    for (std::uint32_t i = 0; i < tree.size(); ++i) {
      const auto& node = tree.node(i);
      if (i == tree.root())
        ids[i] = root_id;
      else if (node.is_leaf())
        ids[i] = skeleton_ids[skeleton.by_origin.at({tree.leaf_candidate(node).vertex, tree.leaf_witness(node)})];
      else
        ids[i] = out.add_inner(encoded(tree.label(i, phi)));
    }
    for (std::uint32_t i = 0; i < tree.size(); ++i) {
      const auto& node = tree.node(i);
      for (std::uint8_t k = 0; k < node.child_count; ++k) out.add_edge(ids[i], ids[node.children[k]]);
    }
    ++result.tree_count;
    result.tree_vertices += tree.size();
  };

  // Top tree: φ empty, the only candidate is the source of P.
  const VertexId p_source = p.source();
  attach(build_tree({}, search_candidates(p, {p_source}), c, width), {}, source);

  for (VertexId v = 0; v < p.size(); ++v) {
    const Vertex& vx = p.vertex(v);
    if (vx.is_sink()) continue;
    const SearchTree tree = build_tree({}, search_candidates(p, vx.children), c, width);
    for (const auto& I : all_witness_tuples(c, width)) {
      const std::size_t s = skeleton.by_origin.at({v, I});
      attach(tree, skeleton.vertices[s].label, skeleton_ids[s]);
    }
  }
  result.protocol = std::move(out);
  return result;
}

inline Protocol simulate_conj_to_eq(const Protocol& p, const PartialMonotoneFunction& f, std::size_t width,
                                    const SimulateOptions& opt = {}) {
  return simulate_with_stats(p, f, width, opt).protocol;
}

// q = r becomes q < r + 1 ∧ −q < −r + 1. Bit-string values are read as
// integers with a leading 1 so that strings of different lengths stay distinct.
inline Protocol eq_to_conj2(const Protocol& p) {
  auto as_integer = [](const Value& v) -> Integer {
    if (v.is_bits()) return bits_to_integer(v.bits());
    if (!v.is_integer()) throw InputError("eq_to_conj2: value " + to_string(v) + " is not an integer");
    return numerator(v.number());
  };
  auto mapped = [&](const TablePtr& t, const Integer& scale, const Integer& shift) {
    std::vector<Value> vals;
    vals.reserve(t->size());
    for (const auto& v : t->values()) vals.emplace_back(Rational(scale * as_integer(v) + shift));
    return make_table(ValueTable(t->side(), t->key_set(), std::move(vals)));
  };

  Protocol out(p.n(), p.degree());
  for (VertexId v = 0; v < p.size(); ++v) {
    const Vertex& vx = p.vertex(v);
    if (vx.is_sink()) {
      out.add_sink(vx.sink().index, vx.sink().label);
      continue;
    }
    const auto* eq = std::get_if<EqualityLabel>(&vx.inner().label);
    if (!eq)
      throw PreconditionError("eq_to_conj2: vertex " + std::to_string(v) + " carries a " + label_kind(vx.inner().label) +
                              " label, expected eq");
    const TablePair& t = eq->tables;
    out.add_inner(ConjunctionLabel{{{mapped(t.q, 1, 0), mapped(t.r, 1, 1)}, {mapped(t.q, -1, 0), mapped(t.r, -1, 1)}}});
  }
  for (VertexId v = 0; v < p.size(); ++v)
    for (VertexId ch : p.vertex(v).children) out.add_edge(v, ch);
  return out;
}

struct DegreeReduction {
  SimulationResult simulation;
  Protocol conjunction{0, 2};  // the intermediate arity-2 protocol, normalized
};

// Equality protocol of any degree → degree-2 equality protocol, through
// conjunctions of two inequalities. min_width pins the bit width from below.
inline DegreeReduction degree_reduce_with_stats(const Protocol& p, const PartialMonotoneFunction& f,
                                                std::size_t min_width = 0, const SimulateOptions& opt = {}) {
  detail::require_check(p, f, opt);
  auto normalized = rank_normalize(eq_to_conj2(p), min_width);
  SimulateOptions inner = opt;
  inner.check = false;
  DegreeReduction out;
  out.simulation = simulate_with_stats(normalized.protocol, f, normalized.width, inner);
  out.conjunction = std::move(normalized.protocol);
  return out;
}

inline Protocol degree_reduce_eq(const Protocol& p, const PartialMonotoneFunction& f, std::size_t min_width = 0,
                                 const SimulateOptions& opt = {}) {
  return degree_reduce_with_stats(p, f, min_width, opt).simulation.protocol;
}

}  // namespace kwproto
