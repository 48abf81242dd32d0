// kwproto :: baseline protocol constructions

#pragma once

#include "kwproto/protocol.hpp"

namespace kwproto {

namespace detail {

inline void require_monotone(const PartialMonotoneFunction& f) {
  if (auto bad = check_monotone(f))
    throw PreconditionError("function is not monotone-compatible: x=" + bad->x.str() + " y=" + bad->y.str());
}

inline TablePair constant_pair(const PartialMonotoneFunction& f, const Value& q, const Value& r) {
  return {make_table(ValueTable::constant(Side::x, f.zero_keys(), q)),
          make_table(ValueTable::constant(Side::y, f.one_keys(), r))};
}

}  // namespace detail

// Degree-n inequality protocol of size n+1: an always-feasible source
// (0 < 1) whose children are the n sinks.
inline Protocol fact_degree_n(const PartialMonotoneFunction& f) {
  detail::require_monotone(f);
  Protocol p(f.n(), f.n());
  VertexId source = p.add_inner(InequalityLabel{detail::constant_pair(f, 0, 1)});
  for (std::size_t i = 1; i <= f.n(); ++i) p.add_edge(source, p.add_sink(i));
  return p;
}

// Degree-2 protocol with a conjunction of n−2 inequalities and size 2n−1.
// Vertex v_t asserts that no index i < t solves the game, each such fact
// written as −x_i < 1 − y_i and padded with 0 < 1 up to arity n−2; v_t
// branches to sink t and v_{t+1}, the last one to sinks n−1 and n.
inline Protocol fact_chain(const PartialMonotoneFunction& f) {
  detail::require_monotone(f);
  const std::size_t n = f.n();
  if (n < 3) throw PreconditionError("fact_chain needs n >= 3");
  Protocol p(n, 2);

  auto not_solution = [&](std::size_t i) {
    std::vector<Value> q, r;
    for (const auto& x : f.zeros()) q.emplace_back(x.bit(i) ? -1 : 0);
    for (const auto& y : f.ones()) r.emplace_back(y.bit(i) ? 0 : 1);
    return TablePair{make_table(ValueTable(Side::x, f.zero_keys(), std::move(q))),
                     make_table(ValueTable(Side::y, f.one_keys(), std::move(r)))};
  };
  const TablePair always = detail::constant_pair(f, 0, 1);

  std::vector<VertexId> chain;
  for (std::size_t t = 1; t <= n - 1; ++t) {
    ConjunctionLabel label;
    for (std::size_t i = 1; i < t; ++i) label.pairs.push_back(not_solution(i));
    while (label.pairs.size() < n - 2) label.pairs.push_back(always);
    chain.push_back(p.add_inner(std::move(label)));
  }
  for (std::size_t t = 1; t <= n - 1; ++t) {
    p.add_edge(chain[t - 1], p.add_sink(t));
    if (t < n - 1) p.add_edge(chain[t - 1], chain[t]);
  }
  p.add_edge(chain[n - 2], p.add_sink(n));
  return p;
}

}  // namespace kwproto
