// kwproto tests :: random instances and independent reference computations

#pragma once

#include <random>

#include "kwproto/kwproto.hpp"

namespace kwtest {

using namespace kwproto;

using Rng = std::mt19937_64;

inline BitString bits(const char* s) { return BitString::parse(s); }

inline PartialMonotoneFunction make_function(std::size_t n, std::initializer_list<const char*> zeros,
                                             std::initializer_list<const char*> ones) {
  std::vector<BitString> z, o;
  for (auto* s : zeros) z.push_back(bits(s));
  for (auto* s : ones) o.push_back(bits(s));
  return PartialMonotoneFunction(n, z, o);
}

// Random U and V with no y ∈ V below any x ∈ U; both nonempty.
inline PartialMonotoneFunction random_function(Rng& rng, std::size_t n, std::size_t max_each = 4) {
  const auto all = all_bitstrings(n);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  std::uniform_int_distribution<std::size_t> count(1, max_each);
  while (true) {
    std::vector<BitString> zeros, ones;
    const std::size_t nz = count(rng), no = count(rng);
    for (std::size_t k = 0; k < nz; ++k) zeros.push_back(all[pick(rng)]);
    std::sort(zeros.begin(), zeros.end());
    zeros.erase(std::unique(zeros.begin(), zeros.end()), zeros.end());
    std::vector<BitString> allowed;
    for (const auto& y : all)
      if (std::none_of(zeros.begin(), zeros.end(), [&](const BitString& x) { return y.leq(x); })) allowed.push_back(y);
    if (allowed.empty()) continue;
    std::uniform_int_distribution<std::size_t> pick_allowed(0, allowed.size() - 1);
    for (std::size_t k = 0; k < no; ++k) ones.push_back(allowed[pick_allowed(rng)]);
    return PartialMonotoneFunction(n, zeros, ones);
  }
}

// Some i with x_i = 0 ∧ y_i = 1, by a scan independent of the library.
inline bool solvable(const BitString& x, const BitString& y) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x.str()[i] == '0' && y.str()[i] == '1') return true;
  return false;
}

// Integer value of a bit string, most significant first.
inline std::uint64_t as_number(const BitString& s) {
  std::uint64_t v = 0;
  for (char ch : s.str()) v = 2 * v + static_cast<std::uint64_t>(ch - '0');
  return v;
}

// Reference Def. 1 check written directly from the definition: the source is
// feasible and every feasible inner vertex has a feasible child, for all of U×V.
inline bool solves_reference(const Protocol& p, const PartialMonotoneFunction& f) {
  auto in = p.in_degrees();
  std::vector<VertexId> sources;
  for (VertexId v = 0; v < p.size(); ++v)
    if (in[v] == 0) sources.push_back(v);
  if (sources.size() != 1) return false;
  for (const auto& v : p.vertices())
    if (v.children.size() > p.degree()) return false;
  for (const auto& x : f.zeros())
    for (const auto& y : f.ones()) {
      auto feasible = [&](VertexId v) {
        const Vertex& vx = p.vertex(v);
        if (vx.is_sink()) return x.str()[vx.sink().index - 1] == '0' && y.str()[vx.sink().index - 1] == '1';
        return eval_label(vx.inner().label, x, y);
      };
      if (!feasible(sources[0])) return false;
      for (VertexId v = 0; v < p.size(); ++v) {
        const Vertex& vx = p.vertex(v);
        if (vx.is_sink() || !feasible(v)) continue;
        if (std::none_of(vx.children.begin(), vx.children.end(), feasible)) return false;
      }
    }
  return true;
}

// Random equality protocol over f: a DAG on `size` vertices with vertex 0 as
// the only source, random small integer or bit-string tables, and some sinks.
inline Protocol random_equality_protocol(Rng& rng, const PartialMonotoneFunction& f, std::size_t size) {
  std::uniform_int_distribution<int> small(-2, 2);
  std::bernoulli_distribution coin(0.5);
  Protocol p(f.n(), size);
  const std::size_t sinks = std::max<std::size_t>(1, size / 3);
  const std::size_t inner = size - sinks;
  auto table = [&](Side side, bool as_bits) {
    std::vector<Value> vals;
    for (std::size_t k = 0; k < f.keys(side)->size(); ++k) {
      if (as_bits) {
        BitString b;
        const std::size_t len = static_cast<std::size_t>(std::uniform_int_distribution<int>(0, 2)(rng));
        for (std::size_t i = 0; i < len; ++i) b.push_back(coin(rng));
        vals.emplace_back(std::move(b));
      } else {
        vals.emplace_back(small(rng));
      }
    }
    return make_table(ValueTable(side, f.keys(side), std::move(vals)));
  };
  for (std::size_t v = 0; v < inner; ++v) {
    bool as_bits = coin(rng);
    p.add_inner(EqualityLabel{{table(Side::x, as_bits), table(Side::y, as_bits)}});
  }
  std::uniform_int_distribution<std::size_t> index(1, f.n());
  for (std::size_t s = 0; s < sinks; ++s) p.add_sink(index(rng));
  for (VertexId v = 1; v < size; ++v) {
    std::uniform_int_distribution<VertexId> parent(0, static_cast<VertexId>(std::min<std::size_t>(v, inner) - 1));
    p.add_edge(parent(rng), v);
  }
  std::uniform_int_distribution<VertexId> any_sink(static_cast<VertexId>(inner), static_cast<VertexId>(size - 1));
  for (VertexId v = 0; v < inner; ++v)
    if (p.vertex(v).children.empty()) p.add_edge(v, any_sink(rng));
  return p;
}

// Degree-3 equality protocol solving every monotone f on n bits. A vertex
// records, for coordinates 1..i in a random order, which non-solving case
// (x_j = y_j, or x_j = 1 ∧ y_j = 0) holds; its children are the sink for the
// next coordinate and the two cases for it. Labels are bit conjunctions
// encoded into equalities over f's U and V.
inline Protocol splitter_protocol(Rng& rng, const PartialMonotoneFunction& f) {
  const std::size_t n = f.n();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i + 1;
  std::shuffle(order.begin(), order.end(), rng);

  Protocol p(n, 3);
  std::vector<VertexId> sink_of(n + 1);
  auto encode = [&](const BitEqualityConjunction& c) { return EqualityLabel{encode_bit_conjunction(c, f.zero_keys(), f.one_keys())}; };
  const VertexId root = p.add_inner(encode({}));
  for (std::size_t i = 1; i <= n; ++i) sink_of[i] = p.add_sink(i);

  std::vector<std::pair<VertexId, BitEqualityConjunction>> level{{root, {}}};
  for (std::size_t depth = 0; depth < n; ++depth) {
    const std::size_t i = order[depth];
    std::vector<std::pair<VertexId, BitEqualityConjunction>> next;
    for (auto& [v, label] : level) {
      BitEqualityConjunction same = label, above = label;
      same.add(BitTerm::input(Side::x, i), BitTerm::input(Side::y, i));
      above.add(BitTerm::input(Side::x, i), BitTerm::constant(true));
      above.add(BitTerm::constant(false), BitTerm::input(Side::y, i));
      const VertexId a = p.add_inner(encode(same));
      const VertexId b = p.add_inner(encode(above));
      std::vector<VertexId> children{sink_of[i], a, b};
      std::shuffle(children.begin(), children.end(), rng);
      for (VertexId c : children) p.add_edge(v, c);
      next.emplace_back(a, same);
      next.emplace_back(b, above);
    }
    level = std::move(next);
  }
  // The deepest vertices say no coordinate solves the game, so they are never
  // feasible on U×V; any child keeps them well-formed.
  for (auto& [v, label] : level) p.add_edge(v, sink_of[order.back()]);
  return p;
}

}  // namespace kwtest
