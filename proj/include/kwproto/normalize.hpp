// kwproto :: rank normalization of table values

#pragma once

#include <algorithm>
#include <map>

#include "kwproto/protocol.hpp"

namespace kwproto {

struct NormalizedProtocol {
  Protocol protocol;
  std::size_t width;  // every value fits in this many bits
};

inline std::size_t ceil_log2(std::size_t m) {
  std::size_t w = 0;
  while ((std::size_t{1} << w) < m) ++w;
  return w;
}

namespace detail {

// Replaces q and r values by their rank in the sorted union of both.
inline TablePair rank_pair(const TablePair& tp, std::size_t& max_rank_count) {
  std::vector<Rational> all;
  all.reserve(tp.q->size() + tp.r->size());
  for (const auto* t : {tp.q.get(), tp.r.get()})
    for (const auto& v : t->values()) {
      if (!v.is_number()) throw InputError("rank_normalize: table holds a non-numeric value");
      all.push_back(v.number());
    }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  max_rank_count = std::max(max_rank_count, all.size());
  auto rerank = [&](const TablePtr& t) {
    std::vector<Value> ranked;
    ranked.reserve(t->size());
    for (const auto& v : t->values()) {
      auto pos = std::lower_bound(all.begin(), all.end(), v.number()) - all.begin();
      ranked.emplace_back(static_cast<long long>(pos));
    }
    return make_table(ValueTable(t->side(), t->key_set(), std::move(ranked)));
  };
  return {rerank(tp.q), rerank(tp.r)};
}

inline FeasibilityLabel rank_label(const FeasibilityLabel& label, std::size_t& max_rank_count) {
  return std::visit(
      [&](const auto& l) -> FeasibilityLabel {
        using L = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<L, InequalityLabel>) {
          return InequalityLabel{rank_pair(l.tables, max_rank_count)};
        } else if constexpr (std::is_same_v<L, EqualityLabel>) {
          return EqualityLabel{rank_pair(l.tables, max_rank_count)};
        } else if constexpr (std::is_same_v<L, ConjunctionLabel>) {
          ConjunctionLabel out;
          for (const auto& tp : l.pairs) out.pairs.push_back(rank_pair(tp, max_rank_count));
          return out;
        } else {
          throw PreconditionError("rank_normalize: bit-conjunction labels carry no values to normalize");
        }
      },
      label);
}

}  // namespace detail

// Order-preserving compression of every table pair into {0, …, m−1}. The
// returned width is max(1, ⌈log2 m⌉) over all pairs, raised to min_width if
// that is larger (pass n to get the fixed n-bit reading).
inline NormalizedProtocol rank_normalize(const Protocol& p, std::size_t min_width = 0) {
  Protocol out(p.n(), p.degree());
  std::size_t max_rank_count = 1;
  for (const auto& v : p.vertices()) {
    if (v.is_sink()) {
      std::optional<FeasibilityLabel> label;
      if (v.sink().label && !std::holds_alternative<BitConjunctionLabel>(*v.sink().label))
        label = detail::rank_label(*v.sink().label, max_rank_count);
      else
        label = v.sink().label;
      out.add_sink(v.sink().index, std::move(label));
    } else {
      out.add_inner(detail::rank_label(v.inner().label, max_rank_count));
    }
  }
  for (VertexId v = 0; v < p.size(); ++v)
    for (VertexId c : p.vertex(v).children) out.add_edge(v, c);
  std::size_t width = std::max<std::size_t>({1, ceil_log2(max_rank_count), min_width});
  return {std::move(out), width};
}

}  // namespace kwproto
