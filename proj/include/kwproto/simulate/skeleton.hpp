// kwproto :: skeleton of the simulation (vertices v(I) and relabeled sinks)

#pragma once

#include <map>

#include "kwproto/protocol.hpp"
#include "kwproto/simulate/witness.hpp"

namespace kwproto {

struct SkeletonVertex {
  VertexId origin;                     // vertex of the simulated protocol
  std::optional<WitnessTuple> witness;  // set for inner origins
  std::optional<std::size_t> sink_index;
  BitEqualityConjunction label;
};

struct Skeleton {
  std::size_t width = 1;
  std::size_t arity = 1;
  std::vector<SkeletonVertex> vertices;
  std::map<std::pair<VertexId, WitnessTuple>, std::size_t> by_origin;  // sinks use the empty tuple

  const SkeletonVertex& at(VertexId origin, const WitnessTuple& I) const { return vertices[by_origin.at({origin, I})]; }
};

// The common conjunction arity of all inner labels (1 when there are none).
inline std::size_t protocol_arity(const Protocol& p) {
  std::optional<std::size_t> c;
  for (VertexId v = 0; v < p.size(); ++v) {
    const Vertex& vx = p.vertex(v);
    if (vx.is_sink()) continue;
    std::size_t k = conjunction_pairs(vx.inner().label).size();
    if (k == 0) throw PreconditionError("vertex " + std::to_string(v) + " has an empty conjunction");
    if (c && *c != k)
      throw PreconditionError("conjunction arities differ (" + std::to_string(*c) + " and " + std::to_string(k) + ")");
    c = k;
  }
  return c.value_or(1);
}

// Every value must be an integer in [0, 2^w).
inline void require_normalized(const Protocol& p, std::size_t width) {
  for (VertexId v = 0; v < p.size(); ++v) {
    const Vertex& vx = p.vertex(v);
    if (vx.is_sink()) continue;
    for (const auto& tp : conjunction_pairs(vx.inner().label))
      for (const auto* t : {tp.q.get(), tp.r.get()})
        for (const auto& val : t->values()) {
          if (!val.is_number() || !val.is_integer() || val.number() < 0 || msb_or_zero(numerator(val.number())) >= width)
            throw PreconditionError("vertex " + std::to_string(v) + " holds a value that is not a " +
                                    std::to_string(width) + "-bit normalized integer");
        }
  }
}

// One vertex per sink, labeled x_i = 0 ∧ 1 = y_i, and w^c vertices v(I)
// labeled Φ^I_v per inner vertex, in vertex order and lexicographic I order.
inline Skeleton build_skeleton(const Protocol& p, std::size_t width) {
  if (width < 1) throw InputError("build_skeleton: width must be at least 1");
  Skeleton s;
  s.width = width;
  s.arity = protocol_arity(p);
  const auto tuples = all_witness_tuples(s.arity, width);
  for (VertexId v = 0; v < p.size(); ++v) {
    const Vertex& vx = p.vertex(v);
    if (vx.is_sink()) {
      s.by_origin[{v, WitnessTuple{}}] = s.vertices.size();
      s.vertices.push_back({v, std::nullopt, vx.sink().index, canonical_sink_conjunction(vx.sink().index)});
      continue;
    }
    const auto pairs = conjunction_pairs(vx.inner().label);
    for (const auto& I : tuples) {
      s.by_origin[{v, I}] = s.vertices.size();
      s.vertices.push_back({v, I, std::nullopt, phi_label(pairs, width, I)});
    }
  }
  return s;
}

}  // namespace kwproto
