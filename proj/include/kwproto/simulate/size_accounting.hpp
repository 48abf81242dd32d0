// kwproto :: exact tree sizes from the case recursion and the closed-form bounds

#pragma once

#include <map>
#include <set>
#include <tuple>

#include "kwproto/simulate/simulate.hpp"

namespace kwproto {

// How many of a vertex's children are inner vertices and how many are sinks.
struct CandidateShape {
  std::size_t inner = 0;
  std::size_t sinks = 0;
  std::size_t size() const { return inner + sinks; }
};

class StageSizes {
 public:
  StageSizes(CandidateShape shape, std::size_t arity, std::size_t width) : shape_(shape), c_(arity), w_(width) {
    if (shape.size() == 0) throw InputError("size accounting: no candidates");
    if (arity < 1 || width < 1) throw InputError("size accounting: arity and width must be positive");
  }

  // |T_{i,j,k}|, leaf references included.
  Integer stage(std::size_t i, std::size_t j, std::size_t k) {
    auto key = std::make_tuple(i, j, k);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Integer v = compute(i, j, k);
    memo_.emplace(key, v);
    return v;
  }

  // |T_{i,c_i,w_i}| for the candidate at position i.
  Integer full(std::size_t i) { return stage(i, arity(i), width(i)); }

  // The whole tree, with the extra root when the search is a single leaf.
  Integer tree() {
    Integer t = full(shape_.size());
    return t == 1 ? Integer(2) : t;
  }

  std::size_t arity(std::size_t i) const { return i <= shape_.inner ? c_ : 1; }
  std::size_t width(std::size_t i) const { return i <= shape_.inner ? w_ : 1; }

 private:
  Integer compute(std::size_t i, std::size_t j, std::size_t k) {
    if (i == 1) {
      if (shape_.inner == 0 || w_ == 1) return 1;
      if (j == 1 && k == 2) return 3;
      if (j == 1) return 2 + stage(1, 1, k - 1);
      if (k == 2) return 1 + 2 * stage(1, j - 1, w_);
      return 1 + stage(1, j, k - 1) + stage(1, j - 1, w_);
    }
    Integer below = full(i - 1);
    Integer equal = k == 1 ? below : stage(i, j, k - 1);
    Integer less = j == 1 ? Integer(1) : stage(i, j - 1, width(i));
    return 2 + equal + less + below;
  }

  CandidateShape shape_;
  std::size_t c_;
  std::size_t w_;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Integer> memo_;
};

inline Integer ipow(std::size_t base, std::size_t exp) { return boost::multiprecision::pow(Integer(base), static_cast<unsigned>(exp)); }

// 2k·w^{j−1} − 1: a position-1 stage without sinks.
inline Integer position_one_size(std::size_t j, std::size_t k, std::size_t w) { return 2 * Integer(k) * ipow(w, j - 1) - 1; }

// 2w^{2pc−1}, the tree bound stated for w ≥ 10.
inline Integer tree_bound(std::size_t p, std::size_t c, std::size_t w) { return 2 * ipow(w, 2 * p * c - 1); }

struct SizeReport {
  std::size_t s = 0, w = 0, c = 0, d = 0;
  Integer skeleton;      // inner vertices · w^c plus sinks
  Integer top_tree;      // exact size of the tree below the new source
  Integer vertex_trees;  // Σ over inner v of w^c · |T_v|
  Integer exact_total;   // top_tree + vertex_trees; bounds the assembled size
  Integer tree_bound_total;  // s·w^c·2w^{2cd−1}
  Integer top_bound;         // 2w^{2c−1}
  Integer closed_form_total;
  bool closed_form_valid = false;  // w ≥ 10
};

// Sizes for a protocol of size s, degree d, arity c at width w, whose inner
// vertices have the given child shapes; `top` is the shape of the source.
inline SizeReport size_accounting(std::size_t s, std::size_t w, std::size_t c, std::size_t d,
                                  const std::vector<CandidateShape>& shapes, CandidateShape top = {1, 0},
                                  std::size_t sinks = 0) {
  if (s < 1 || w < 1 || c < 1 || d < 1) throw InputError("size_accounting: parameters must be positive");
  SizeReport r;
  r.s = s;
  r.w = w;
  r.c = c;
  r.d = d;
  const Integer per_vertex = ipow(w, c);
  r.skeleton = per_vertex * shapes.size() + sinks;
  r.top_tree = StageSizes(top, c, w).tree();
  r.vertex_trees = 0;
  for (const auto& shape : shapes) {
    if (shape.size() > d) throw InputError("size_accounting: a vertex has more children than the degree");
    r.vertex_trees += per_vertex * StageSizes(shape, c, w).tree();
  }
  r.exact_total = r.top_tree + r.vertex_trees;
  r.tree_bound_total = Integer(s) * per_vertex * tree_bound(d, c, w);
  r.top_bound = tree_bound(1, c, w);
  r.closed_form_total = r.tree_bound_total + r.top_bound;
  r.closed_form_valid = w >= 10;
  return r;
}

// Size accounting for simulating p at width w.
inline SizeReport size_accounting(const Protocol& p, std::size_t w) {
  std::vector<CandidateShape> shapes;
  std::set<std::size_t> sink_indices;
  auto shape_of = [&](const std::vector<VertexId>& children) {
    CandidateShape s;
    for (VertexId ch : children) (p.vertex(ch).is_sink() ? s.sinks : s.inner)++;
    return s;
  };
  for (const auto& v : p.vertices()) {
    if (v.is_sink())
      sink_indices.insert(v.sink().index);
    else
      shapes.push_back(shape_of(v.children));
  }
  return size_accounting(p.size(), w, protocol_arity(p), std::max<std::size_t>(1, p.degree()), shapes,
                         shape_of({p.source()}), sink_indices.size());
}

}  // namespace kwproto
