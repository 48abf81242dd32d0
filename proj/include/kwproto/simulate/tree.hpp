// kwproto :: binary search trees connecting skeleton vertices
//
// A tree searches the candidates u_p, …, u_1 (children of one vertex of the
// simulated protocol) for a feasible one and a witness tuple for it. Stage
// T_{i,j,k} tests bit w−k+1 of inequality j of candidate i; position 1 is
// never refuted, so only "=" or "<" is asked there and the last bit is
// implied. Positions i > 1 ask "=" vs "≠" and then "<" vs ">".
//
// Labels are not stored per node: every node records the node whose label it
// extends plus one χ term, and label() rebuilds the full conjunction.

#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "kwproto/protocol.hpp"
#include "kwproto/simulate/witness.hpp"

namespace kwproto {

// A child of the simulated vertex, as seen by the search. Sinks are searched
// as one inequality x_i < y_i of width 1 over the input bits.
struct Candidate {
  VertexId vertex = 0;
  std::optional<std::size_t> sink_index;
  std::vector<TablePair> pairs;

  bool is_sink() const { return sink_index.has_value(); }

  static Candidate sink(VertexId v, std::size_t index) { return {v, index, {}}; }
  static Candidate inner(VertexId v, std::vector<TablePair> pairs) { return {v, std::nullopt, std::move(pairs)}; }
};

// χ^{pair,(bit,kind)} of the candidate at `position`.
struct ChiTerm {
  std::uint16_t position = 0;
  std::uint16_t pair = 0;
  std::uint16_t bit = 0;
  Chi kind = Chi::eq;
};

class SearchTree {
 public:
  static constexpr std::uint32_t none = std::numeric_limits<std::uint32_t>::max();

  struct Node {
    std::uint32_t label_parent = none;  // none: the label is the tree's φ
    ChiTerm chi;                        // meaningful when label_parent != none
    std::array<std::uint32_t, 2> children{none, none};
    std::uint8_t child_count = 0;
    std::uint32_t leaf = none;  // index into leaves for skeleton references

    bool is_leaf() const { return leaf != none; }
  };

  struct Leaf {
    std::uint32_t position;
    std::uint32_t witness_offset;  // none for sink candidates
  };

  SearchTree(BitEqualityConjunction phi, std::vector<Candidate> candidates, std::size_t arity, std::size_t width)
      : phi_(std::move(phi)), candidates_(std::move(candidates)), arity_(arity), width_(width) {}

  std::size_t size() const { return nodes_.size(); }
  std::uint32_t root() const { return root_; }
  const Node& node(std::uint32_t i) const { return nodes_[i]; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Candidate>& candidates() const { return candidates_; }
  std::size_t arity() const { return arity_; }
  std::size_t width() const { return width_; }
  const BitEqualityConjunction& phi() const { return phi_; }

  std::size_t leaf_count() const { return leaves_.size(); }

  const Candidate& leaf_candidate(const Node& n) const { return candidates_[leaves_[n.leaf].position - 1]; }

  WitnessTuple leaf_witness(const Node& n) const {
    const Leaf& l = leaves_[n.leaf];
    if (l.witness_offset == none) return {};
    auto begin = witness_arena_.begin() + l.witness_offset;
    return {std::vector<std::size_t>(begin, begin + static_cast<std::ptrdiff_t>(arity_))};
  }

  // φ extended by the χ terms on the label chain of an inner node.
  BitEqualityConjunction label(std::uint32_t index) const { return label(index, phi_); }

  // Same, on top of another φ: the tree's shape does not depend on φ.
  BitEqualityConjunction label(std::uint32_t index, const BitEqualityConjunction& phi) const {
    std::vector<ChiTerm> chain;
    for (std::uint32_t i = index; nodes_[i].label_parent != none; i = nodes_[i].label_parent) chain.push_back(nodes_[i].chi);
    BitEqualityConjunction out = phi;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) append_term(out, *it);
    return out;
  }

  // Number of χ terms a node adds to the node it extends (0 for φ roots).
  std::size_t chain_length(std::uint32_t index) const {
    std::size_t len = 0;
    for (std::uint32_t i = index; nodes_[i].label_parent != none; i = nodes_[i].label_parent) ++len;
    return len;
  }

  // The skeleton label a leaf stands for: Φ^I of the candidate or the sink relation.
  BitEqualityConjunction leaf_label(const Node& n) const {
    const Candidate& c = leaf_candidate(n);
    if (c.is_sink()) return canonical_sink_conjunction(*c.sink_index);
    return phi_label(c.pairs, width_, leaf_witness(n));
  }

  void append_term(BitEqualityConjunction& out, const ChiTerm& t) const {
    const Candidate& c = candidates_[t.position - 1];
    if (c.is_sink())
      append_chi(out, BitTerm::input(Side::x, *c.sink_index), BitTerm::input(Side::y, *c.sink_index), t.kind);
    else
      append_table_chi(out, c.pairs[t.pair - 1], width_, t.bit, t.kind);
  }

 private:
  friend class TreeBuilder;

  BitEqualityConjunction phi_;
  std::vector<Candidate> candidates_;
  std::size_t arity_;
  std::size_t width_;
  std::vector<Node> nodes_;
  std::vector<Leaf> leaves_;
  std::vector<std::size_t> witness_arena_;
  std::uint32_t root_ = 0;
};

class TreeBuilder {
 public:
  explicit TreeBuilder(SearchTree& tree) : t_(tree) {}

  // Root of T_{i,j,k}; wit holds the witness entries fixed so far for candidate i.
  std::uint32_t stage(std::size_t i, std::size_t j, std::size_t k, std::uint32_t label_parent, ChiTerm chi,
                      std::vector<std::size_t> wit) {
    const Candidate& u = t_.candidates_[i - 1];
    const std::size_t w = width(i);

    if (i == 1) {
      if (u.is_sink()) return leaf(1, {});
      if (w == 1) return leaf(1, std::vector<std::size_t>(t_.arity_, 1));
      const std::uint32_t root = node(label_parent, chi);
      const std::size_t pos = w - k + 1;
      const ChiTerm eq = term(1, j, pos, Chi::eq), lt = term(1, j, pos, Chi::lt);
      if (j == 1 && k == 2) {  // last two positions of the only entry
        link(root, leaf(1, with(wit, 1, w)));
        link(root, leaf(1, with(wit, 1, w - 1)));
      } else if (j == 1) {
        link(root, stage(1, 1, k - 1, root, eq, wit));
        link(root, leaf(1, with(wit, 1, pos)));
      } else if (k == 2) {  // the "=" branch implies i_j = w
        link(root, stage(1, j - 1, w, root, eq, with(wit, j, w)));
        link(root, stage(1, j - 1, w, root, lt, with(wit, j, w - 1)));
      } else {
        link(root, stage(1, j, k - 1, root, eq, wit));
        link(root, stage(1, j - 1, w, root, lt, with(wit, j, pos)));
      }
      return root;
    }

    const std::uint32_t root = node(label_parent, chi);
    const std::size_t pos = w - k + 1;
    auto next_candidate = [&](ChiTerm via) {
      return stage(i - 1, arity(i - 1), width(i - 1), root, via, fresh(i - 1));
    };
    // B^=
    if (k == 1)
      link(root, next_candidate(term(i, j, pos, Chi::eq)));  // last position: move on
    else
      link(root, stage(i, j, k - 1, root, term(i, j, pos, Chi::eq), wit));
    // b^≠ with B^< and B^>; both extend the label of root, not of b^≠
    const std::uint32_t differ = node(root, term(i, j, pos, Chi::ne));
    link(root, differ);
    if (j == 1)
      link(differ, leaf(i, u.is_sink() ? std::vector<std::size_t>{} : with(wit, 1, pos)));  // last entry fixed
    else
      link(differ, stage(i, j - 1, w, root, term(i, j, pos, Chi::lt), with(wit, j, pos)));
    link(differ, next_candidate(term(i, j, pos, Chi::gt)));
    return root;
  }

  std::size_t arity(std::size_t i) const { return t_.candidates_[i - 1].is_sink() ? 1 : t_.arity_; }
  std::size_t width(std::size_t i) const { return t_.candidates_[i - 1].is_sink() ? 1 : t_.width_; }
  std::vector<std::size_t> fresh(std::size_t i) const { return std::vector<std::size_t>(arity(i), 0); }

 private:
  static ChiTerm term(std::size_t i, std::size_t j, std::size_t bit, Chi kind) {
    return {static_cast<std::uint16_t>(i), static_cast<std::uint16_t>(j), static_cast<std::uint16_t>(bit), kind};
  }

  static std::vector<std::size_t> with(std::vector<std::size_t> wit, std::size_t j, std::size_t value) {
    wit[j - 1] = value;
    return wit;
  }

  std::uint32_t node(std::uint32_t label_parent, ChiTerm chi) {
    SearchTree::Node n;
    n.label_parent = label_parent;
    n.chi = chi;
    t_.nodes_.push_back(n);
    return static_cast<std::uint32_t>(t_.nodes_.size() - 1);
  }

  std::uint32_t leaf(std::size_t position, const std::vector<std::size_t>& wit) {
    SearchTree::Leaf l{static_cast<std::uint32_t>(position), SearchTree::none};
    if (!t_.candidates_[position - 1].is_sink()) {
      l.witness_offset = static_cast<std::uint32_t>(t_.witness_arena_.size());
      t_.witness_arena_.insert(t_.witness_arena_.end(), wit.begin(), wit.end());
    }
    SearchTree::Node n;
    n.leaf = static_cast<std::uint32_t>(t_.leaves_.size());
    t_.leaves_.push_back(l);
    t_.nodes_.push_back(n);
    return static_cast<std::uint32_t>(t_.nodes_.size() - 1);
  }

  void link(std::uint32_t parent, std::uint32_t child) {
    auto& n = t_.nodes_[parent];
    n.children[n.child_count++] = child;
  }

  friend SearchTree build_tree(BitEqualityConjunction, std::vector<Candidate>, std::size_t, std::size_t);
  friend SearchTree build_stage_tree(std::vector<Candidate>, std::size_t, std::size_t, std::size_t, std::size_t, std::size_t);

  void set_root(std::uint32_t r) { t_.root_ = r; }
  void add_root_above(std::uint32_t child) {
    std::uint32_t r = node(SearchTree::none, {});
    link(r, child);
    t_.root_ = r;
  }

  SearchTree& t_;
};

namespace detail {

inline void validate_candidates(const std::vector<Candidate>& candidates, std::size_t arity, std::size_t width) {
  if (arity < 1) throw InputError("build_tree: arity must be at least 1");
  if (width < 1) throw InputError("build_tree: width must be at least 1");
  if (candidates.empty()) throw InputError("build_tree: no candidates");
  bool any_inner = false;
  for (const auto& c : candidates) {
    if (!c.is_sink()) {
      any_inner = true;
      if (c.pairs.size() != arity) throw InputError("build_tree: candidate arity differs from " + std::to_string(arity));
    }
  }
  if (any_inner && candidates.front().is_sink())
    throw PreconditionError("build_tree: position 1 must hold an inner candidate when there is one");
}

}  // namespace detail

// T^φ_{p,c,w} for candidates u_1..u_p (vector order = position order). The
// root is labeled φ; when the search degenerates to a single skeleton leaf a
// φ-labeled root with that one child is put above it.
inline SearchTree build_tree(BitEqualityConjunction phi, std::vector<Candidate> candidates, std::size_t arity,
                             std::size_t width) {
  detail::validate_candidates(candidates, arity, width);
  SearchTree tree(std::move(phi), std::move(candidates), arity, width);
  TreeBuilder b(tree);
  const std::size_t p = tree.candidates().size();
  std::uint32_t r = b.stage(p, b.arity(p), b.width(p), SearchTree::none, {}, b.fresh(p));
  if (tree.node(r).is_leaf())
    b.add_root_above(r);
  else
    b.set_root(r);
  return tree;
}

// A single stage T_{i,j,k} with empty φ, for size accounting. Witness entries
// above j of candidate i are pre-set to the width.
inline SearchTree build_stage_tree(std::vector<Candidate> candidates, std::size_t arity, std::size_t width,
                                   std::size_t i, std::size_t j, std::size_t k) {
  detail::validate_candidates(candidates, arity, width);
  SearchTree tree({}, std::move(candidates), arity, width);
  TreeBuilder b(tree);
  if (i < 1 || i > tree.candidates().size()) throw InputError("build_stage_tree: position out of range");
  auto wit = b.fresh(i);
  for (std::size_t jj = j + 1; jj <= wit.size(); ++jj) wit[jj - 1] = b.width(i);
  b.set_root(b.stage(i, j, k, SearchTree::none, {}, wit));
  return tree;
}

}  // namespace kwproto
