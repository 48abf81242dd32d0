// kwproto :: Protocol (dag-like protocol with feasibility labels)

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <variant>
#include <vector>

#include "kwproto/function.hpp"
#include "kwproto/label.hpp"

namespace kwproto {

using VertexId = std::uint32_t;

struct InnerRole {
  FeasibilityLabel label;
};

// A sink's relation is x_i = 0 ∧ y_i = 1 by definition. An imported sink may
// carry a stored label, which the verifier checks against that relation.
struct SinkRole {
  std::size_t index;
  std::optional<FeasibilityLabel> label;
};

struct Vertex {
  std::variant<InnerRole, SinkRole> role;
  std::vector<VertexId> children;  // order is significant

  bool is_sink() const { return std::holds_alternative<SinkRole>(role); }
  const SinkRole& sink() const { return std::get<SinkRole>(role); }
  const InnerRole& inner() const { return std::get<InnerRole>(role); }
};

class Protocol {
 public:
  Protocol(std::size_t n, std::size_t degree) : n_(n), degree_(degree) {}

  VertexId add_inner(FeasibilityLabel label) {
    vertices_.push_back(Vertex{InnerRole{std::move(label)}, {}});
    return static_cast<VertexId>(vertices_.size() - 1);
  }

  VertexId add_sink(std::size_t index, std::optional<FeasibilityLabel> label = std::nullopt) {
    vertices_.push_back(Vertex{SinkRole{index, std::move(label)}, {}});
    return static_cast<VertexId>(vertices_.size() - 1);
  }

  void add_edge(VertexId parent, VertexId child) {
    if (parent >= vertices_.size() || child >= vertices_.size())
      throw InputError("edge " + std::to_string(parent) + " -> " + std::to_string(child) + " references an unknown vertex");
    vertices_[parent].children.push_back(child);
  }

  void set_label(VertexId v, FeasibilityLabel label) { std::get<InnerRole>(vertices_.at(v).role).label = std::move(label); }

  std::size_t n() const { return n_; }
  std::size_t degree() const { return degree_; }
  std::size_t size() const { return vertices_.size(); }
  const Vertex& vertex(VertexId v) const { return vertices_.at(v); }
  const std::vector<Vertex>& vertices() const { return vertices_; }

  std::size_t edge_count() const {
    std::size_t e = 0;
    for (const auto& v : vertices_) e += v.children.size();
    return e;
  }

  std::size_t max_out_degree() const {
    std::size_t d = 0;
    for (const auto& v : vertices_) d = std::max(d, v.children.size());
    return d;
  }

  std::vector<std::size_t> in_degrees() const {
    std::vector<std::size_t> in(vertices_.size(), 0);
    for (const auto& v : vertices_)
      for (VertexId c : v.children) ++in[c];
    return in;
  }

  std::vector<VertexId> sources() const {
    auto in = in_degrees();
    std::vector<VertexId> out;
    for (VertexId v = 0; v < in.size(); ++v)
      if (in[v] == 0) out.push_back(v);
    return out;
  }

  // The unique in-degree-0 vertex; throws PreconditionError otherwise.
  VertexId source() const {
    auto s = sources();
    if (s.size() != 1) throw PreconditionError("protocol has " + std::to_string(s.size()) + " sources");
    return s.front();
  }

 private:
  std::size_t n_;
  std::size_t degree_;
  std::vector<Vertex> vertices_;
};

// (x, y, v) ∈ F. Sinks use the index relation; domain errors name the vertex.
inline bool eval_vertex(const Protocol& p, VertexId v, const BitString& x, const BitString& y) {
  const Vertex& vx = p.vertex(v);
  if (vx.is_sink()) {
    std::size_t i = vx.sink().index;
    return !x.bit(i) && y.bit(i);
  }
  try {
    return eval_label(vx.inner().label, x, y);
  } catch (const DomainError& e) {
    throw DomainError("vertex " + std::to_string(v) + ": " + e.what());
  }
}

struct WellformedIssue {
  enum class Kind { cycle, source_count, degree, sink_index, sink_children, childless_inner, duplicate_edge, label, width };
  Kind kind;
  std::optional<VertexId> vertex;
  std::string message;
};

struct WellformedReport {
  std::vector<WellformedIssue> issues;
  bool ok() const { return issues.empty(); }
};

inline WellformedReport check_wellformed(const Protocol& p) {
  WellformedReport report;
  auto issue = [&](WellformedIssue::Kind k, std::optional<VertexId> v, std::string msg) {
    report.issues.push_back({k, v, std::move(msg)});
  };

  auto in = p.in_degrees();
  std::size_t source_count = std::count(in.begin(), in.end(), std::size_t{0});
  if (source_count != 1)
    issue(WellformedIssue::Kind::source_count, std::nullopt,
          source_count == 0 ? "no source" : "multiple sources (" + std::to_string(source_count) + ")");

  // Kahn's algorithm; whatever is left over lies on or behind a cycle.
  std::queue<VertexId> ready;
  for (VertexId v = 0; v < in.size(); ++v)
    if (in[v] == 0) ready.push(v);
  std::size_t seen = 0;
  auto remaining = in;
  while (!ready.empty()) {
    VertexId v = ready.front();
    ready.pop();
    ++seen;
    for (VertexId c : p.vertex(v).children)
      if (--remaining[c] == 0) ready.push(c);
  }
  if (seen != p.size()) issue(WellformedIssue::Kind::cycle, std::nullopt, "graph has a cycle");

  for (VertexId v = 0; v < p.size(); ++v) {
    const Vertex& vx = p.vertex(v);
    std::string name = "vertex " + std::to_string(v);
    if (vx.children.size() > p.degree())
      issue(WellformedIssue::Kind::degree, v,
            name + " has out-degree " + std::to_string(vx.children.size()) + " > " + std::to_string(p.degree()));
    auto sorted = vx.children;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      issue(WellformedIssue::Kind::duplicate_edge, v, name + " has a repeated child");
    if (vx.is_sink()) {
      if (vx.sink().index < 1 || vx.sink().index > p.n())
        issue(WellformedIssue::Kind::sink_index, v, name + " has sink index " + std::to_string(vx.sink().index) + " outside [1," + std::to_string(p.n()) + "]");
      if (!vx.children.empty()) issue(WellformedIssue::Kind::sink_children, v, name + " is a sink with children");
    } else if (vx.children.empty()) {
      issue(WellformedIssue::Kind::childless_inner, v, name + " is an inner vertex without children");
    }
    auto check_label = [&](const FeasibilityLabel& l) {
      auto check_pair = [&](const TablePair& tp) {
        if (tp.q->side() != Side::x || tp.r->side() != Side::y)
          issue(WellformedIssue::Kind::label, v, name + " has a q table not on the x side or r table not on the y side");
      };
      std::visit(
          [&](const auto& lab) {
            using L = std::decay_t<decltype(lab)>;
            if constexpr (std::is_same_v<L, InequalityLabel> || std::is_same_v<L, EqualityLabel>) {
              check_pair(lab.tables);
            } else if constexpr (std::is_same_v<L, ConjunctionLabel>) {
              if (lab.pairs.empty()) issue(WellformedIssue::Kind::label, v, name + " has an empty conjunction of inequalities");
              for (const auto& tp : lab.pairs) check_pair(tp);
            } else {
              for (const auto& t : lab.conj.terms())
                for (const BitTerm* b : {&t.lhs, &t.rhs})
                  if (b->kind() == BitTerm::Kind::input && (b->position() < 1 || b->position() > p.n()))
                    issue(WellformedIssue::Kind::width, v, name + " references input bit " + std::to_string(b->position()));
            }
          },
          l);
    };
    if (vx.is_sink()) {
      if (vx.sink().label) check_label(*vx.sink().label);
    } else {
      check_label(vx.inner().label);
    }
  }
  return report;
}

}  // namespace kwproto
