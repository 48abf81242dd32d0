// kwproto :: exhaustive verification that a protocol solves the monotone KW game

#pragma once

#include <algorithm>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "kwproto/protocol.hpp"

namespace kwproto {

struct Violation {
  enum class Condition {
    source,          // (a): the source is not feasible
    no_feasible_child,  // (b): a feasible inner vertex has no feasible child
    sink_label,      // a stored sink label disagrees with x_i = 0 ∧ y_i = 1
    undefined,       // a label could not be evaluated on (x, y)
  };
  Condition condition;
  VertexId vertex;
  BitString x;
  BitString y;
  std::string detail;

  friend bool operator<(const Violation& a, const Violation& b) {
    return std::tie(a.vertex, a.x, a.y, a.condition) < std::tie(b.vertex, b.x, b.y, b.condition);
  }
};

inline const char* condition_name(Violation::Condition c) {
  switch (c) {
    case Violation::Condition::source: return "(a) source-infeasible";
    case Violation::Condition::no_feasible_child: return "(b) no-feasible-child";
    case Violation::Condition::sink_label: return "(ii) sink-label";
    case Violation::Condition::undefined: return "undefined-label";
  }
  return "?";
}

struct VerifyReport {
  std::vector<Violation> violations;
  std::size_t pairs_checked = 0;
  bool passed() const { return violations.empty(); }

  // One violation per line.
  void write(std::ostream& os) const {
    for (const auto& v : violations) {
      os << "violation " << condition_name(v.condition) << " vertex " << v.vertex << " x=" << v.x << " y=" << v.y;
      if (!v.detail.empty()) os << " : " << v.detail;
      os << '\n';
    }
  }
};

struct VerifyOptions {
  unsigned jobs = 1;
  // Check stored sink labels on all of {0,1}^n × {0,1}^n (n ≤ 12) instead of U×V.
  bool strict_sinks = false;
};

namespace detail {

inline void check_pair(const Protocol& p, VertexId source, const BitString& x, const BitString& y,
                       std::vector<Violation>& out, std::vector<signed char>& feasible) {
  for (VertexId v = 0; v < p.size(); ++v) {
    try {
      feasible[v] = eval_vertex(p, v, x, y) ? 1 : 0;
    } catch (const std::exception& e) {
      feasible[v] = -1;
      out.push_back({Violation::Condition::undefined, v, x, y, e.what()});
    }
  }
  if (feasible[source] == 0) out.push_back({Violation::Condition::source, source, x, y, {}});
  for (VertexId v = 0; v < p.size(); ++v) {
    const Vertex& vx = p.vertex(v);
    if (vx.is_sink() || feasible[v] != 1) continue;
    bool any = std::any_of(vx.children.begin(), vx.children.end(), [&](VertexId c) { return feasible[c] == 1; });
    if (!any) out.push_back({Violation::Condition::no_feasible_child, v, x, y, {}});
  }
}

inline void check_sink_labels(const Protocol& p, const std::vector<BitString>& xs, const std::vector<BitString>& ys,
                              std::vector<Violation>& out) {
  for (VertexId v = 0; v < p.size(); ++v) {
    const Vertex& vx = p.vertex(v);
    if (!vx.is_sink() || !vx.sink().label) continue;
    for (const auto& x : xs)
      for (const auto& y : ys) {
        bool expected = eval_vertex(p, v, x, y);
        try {
          if (eval_label(*vx.sink().label, x, y) != expected)
            out.push_back({Violation::Condition::sink_label, v, x, y, expected ? "label false" : "label true"});
        } catch (const std::exception& e) {
          out.push_back({Violation::Condition::undefined, v, x, y, e.what()});
        }
      }
  }
}

}  // namespace detail

// Checks (a) and (b) for every x ∈ U, y ∈ V. Sinks are evaluated by their
// index relation, so (ii) holds by construction; stored sink labels are
// compared against it.
inline VerifyReport verify_solves(const Protocol& p, const PartialMonotoneFunction& f, const VerifyOptions& opt = {}) {
  if (p.n() != f.n()) throw PreconditionError("protocol has n=" + std::to_string(p.n()) + " but function has n=" + std::to_string(f.n()));
  auto wf = check_wellformed(p);
  if (!wf.ok()) throw PreconditionError("protocol is not well-formed: " + wf.issues.front().message);
  VertexId source = p.source();

  const auto& xs = f.zeros();
  const auto& ys = f.ones();
  unsigned jobs = std::max(1u, std::min<unsigned>(opt.jobs, static_cast<unsigned>(std::max<std::size_t>(1, xs.size()))));
  std::vector<std::vector<Violation>> parts(jobs);
  auto work = [&](unsigned id) {
    std::vector<signed char> feasible(p.size());
    for (std::size_t i = id; i < xs.size(); i += jobs)
      for (const auto& y : ys) detail::check_pair(p, source, xs[i], y, parts[id], feasible);
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned id = 0; id < jobs; ++id) threads.emplace_back(work, id);
    for (auto& t : threads) t.join();
  }

  VerifyReport report;
  report.pairs_checked = xs.size() * ys.size();
  for (auto& part : parts) report.violations.insert(report.violations.end(), part.begin(), part.end());

  if (opt.strict_sinks) {
    if (p.n() > 12) throw PreconditionError("strict sink check needs n <= 12");
    auto all = all_bitstrings(p.n());
    detail::check_sink_labels(p, all, all, report.violations);
  } else {
    detail::check_sink_labels(p, xs, ys, report.violations);
  }
  std::sort(report.violations.begin(), report.violations.end());
  return report;
}

// Walks from the source, always taking the first feasible child, and returns
// the index of the sink reached.
inline std::size_t trace(const Protocol& p, const BitString& x, const BitString& y) {
  VertexId v = p.source();
  if (!eval_vertex(p, v, x, y))
    throw PreconditionError("trace: source is not feasible for x=" + x.str() + " y=" + y.str());
  while (!p.vertex(v).is_sink()) {
    const auto& children = p.vertex(v).children;
    auto it = std::find_if(children.begin(), children.end(), [&](VertexId c) { return eval_vertex(p, c, x, y); });
    if (it == children.end())
      throw StuckError(v, "trace: stuck at vertex " + std::to_string(v) + " for x=" + x.str() + " y=" + y.str());
    v = *it;
  }
  return p.vertex(v).sink().index;
}

using PairSet = std::vector<std::pair<BitString, BitString>>;

// {(x, y) ∈ U×V : v is feasible}, sorted.
inline PairSet feasible_set(const Protocol& p, VertexId v, const PartialMonotoneFunction& f) {
  if (p.n() != f.n()) throw PreconditionError("feasible_set: n mismatch");
  if (v >= p.size()) throw InputError("feasible_set: unknown vertex " + std::to_string(v));
  PairSet out;
  for (const auto& x : f.zeros())
    for (const auto& y : f.ones())
      if (eval_vertex(p, v, x, y)) out.emplace_back(x, y);
  return out;
}

}  // namespace kwproto
