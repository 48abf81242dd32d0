// kwproto :: Graphviz rendering of a protocol

#pragma once

#include <ostream>

#include "kwproto/protocol.hpp"

namespace kwproto::io {

inline void export_dot(std::ostream& os, const Protocol& p) {
  os << "digraph protocol {\n";
  for (VertexId v = 0; v < p.size(); ++v) {
    const Vertex& vx = p.vertex(v);
    if (vx.is_sink())
      os << "  v" << v << " [label=\"" << v << ": sink x" << vx.sink().index << "\", shape=box];\n";
    else
      os << "  v" << v << " [label=\"" << v << ": " << label_kind(vx.inner().label) << "\"];\n";
  }
  for (VertexId v = 0; v < p.size(); ++v)
    for (VertexId c : p.vertex(v).children) os << "  v" << v << " -> v" << c << ";\n";
  os << "}\n";
}

}  // namespace kwproto::io
