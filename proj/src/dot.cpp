#include "tropcorr/dot.hpp"

#include <sstream>

namespace tropcorr {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

// Writes vertices, legs and edges of one tree. Node names get `prefix`.
void emit_tree(std::ostream& out, const ExplicitTree& tree, const std::string& prefix, const char* link,
               const std::vector<std::string>& edge_labels, const std::string& indent) {
  for (std::size_t v = 0; v < tree.vertices.size(); ++v) {
    out << indent << prefix << v << " [shape=circle, width=0.15, label=\"\"];\n";
  }
  for (std::size_t i = 0; i < tree.marking.size(); ++i) {
    out << indent << prefix << "leg" << i << " [shape=plaintext, label=" << quote(tree.marking.label(i)) << "];\n";
  }
  for (std::size_t e = 0; e < tree.edges.size(); ++e) {
    out << indent << prefix << tree.edges[e].parent << ' ' << link << ' ' << prefix << tree.edges[e].child;
    if (!edge_labels.empty()) out << " [label=" << quote(edge_labels[e]) << "]";
    out << ";\n";
  }
  for (std::size_t i = 0; i < tree.leg_vertex.size(); ++i) {
    out << indent << prefix << tree.leg_vertex[i] << ' ' << link << ' ' << prefix << "leg" << i << ";\n";
  }
}

}  // namespace

std::string dot_tree(const MarkedTree& tree) {
  std::ostringstream out;
  out << "graph tree {\n";
  emit_tree(out, to_explicit_tree(tree), "v", "--", {}, "  ");
  out << "}\n";
  return out.str();
}

std::string dot_curve(const ConePoint& point) {
  std::vector<std::string> labels;
  for (const auto& c : point.coords()) labels.push_back(to_string(c));
  std::ostringstream out;
  out << "graph curve {\n";
  emit_tree(out, to_explicit_tree(point.tree()), "v", "--", labels, "  ");
  out << "}\n";
  return out.str();
}

std::string dot_type(const CombinatorialType& type) {
  const ExplicitTree t1 = to_explicit_tree(type.t1);
  std::ostringstream out;
  out << "digraph type {\n  rankdir=TB;\n";

  out << "  subgraph cluster_t2 {\n    label=\"T2\";\n";
  for (std::size_t v = 0; v < type.vertices.size(); ++v) {
    out << "    u" << v << " [shape=circle, width=0.15, label=\"\"];\n";
  }
  const Marking& pre = type.legs.preimage_marking;
  for (std::size_t q = 0; q < pre.size(); ++q) {
    out << "    uleg" << q << " [shape=plaintext, label=" << quote(pre.label(q)) << "];\n";
  }
  for (const auto& e : type.edges) {
    out << "    u" << e.outer << " -> u" << e.inner << " [dir=none, label=\"deg " << e.degree << "\"];\n";
  }
  for (std::size_t q = 0; q < type.leg_vertex.size(); ++q) {
    out << "    u" << type.leg_vertex[q] << " -> uleg" << q << " [dir=none];\n";
  }
  out << "  }\n";

  out << "  subgraph cluster_t1 {\n    label=\"T1\";\n";
  std::ostringstream body;
  emit_tree(body, t1, "v", "->", {}, "    ");
  // Tree edges in the lower layer are undirected too.
  std::string lines = body.str();
  std::istringstream split(lines);
  for (std::string line; std::getline(split, line);) {
    if (line.find(" -> ") != std::string::npos) line.insert(line.size() - 1, " [dir=none]");
    out << line << '\n';
  }
  out << "  }\n";

  for (std::size_t v = 0; v < type.vertices.size(); ++v) {
    out << "  u" << v << " -> v" << type.vertices[v].image << " [style=dashed, color=gray];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace tropcorr
