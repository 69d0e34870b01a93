#include "partite/dot.hpp"

#include <sstream>

namespace partite {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string table_text(const FinMap& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.table.size(); ++i) s += (i ? "," : "") + std::to_string(m.table[i]);
  return s + "]";
}

void emit(std::ostringstream& os, const Diagram& d, const std::vector<std::string>& labels, const Cocone* cocone) {
  const IndexCategory& J = *d.index;
  os << "digraph diagram {\n  rankdir=LR;\n";
  for (std::size_t o = 0; o < J.object_count(); ++o) {
    os << "  n" << o << " [label=" << quote(labels[o] + " |" + std::to_string(d.objects[o]) + "|") << "];\n";
  }
  for (std::size_t a = 0; a < J.arrow_count(); ++a) {
    if (J.is_identity(a)) continue;
    const auto& arr = J.arrow(a);
    os << "  n" << arr.src << " -> n" << arr.dst << " [label=" << quote(arr.name + " " + table_text(d.arrows[a]))
       << "];\n";
  }
  if (cocone) {
    os << "  apex [shape=box,label=" << quote("apex |" + std::to_string(cocone->apex) + "|") << "];\n";
    for (std::size_t o = 0; o < cocone->legs.size(); ++o) {
      os << "  n" << o << " -> apex [style=dashed,label=" << quote(table_text(cocone->legs[o])) << "];\n";
    }
  }
  os << "}\n";
}

}  // namespace

std::string to_dot(const Diagram& d, const Cocone* cocone) {
  std::vector<std::string> labels;
  for (std::size_t o = 0; o < d.index->object_count(); ++o) labels.push_back(d.index->object_name(o));
  std::ostringstream os;
  emit(os, d, labels, cocone);
  return os.str();
}

std::string to_dot(const ColimitBlock& cb) {
  std::vector<std::string> labels(cb.index.category->object_count());
  for (std::size_t t = 0; t < cb.index.tuples.size(); ++t) labels[cb.index.tuple_object(t)] = encode(cb.index.tuples[t]);
  for (std::size_t l = 0; l < cb.index.lines.size(); ++l) labels[cb.index.line_object(l)] = encode(cb.index.lines[l]);
  std::ostringstream os;
  emit(os, *cb.diagram, labels, &cb.colimit.cocone);
  return os.str();
}

}  // namespace partite
