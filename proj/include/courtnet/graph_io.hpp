#pragma once

// GraphML and DOT export of attributed graphs, plus a reader for the GraphML
// this module writes.

#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "courtnet/community.hpp"
#include "courtnet/error.hpp"
#include "courtnet/networks.hpp"
#include "courtnet/segmenter.hpp"
#include "courtnet/text.hpp"

namespace courtnet {

using AttrValue = std::variant<std::string, double, long long>;

enum class AttrType { String, Double, Long };

struct AttrKey {
  std::string name;
  AttrType type = AttrType::String;
};

struct ExportNode {
  std::string id;
  std::vector<AttrValue> attrs;  // aligned with node_keys
};

struct ExportEdge {
  std::string source;
  std::string target;
  std::vector<AttrValue> attrs;  // aligned with edge_keys
};

struct ExportGraph {
  std::string name = "G";
  bool directed = false;
  std::vector<AttrKey> node_keys;
  std::vector<AttrKey> edge_keys;
  std::vector<ExportNode> nodes;
  std::vector<ExportEdge> edges;
};

namespace graph_io_detail {

inline std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string xml_unescape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '&') {
      out += s[i];
      continue;
    }
    const auto semi = s.find(';', i);
    if (semi == std::string_view::npos) throw Error(Errc::ParseError, "unterminated XML entity");
    const std::string_view ent = s.substr(i + 1, semi - i - 1);
    if (ent == "amp") out += '&';
    else if (ent == "lt") out += '<';
    else if (ent == "gt") out += '>';
    else if (ent == "quot") out += '"';
    else if (ent == "apos") out += '\'';
    else throw Error(Errc::ParseError, "unsupported XML entity &" + std::string(ent) + ";");
    i = semi;
  }
  return out;
}

inline std::string dot_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out;
}

inline std::string_view type_name(AttrType t) {
  switch (t) {
    case AttrType::String: return "string";
    case AttrType::Double: return "double";
    case AttrType::Long: return "long";
  }
  return "string";
}

inline std::string format(const AttrValue& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  if (const auto* d = std::get_if<double>(&v)) return text::format_double(*d);
  return std::to_string(std::get<long long>(v));
}

inline void write_keys(std::ostream& os, std::string_view domain, std::string_view prefix,
                       const std::vector<AttrKey>& keys) {
  for (std::size_t k = 0; k < keys.size(); ++k) {
    os << "  <key id=\"" << prefix << k << "\" for=\"" << domain << "\" attr.name=\"" << xml_escape(keys[k].name)
       << "\" attr.type=\"" << type_name(keys[k].type) << "\"/>\n";
  }
}

inline void write_data(std::ostream& os, std::string_view prefix, const std::vector<AttrValue>& attrs) {
  for (std::size_t k = 0; k < attrs.size(); ++k) {
    os << "      <data key=\"" << prefix << k << "\">" << xml_escape(format(attrs[k])) << "</data>\n";
  }
}

}  // namespace graph_io_detail

inline void write_graphml(std::ostream& os, const ExportGraph& g) {
  using namespace graph_io_detail;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\" "
        "xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\" "
        "xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns "
        "http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n";
  write_keys(os, "node", "n", g.node_keys);
  write_keys(os, "edge", "e", g.edge_keys);
  os << "  <graph id=\"" << xml_escape(g.name) << "\" edgedefault=\"" << (g.directed ? "directed" : "undirected")
     << "\">\n";
  for (const auto& n : g.nodes) {
    os << "    <node id=\"" << xml_escape(n.id) << "\">\n";
    write_data(os, "n", n.attrs);
    os << "    </node>\n";
  }
  for (const auto& e : g.edges) {
    os << "    <edge source=\"" << xml_escape(e.source) << "\" target=\"" << xml_escape(e.target) << "\">\n";
    write_data(os, "e", e.attrs);
    os << "    </edge>\n";
  }
  os << "  </graph>\n</graphml>\n";
}

inline void write_dot(std::ostream& os, const ExportGraph& g) {
  using namespace graph_io_detail;
  const char* arrow = g.directed ? " -> " : " -- ";
  os << (g.directed ? "digraph" : "graph") << " \"" << dot_escape(g.name) << "\" {\n";
  auto attrs = [&](const std::vector<AttrKey>& keys, const std::vector<AttrValue>& values) {
    std::string out;
    for (std::size_t k = 0; k < keys.size(); ++k) {
      out += k ? ", " : " [";
      out += keys[k].name + "=\"" + dot_escape(format(values[k])) + "\"";
    }
    if (!keys.empty()) out += "]";
    return out;
  };
  for (const auto& n : g.nodes) os << "  \"" << dot_escape(n.id) << "\"" << attrs(g.node_keys, n.attrs) << ";\n";
  for (const auto& e : g.edges) {
    os << "  \"" << dot_escape(e.source) << "\"" << arrow << "\"" << dot_escape(e.target) << "\""
       << attrs(g.edge_keys, e.attrs) << ";\n";
  }
  os << "}\n";
}

template <typename Writer>
void write_graph_file(const std::filesystem::path& path, const ExportGraph& g, Writer&& writer) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::UnreadableFile, "cannot write " + path.string());
  writer(out, g);
  if (!out) throw Error(Errc::UnreadableFile, "write failure on " + path.string());
}

inline void save_graphml(const std::filesystem::path& path, const ExportGraph& g) {
  write_graph_file(path, g, [](std::ostream& os, const ExportGraph& x) { write_graphml(os, x); });
}

inline void save_dot(const std::filesystem::path& path, const ExportGraph& g) {
  write_graph_file(path, g, [](std::ostream& os, const ExportGraph& x) { write_dot(os, x); });
}

/// Parses GraphML as produced by write_graphml (keys, nodes and edges with
/// <data> children). Not a general XML parser.
inline ExportGraph read_graphml(std::string_view xml) {
  using namespace graph_io_detail;
  ExportGraph g;
  struct KeyRef {
    bool node = true;
    std::size_t index = 0;
  };
  std::map<std::string, KeyRef> keys;
  auto attr = [](std::string_view tag, std::string_view name) -> std::optional<std::string> {
    const std::string needle = " " + std::string(name) + "=\"";
    const auto p = tag.find(needle);
    if (p == std::string_view::npos) return std::nullopt;
    const auto start = p + needle.size();
    const auto end = tag.find('"', start);
    if (end == std::string_view::npos) throw Error(Errc::ParseError, "unterminated attribute " + std::string(name));
    return xml_unescape(tag.substr(start, end - start));
  };
  auto parse_value = [](const std::string& raw, AttrType t) -> AttrValue {
    try {
      if (t == AttrType::Double) return std::stod(raw);
      if (t == AttrType::Long) return std::stoll(raw);
    } catch (const std::exception&) {
      throw Error(Errc::ParseError, "bad numeric value '" + raw + "'");
    }
    return raw;
  };

  enum class Owner { None, Node, Edge } owner = Owner::None;
  std::size_t pos = 0;
  while ((pos = xml.find('<', pos)) != std::string_view::npos) {
    const auto close = xml.find('>', pos);
    if (close == std::string_view::npos) throw Error(Errc::ParseError, "unterminated tag");
    const std::string_view tag = xml.substr(pos, close - pos + 1);
    const std::size_t after = close + 1;
    if (tag.starts_with("<key ")) {
      const auto id = attr(tag, "id");
      const auto domain = attr(tag, "for");
      const auto name = attr(tag, "attr.name");
      const auto type = attr(tag, "attr.type").value_or("string");
      if (!id || !domain || !name) throw Error(Errc::ParseError, "incomplete <key>");
      const AttrType t = type == "double" ? AttrType::Double : type == "long" || type == "int" ? AttrType::Long
                                                                                                : AttrType::String;
      auto& list = *domain == "node" ? g.node_keys : g.edge_keys;
      keys[*id] = {*domain == "node", list.size()};
      list.push_back({*name, t});
    } else if (tag.starts_with("<graph ")) {
      g.name = attr(tag, "id").value_or("G");
      g.directed = attr(tag, "edgedefault").value_or("undirected") == "directed";
    } else if (tag.starts_with("<node ")) {
      const auto id = attr(tag, "id");
      if (!id) throw Error(Errc::ParseError, "<node> without id");
      ExportNode n{*id, {}};
      for (const auto& k : g.node_keys) n.attrs.push_back(k.type == AttrType::String ? AttrValue{std::string()}
                                                          : k.type == AttrType::Double ? AttrValue{0.0}
                                                                                        : AttrValue{0LL});
      g.nodes.push_back(std::move(n));
      owner = tag.ends_with("/>") ? Owner::None : Owner::Node;
    } else if (tag.starts_with("<edge ")) {
      const auto s = attr(tag, "source");
      const auto t = attr(tag, "target");
      if (!s || !t) throw Error(Errc::ParseError, "<edge> without endpoints");
      ExportEdge e{*s, *t, {}};
      for (const auto& k : g.edge_keys) e.attrs.push_back(k.type == AttrType::String ? AttrValue{std::string()}
                                                          : k.type == AttrType::Double ? AttrValue{0.0}
                                                                                        : AttrValue{0LL});
      g.edges.push_back(std::move(e));
      owner = tag.ends_with("/>") ? Owner::None : Owner::Edge;
    } else if (tag.starts_with("<data ")) {
      const auto key = attr(tag, "key");
      const auto end = xml.find("</data>", after);
      if (!key || end == std::string_view::npos) throw Error(Errc::ParseError, "malformed <data>");
      const auto it = keys.find(*key);
      if (it == keys.end()) throw Error(Errc::ParseError, "undeclared key " + *key);
      const std::string raw = xml_unescape(xml.substr(after, end - after));
      if (owner == Owner::Node && it->second.node) {
        g.nodes.back().attrs[it->second.index] = parse_value(raw, g.node_keys[it->second.index].type);
      } else if (owner == Owner::Edge && !it->second.node) {
        g.edges.back().attrs[it->second.index] = parse_value(raw, g.edge_keys[it->second.index].type);
      }
      pos = end + 7;
      continue;
    } else if (tag == "</node>" || tag == "</edge>") {
      owner = Owner::None;
    }
    pos = after;
  }
  return g;
}

inline ExportGraph load_graphml(const std::filesystem::path& path) { return read_graphml(read_file(path)); }

// ---------------------------------------------------------------------------
// Domain graphs to export form

inline ExportGraph to_export(const OpposingNetwork& net) {
  ExportGraph g;
  g.name = "opposing";
  g.directed = true;
  g.node_keys = {{"display", AttrType::String},
                 {"total_cases", AttrType::Long},
                 {"wins", AttrType::Long},
                 {"losses", AttrType::Long}};
  g.edge_keys = {{"weight", AttrType::Double}, {"wins_fw", AttrType::Double}, {"wins_bw", AttrType::Double}};
  for (const auto& n : net.nodes) {
    g.nodes.push_back({n.id,
                       {n.display, static_cast<long long>(n.total_cases), static_cast<long long>(n.wins),
                        static_cast<long long>(n.losses)}});
  }
  for (const auto& e : net.edges) g.edges.push_back({e.from, e.to, {e.weight, e.wins_fw, e.wins_bw}});
  return g;
}

inline std::string attr_string(const ExportGraph& g, const std::vector<AttrValue>& values, bool node,
                               std::string_view name) {
  const auto& keys = node ? g.node_keys : g.edge_keys;
  for (std::size_t k = 0; k < keys.size(); ++k)
    if (keys[k].name == name) return graph_io_detail::format(values[k]);
  throw Error(Errc::ParseError, "missing attribute " + std::string(name));
}

inline double attr_double(const ExportGraph& g, const std::vector<AttrValue>& values, bool node,
                          std::string_view name) {
  const auto& keys = node ? g.node_keys : g.edge_keys;
  for (std::size_t k = 0; k < keys.size(); ++k) {
    if (keys[k].name != name) continue;
    if (const auto* d = std::get_if<double>(&values[k])) return *d;
    if (const auto* l = std::get_if<long long>(&values[k])) return static_cast<double>(*l);
  }
  throw Error(Errc::ParseError, "missing numeric attribute " + std::string(name));
}

/// Rebuilds an opposing network from its GraphML export.
inline OpposingNetwork opposing_from_export(const ExportGraph& g) {
  OpposingNetwork net;
  for (const auto& n : g.nodes) {
    LawyerStats s;
    s.id = n.id;
    s.display = attr_string(g, n.attrs, true, "display");
    s.total_cases = static_cast<std::size_t>(attr_double(g, n.attrs, true, "total_cases"));
    s.wins = static_cast<std::size_t>(attr_double(g, n.attrs, true, "wins"));
    s.losses = static_cast<std::size_t>(attr_double(g, n.attrs, true, "losses"));
    net.nodes.push_back(std::move(s));
  }
  std::sort(net.nodes.begin(), net.nodes.end(), [](const LawyerStats& x, const LawyerStats& y) { return x.id < y.id; });
  for (const auto& e : g.edges) {
    net.edges.push_back({e.source, e.target, attr_double(g, e.attrs, false, "weight"),
                         attr_double(g, e.attrs, false, "wins_fw"), attr_double(g, e.attrs, false, "wins_bw")});
  }
  return net;
}

inline ExportGraph to_export(const CollaborationNetwork& net) {
  ExportGraph g;
  g.name = "collaboration";
  g.directed = false;
  g.node_keys = {{"display", AttrType::String},
                 {"total_cases", AttrType::Long},
                 {"wins", AttrType::Long},
                 {"losses", AttrType::Long}};
  g.edge_keys = {{"weight", AttrType::Long}, {"wins", AttrType::Long}, {"losses", AttrType::Long}};
  for (const auto& n : net.nodes) {
    g.nodes.push_back({n.id,
                       {n.display, static_cast<long long>(n.total_cases), static_cast<long long>(n.wins),
                        static_cast<long long>(n.losses)}});
  }
  for (const auto& e : net.edges) {
    g.edges.push_back({e.a, e.b, {static_cast<long long>(e.weight()), static_cast<long long>(e.wins),
                                  static_cast<long long>(e.losses)}});
  }
  return g;
}

/// Case graph export; the "community" node attribute is -1 before detection.
inline ExportGraph to_export(const CaseGraph& cg) {
  ExportGraph g;
  g.name = "cases_k" + std::to_string(cg.k);
  g.directed = false;
  g.node_keys = {{"outcome", AttrType::String}, {"community", AttrType::Long}};
  g.edge_keys = {{"shared", AttrType::Long}};
  for (const auto& n : cg.nodes) {
    g.nodes.push_back({n.doc_id,
                       {std::string(to_string(n.outcome)),
                        n.community ? static_cast<long long>(*n.community) : -1LL}});
  }
  for (const auto& e : cg.edges) {
    g.edges.push_back({cg.nodes[e.a].doc_id, cg.nodes[e.b].doc_id, {static_cast<long long>(e.shared)}});
  }
  return g;
}

inline ExportGraph to_export(const FlowGraph& fg) {
  ExportGraph g;
  g.name = "flow_" + fg.jurisdiction;
  g.directed = true;
  g.node_keys = {{"label", AttrType::String}, {"occurrence", AttrType::Long}};
  g.edge_keys = {{"count", AttrType::Long}};
  for (std::size_t i = 0; i < fg.nodes.size(); ++i) {
    g.nodes.push_back({"n" + std::to_string(i), {fg.nodes[i].label, static_cast<long long>(fg.nodes[i].occurrence)}});
  }
  for (const auto& e : fg.edges) {
    g.edges.push_back({"n" + std::to_string(e.from), "n" + std::to_string(e.to), {static_cast<long long>(e.count)}});
  }
  return g;
}

}  // namespace courtnet
