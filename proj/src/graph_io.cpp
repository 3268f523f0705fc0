#include "fraclocal/graph_io.hpp"

#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace fraclocal {

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.size() << ' ' << g.edge_count() << '\n';
  bool default_ids = g.id_space() == polynomial_id_space(g.size(), 2);
  for (NodeIndex v = 0; v < g.size() && default_ids; ++v) default_ids = g.id(v) == static_cast<NodeId>(v + 1);
  if (!default_ids) {
    out << "# idspace " << g.id_space() << '\n';
    for (NodeIndex v = 0; v < g.size(); ++v) out << "# id " << v << ' ' << g.id(v) << '\n';
  }
  if (const GridEmbedding* grid = g.grid()) {
    out << "# grid " << grid->spec.dimension();
    for (int s : grid->spec.sides) out << ' ' << s;
    for (bool w : grid->spec.wrap) out << ' ' << (w ? 1 : 0);
    out << '\n';
    for (NodeIndex v = 0; v < g.size(); ++v) {
      out << "# coord " << v;
      for (int x : grid->coords[v]) out << ' ' << x;
      out << '\n';
    }
  }
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

namespace {

template <class T>
T read_field(std::istringstream& fields, int line, const char* what) {
  T value{};
  if (!(fields >> value)) throw ParseError(line, std::string("expected ") + what);
  return value;
}

}  // namespace

Graph read_edge_list(std::istream& in) {
  std::string text;
  int line_no = 0;
  bool have_header = false;
  int n = 0;
  std::int64_t m = 0;
  std::vector<Edge> edges;
  std::optional<std::uint64_t> id_space;
  std::map<NodeIndex, NodeId> ids;
  std::optional<GridSpec> grid_spec;
  std::map<NodeIndex, std::vector<int>> coords;

  while (std::getline(in, text)) {
    ++line_no;
    std::istringstream fields(text);
    std::string head;
    if (!(fields >> head)) continue;
    if (head[0] == '#') {
      std::string tag;
      if (head.size() > 1) tag = head.substr(1);
      else if (!(fields >> tag)) continue;
      if (tag == "idspace") {
        id_space = read_field<std::uint64_t>(fields, line_no, "ID space size");
      } else if (tag == "id") {
        auto v = read_field<NodeIndex>(fields, line_no, "node index");
        ids[v] = read_field<NodeId>(fields, line_no, "node ID");
      } else if (tag == "grid") {
        GridSpec spec;
        int d = read_field<int>(fields, line_no, "grid dimension");
        if (d < 1 || d > 8) throw ParseError(line_no, "grid dimension out of range");
        for (int i = 0; i < d; ++i) spec.sides.push_back(read_field<int>(fields, line_no, "grid side"));
        for (int i = 0; i < d; ++i) spec.wrap.push_back(read_field<int>(fields, line_no, "wrap flag") != 0);
        grid_spec = spec;
      } else if (tag == "coord") {
        if (!grid_spec) throw ParseError(line_no, "coordinate before grid declaration");
        auto v = read_field<NodeIndex>(fields, line_no, "node index");
        std::vector<int> c;
        for (int i = 0; i < grid_spec->dimension(); ++i) c.push_back(read_field<int>(fields, line_no, "coordinate"));
        coords[v] = std::move(c);
      }
      continue;
    }
    std::istringstream row(text);
    if (!have_header) {
      long long nn = 0;
      if (!(row >> nn >> m) || nn < 0 || m < 0) throw ParseError(line_no, "expected header 'n m'");
      n = static_cast<int>(nn);
      have_header = true;
      continue;
    }
    long long u = 0, v = 0;
    if (!(row >> u >> v)) throw ParseError(line_no, "expected edge 'u v'");
    if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError(line_no, "edge endpoint out of range");
    if (u == v) throw ParseError(line_no, "self-loop");
    edges.emplace_back(static_cast<NodeIndex>(u), static_cast<NodeIndex>(v));
  }
  if (!have_header) throw ParseError(line_no, "missing header");
  if (static_cast<std::int64_t>(edges.size()) != m)
    throw ParseError(line_no, "header announced " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));

  Graph g = Graph::from_edges(n, edges);
  if (g.edge_count() != m) throw ParseError(line_no, "duplicate edges");
  if (!ids.empty()) {
    if (static_cast<int>(ids.size()) != n) throw ParseError(line_no, "IDs must be given for every node or none");
    std::vector<NodeId> list(n);
    for (auto [v, id] : ids) {
      if (v < 0 || v >= n) throw ParseError(line_no, "ID for unknown node");
      list[v] = id;
    }
    g = g.with_ids(std::move(list), id_space.value_or(polynomial_id_space(n, 2)));
  }
  if (grid_spec) {
    if (static_cast<int>(coords.size()) != n) throw ParseError(line_no, "coordinates must be given for every node");
    GridEmbedding emb{*grid_spec, std::vector<std::vector<int>>(n)};
    for (auto& [v, c] : coords) {
      if (v < 0 || v >= n) throw ParseError(line_no, "coordinate for unknown node");
      emb.coords[v] = std::move(c);
    }
    g = g.with_grid(std::move(emb));
  }
  return g;
}

std::string to_edge_list_string(const Graph& g) {
  std::ostringstream out;
  write_edge_list(out, g);
  return out.str();
}

Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return read_edge_list(in);
}

}  // namespace fraclocal
