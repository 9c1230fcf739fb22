#include "rt4sc/graph.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>

namespace rt4sc {

std::vector<std::vector<int>> TextAttributedGraph::adjacency_lists() const {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (const auto& e : edges) {
    adj[static_cast<std::size_t>(e[0])].push_back(e[1]);
    adj[static_cast<std::size_t>(e[1])].push_back(e[0]);
  }
  for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
  return adj;
}

std::vector<int> TextAttributedGraph::degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  for (const auto& e : edges) {
    ++deg[static_cast<std::size_t>(e[0])];
    ++deg[static_cast<std::size_t>(e[1])];
  }
  return deg;
}

bool TextAttributedGraph::has_edge(int u, int v) const {
  if (u == v) return false;
  std::array<int, 2> key{std::min(u, v), std::max(u, v)};
  return std::binary_search(edges.begin(), edges.end(), key);
}

namespace {

// Parses a non-negative integer field; returns false on junk.
bool parse_id(const std::string& field, long& out) {
  if (field.empty()) return false;
  std::size_t pos = 0;
  try {
    out = std::stol(field, &pos);
  } catch (const std::exception&) {
    return false;
  }
  return pos == field.size();
}

}  // namespace

TextAttributedGraph load_edge_list(const std::string& edge_path,
                                   const std::string& docs_path,
                                   LoadStats* stats) {
  std::ifstream in(edge_path);
  if (!in) throw std::runtime_error("cannot open edge file: " + edge_path);

  LoadStats local;
  std::set<std::array<int, 2>> edge_set;
  long max_id = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw std::runtime_error(edge_path + ":" + std::to_string(line_no) +
                               ": expected 'u<TAB>v'");
    long u = 0, v = 0;
    if (!parse_id(line.substr(0, tab), u) || !parse_id(line.substr(tab + 1), v))
      throw std::runtime_error(edge_path + ":" + std::to_string(line_no) +
                               ": unparsable node id");
    if (u < 0 || v < 0)
      throw std::runtime_error(edge_path + ":" + std::to_string(line_no) +
                               ": negative node id");
    max_id = std::max({max_id, u, v});
    if (u == v) {
      ++local.self_loops_dropped;
      continue;
    }
    std::array<int, 2> e{static_cast<int>(std::min(u, v)),
                         static_cast<int>(std::max(u, v))};
    if (!edge_set.insert(e).second) ++local.duplicate_edges_dropped;
  }

  std::vector<std::pair<int, std::string>> doc_entries;
  if (!docs_path.empty()) {
    std::ifstream din(docs_path);
    if (!din) throw std::runtime_error("cannot open docs file: " + docs_path);
    line_no = 0;
    while (std::getline(din, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      const std::size_t tab = line.find('\t');
      const std::string id_field = tab == std::string::npos ? line : line.substr(0, tab);
      long id = 0;
      if (!parse_id(id_field, id))
        throw std::runtime_error(docs_path + ":" + std::to_string(line_no) +
                                 ": unparsable node id");
      if (id < 0)
        throw std::runtime_error(docs_path + ":" + std::to_string(line_no) +
                                 ": negative node id");
      max_id = std::max(max_id, id);
      doc_entries.emplace_back(static_cast<int>(id),
                               tab == std::string::npos ? std::string() : line.substr(tab + 1));
    }
  }

  TextAttributedGraph g;
  g.n = static_cast<int>(max_id + 1);
  g.edges.assign(edge_set.begin(), edge_set.end());
  g.docs.assign(static_cast<std::size_t>(g.n), std::string());
  for (const auto& [id, text] : doc_entries) g.docs[static_cast<std::size_t>(id)] = text;
  if (stats) *stats = local;
  return g;
}

void save_edge_list(const TextAttributedGraph& g, const std::string& edge_path) {
  std::ofstream out(edge_path);
  if (!out) throw std::runtime_error("cannot write edge file: " + edge_path);
  for (const auto& e : g.edges) out << e[0] << '\t' << e[1] << '\n';
}

void save_docs(const TextAttributedGraph& g, const std::string& docs_path) {
  std::ofstream out(docs_path);
  if (!out) throw std::runtime_error("cannot write docs file: " + docs_path);
  for (int i = 0; i < g.n; ++i) out << i << '\t' << g.docs[static_cast<std::size_t>(i)] << '\n';
}

Matrix adjacency_matrix(const TextAttributedGraph& g) {
  Matrix a = Matrix::Zero(g.n, g.n);
  for (const auto& e : g.edges) {
    a(e[0], e[1]) = 1.0;
    a(e[1], e[0]) = 1.0;
  }
  return a;
}

Matrix transition_matrix(const TextAttributedGraph& g) {
  Matrix s = adjacency_matrix(g);
  for (int i = 0; i < g.n; ++i) {
    const double deg = s.row(i).sum();
    if (deg > 0.0) s.row(i) /= deg;
  }
  return s;
}

Matrix affinity(const Matrix& s) { return 0.5 * (s + s * s); }

}  // namespace rt4sc
