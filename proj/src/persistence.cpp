#include "rt4sc/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "rt4sc/simplicial.hpp"

namespace rt4sc {

EgoSubgraph ego_subgraph(const TextAttributedGraph& g, int v, int r) {
  if (v < 0 || v >= g.n) throw std::invalid_argument("ego_subgraph: node out of range");
  if (r < 0) throw std::invalid_argument("ego_subgraph: radius must be >= 0");

  const auto adj = g.adjacency_lists();
  std::vector<int> dist(static_cast<std::size_t>(g.n), -1);
  std::deque<int> queue{v};
  dist[static_cast<std::size_t>(v)] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    if (dist[static_cast<std::size_t>(u)] >= r) continue;
    for (const int w : adj[static_cast<std::size_t>(u)]) {
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
        queue.push_back(w);
      }
    }
  }

  EgoSubgraph ego;
  std::vector<int> local(static_cast<std::size_t>(g.n), -1);
  for (int u = 0; u < g.n; ++u) {
    if (dist[static_cast<std::size_t>(u)] >= 0) {
      local[static_cast<std::size_t>(u)] = static_cast<int>(ego.original_ids.size());
      ego.original_ids.push_back(u);
    }
  }
  ego.center = local[static_cast<std::size_t>(v)];
  ego.graph.n = static_cast<int>(ego.original_ids.size());
  ego.graph.docs.assign(static_cast<std::size_t>(ego.graph.n), std::string());
  for (std::size_t i = 0; i < ego.original_ids.size(); ++i)
    ego.graph.docs[i] = g.docs.empty() ? std::string()
                                       : g.docs[static_cast<std::size_t>(ego.original_ids[i])];
  for (const auto& e : g.edges) {
    const int a = local[static_cast<std::size_t>(e[0])];
    const int b = local[static_cast<std::size_t>(e[1])];
    if (a >= 0 && b >= 0) ego.graph.edges.push_back({std::min(a, b), std::max(a, b)});
  }
  std::sort(ego.graph.edges.begin(), ego.graph.edges.end());
  return ego;
}

Filtration build_filtration(const TextAttributedGraph& sub) {
  const auto adj = sub.adjacency_lists();

  Filtration f;
  for (int v = 0; v < sub.n; ++v)
    f.simplices.push_back({0.0, 0, {v, -1, -1}});

  // Edge value 1 - |N(u) n N(v)| / |N(u) u N(v)|, neighbor sets within sub.
  std::vector<double> edge_value(sub.edges.size());
  for (std::size_t j = 0; j < sub.edges.size(); ++j) {
    const auto& nu = adj[static_cast<std::size_t>(sub.edges[j][0])];
    const auto& nv = adj[static_cast<std::size_t>(sub.edges[j][1])];
    std::vector<int> inter;
    std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(),
                          std::back_inserter(inter));
    const double uni = static_cast<double>(nu.size() + nv.size() - inter.size());
    const double jac = uni > 0.0 ? static_cast<double>(inter.size()) / uni : 0.0;
    edge_value[j] = 1.0 - jac;
    f.simplices.push_back({edge_value[j], 1, {sub.edges[j][0], sub.edges[j][1], -1}});
  }

  const SimplicialComplex cx = clique_lift(sub);
  for (const auto& t : cx.triangles) {
    const double value = std::max(
        {edge_value[static_cast<std::size_t>(cx.edge_index(t[0], t[1]))],
         edge_value[static_cast<std::size_t>(cx.edge_index(t[0], t[2]))],
         edge_value[static_cast<std::size_t>(cx.edge_index(t[1], t[2]))]});
    f.simplices.push_back({value, 2, {t[0], t[1], t[2]}});
  }

  std::stable_sort(f.simplices.begin(), f.simplices.end(),
                   [](const FiltrationSimplex& a, const FiltrationSimplex& b) {
                     if (a.value != b.value) return a.value < b.value;
                     if (a.dim != b.dim) return a.dim < b.dim;
                     return a.vertices < b.vertices;
                   });
  return f;
}

namespace {

// Facet vertex tuples of a simplex, each padded to 3 entries.
std::vector<std::array<int, 3>> facets(const FiltrationSimplex& s) {
  if (s.dim == 1) {
    return {{s.vertices[0], -1, -1}, {s.vertices[1], -1, -1}};
  }
  if (s.dim == 2) {
    return {{s.vertices[0], s.vertices[1], -1},
            {s.vertices[0], s.vertices[2], -1},
            {s.vertices[1], s.vertices[2], -1}};
  }
  return {};
}

// GF(2) column as a sorted set of row positions; XOR = symmetric difference.
std::vector<int> symmetric_difference(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(out));
  return out;
}

}  // namespace

PersistenceDiagram compute_persistence(const Filtration& f) {
  const std::size_t m = f.simplices.size();

  // Position of each simplex in the given order, and monotonicity checks.
  std::map<std::array<int, 3>, int> position;
  for (std::size_t j = 0; j < m; ++j) {
    const auto& s = f.simplices[j];
    position[s.vertices] = static_cast<int>(j);
  }

  std::vector<std::vector<int>> columns(m);
  for (std::size_t j = 0; j < m; ++j) {
    const auto& s = f.simplices[j];
    for (const auto& face : facets(s)) {
      const auto it = position.find(face);
      if (it == position.end())
        throw std::invalid_argument("compute_persistence: face missing from filtration");
      const int fp = it->second;
      if (fp >= static_cast<int>(j) ||
          f.simplices[static_cast<std::size_t>(fp)].value > s.value)
        throw std::invalid_argument("compute_persistence: filtration is not monotone");
      columns[j].push_back(fp);
    }
    std::sort(columns[j].begin(), columns[j].end());
  }

  // Standard reduction: cancel shared lowest rows against earlier columns.
  std::vector<int> low_owner(m, -1);  // row -> column with that low, or -1
  std::vector<int> partner(m, -1);    // creator <-> destroyer pairing
  for (std::size_t j = 0; j < m; ++j) {
    while (!columns[j].empty()) {
      const int low = columns[j].back();
      const int owner = low_owner[static_cast<std::size_t>(low)];
      if (owner < 0) break;
      columns[j] = symmetric_difference(columns[j], columns[static_cast<std::size_t>(owner)]);
    }
    if (!columns[j].empty()) {
      const int low = columns[j].back();
      low_owner[static_cast<std::size_t>(low)] = static_cast<int>(j);
      partner[static_cast<std::size_t>(low)] = static_cast<int>(j);
      partner[j] = low;
    }
  }

  PersistenceDiagram diagram;
  for (std::size_t j = 0; j < m; ++j) {
    const auto& s = f.simplices[j];
    if (!columns[j].empty()) continue;  // destroyer column, not a creator
    if (s.dim > 1) continue;            // no H2 tracking without dim-3 simplices
    if (partner[j] >= 0) {
      diagram.bars.push_back(
          {s.dim, s.value, f.simplices[static_cast<std::size_t>(partner[j])].value});
    } else {
      diagram.bars.push_back({s.dim, s.value, kInfiniteDeath});
    }
  }
  std::sort(diagram.bars.begin(), diagram.bars.end(),
            [](const PersistenceBar& a, const PersistenceBar& b) {
              if (a.dim != b.dim) return a.dim < b.dim;
              if (a.birth != b.birth) return a.birth < b.birth;
              return a.death < b.death;
            });
  return diagram;
}

TopoFeatureVector vectorize(const PersistenceDiagram& d) {
  TopoFeatureVector v = TopoFeatureVector::Zero();
  for (const auto& bar : d.bars) {
    if (bar.dim != 0 && bar.dim != 1) continue;
    const int base = 4 * bar.dim;
    if (bar.infinite()) {
      v(base + 3) += 1.0;
    } else if (bar.persistence() > 0.0) {
      v(base + 0) += 1.0;
      v(base + 1) += bar.persistence();
      v(base + 2) = std::max(v(base + 2), bar.persistence());
    }
  }
  return v;
}

namespace {

TopoFeatureVector node_topo(const TextAttributedGraph& g, int v, int r) {
  const EgoSubgraph ego = ego_subgraph(g, v, r);
  return vectorize(compute_persistence(build_filtration(ego.graph)));
}

}  // namespace

Matrix topo_features(const TextAttributedGraph& g, int r, int threads) {
  Matrix topo(g.n, 8);
  if (g.n == 0) return topo;
  threads = std::max(1, std::min(threads, g.n));
  if (threads == 1) {
    for (int v = 0; v < g.n; ++v) topo.row(v) = node_topo(g, v, r).transpose();
    return topo;
  }
  // Per-node outputs land in preassigned rows, so the thread count cannot
  // change the result.
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int tid = 0; tid < threads; ++tid) {
    pool.emplace_back([&, tid]() {
      for (int v = tid; v < g.n; v += threads) topo.row(v) = node_topo(g, v, r).transpose();
    });
  }
  for (auto& th : pool) th.join();
  return topo;
}

Matrix augment(const Matrix& R, const TextAttributedGraph& g, int r, int threads) {
  if (R.rows() != g.n) throw std::invalid_argument("augment: R must have n rows");

  Matrix topo = topo_features(g, r, threads);
  for (Eigen::Index c = 0; c < topo.cols(); ++c) {
    const double mean = topo.col(c).mean();
    const double var = (topo.col(c).array() - mean).square().mean();
    if (var > 0.0) {
      topo.col(c) = (topo.col(c).array() - mean) / std::sqrt(var);
    } else {
      topo.col(c).setZero();
    }
  }

  Matrix out(R.rows(), R.cols() + 8);
  out.leftCols(R.cols()) = R;
  out.rightCols(8) = topo;
  return out;
}

void write_diagram_csv(const PersistenceDiagram& d, std::ostream& out) {
  out.precision(17);
  out << "dim,birth,death\n";
  for (const auto& bar : d.bars) {
    out << bar.dim << ',' << bar.birth << ',';
    if (bar.infinite()) {
      out << "inf";
    } else {
      out << bar.death;
    }
    out << '\n';
  }
}

void save_diagram_csv(const PersistenceDiagram& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write diagram file: " + path);
  write_diagram_csv(d, out);
}

}  // namespace rt4sc
