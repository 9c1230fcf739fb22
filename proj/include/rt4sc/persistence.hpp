#pragma once

#include <array>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "rt4sc/graph.hpp"
#include "rt4sc/types.hpp"

namespace rt4sc {

/// Induced subgraph on nodes within hop distance r of a center, with the map
/// back to original node ids.
struct EgoSubgraph {
  TextAttributedGraph graph;      // local ids 0..m-1
  std::vector<int> original_ids;  // local id -> original id
  int center = 0;                 // local id of the center node
};

EgoSubgraph ego_subgraph(const TextAttributedGraph& g, int v, int r);

/// One filtered simplex: vertices padded with -1 beyond dim+1 entries.
struct FiltrationSimplex {
  double value = 0.0;
  int dim = 0;
  std::array<int, 3> vertices{-1, -1, -1};
};

/// Simplices in filtration order. build_filtration emits the canonical order
/// (value, dimension, lexicographic vertices); compute_persistence accepts any
/// order in which every face precedes its cofaces.
struct Filtration {
  std::vector<FiltrationSimplex> simplices;
};

/// Vertices enter at 0, edge (u,v) at 1 - Jaccard(N(u), N(v)) within the
/// subgraph, triangles at the max of their edge values.
Filtration build_filtration(const TextAttributedGraph& sub);

constexpr double kInfiniteDeath = std::numeric_limits<double>::infinity();

struct PersistenceBar {
  int dim = 0;
  double birth = 0.0;
  double death = kInfiniteDeath;

  bool infinite() const { return death == kInfiniteDeath; }
  double persistence() const { return death - birth; }
};

/// Bars sorted by (dim, birth, death). Zero-length bars are retained.
struct PersistenceDiagram {
  std::vector<PersistenceBar> bars;
};

/// Standard persistence column reduction over GF(2). Throws
/// std::invalid_argument if the filtration is not monotone (a face missing or
/// ordered after a coface, or face value > coface value).
PersistenceDiagram compute_persistence(const Filtration& f);

/// 8 statistics: per dimension d in {0, 1}: finite-bar count, total finite
/// persistence, max finite persistence, infinite-bar count. Finite statistics
/// ignore zero-length bars.
using TopoFeatureVector = Eigen::Matrix<double, 8, 1>;
TopoFeatureVector vectorize(const PersistenceDiagram& d);

/// Raw n x 8 matrix of per-node ego-net topology features (radius r).
/// Per-node computations are independent; `threads` > 1 runs them in a pool
/// with deterministic, ordered assembly.
Matrix topo_features(const TextAttributedGraph& g, int r, int threads = 1);

/// R (n x d) -> n x (d+8): per-node topo features, z-scored per column over
/// the nodes (columns with zero variance become zero), appended to R.
Matrix augment(const Matrix& R, const TextAttributedGraph& g, int r, int threads = 1);

/// CSV rows "dim,birth,death" with "inf" for infinite deaths.
void save_diagram_csv(const PersistenceDiagram& d, const std::string& path);
void write_diagram_csv(const PersistenceDiagram& d, std::ostream& out);

}  // namespace rt4sc
