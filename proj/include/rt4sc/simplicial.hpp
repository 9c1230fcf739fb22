#pragma once

#include <Eigen/SparseCore>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "rt4sc/graph.hpp"
#include "rt4sc/types.hpp"

namespace rt4sc {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Clique complex of a graph up to dimension 2. Edges and triangles are kept
/// in lexicographic order of their ascending vertex tuples, which also fixes
/// the orientation of every simplex.
struct SimplicialComplex {
  int n = 0;
  std::vector<std::array<int, 2>> edges;
  std::vector<std::array<int, 3>> triangles;

  /// Column id of edge (u, v) in the canonical ordering, -1 if absent.
  int edge_index(int u, int v) const;
};

/// All vertices, graph edges, and 3-cliques of g. max_dim <= 1 drops the
/// triangles.
SimplicialComplex clique_lift(const TextAttributedGraph& g, int max_dim = 2);

/// Signed boundary operator: p = 1 gives the n x |E| vertex-edge incidence
/// (-1 at the smaller endpoint, +1 at the larger); p = 2 gives the
/// |E| x |Tri| matrix with alternating signs over each triangle's ordered
/// faces. Satisfies boundary(cx,1) * boundary(cx,2) = 0 exactly.
SparseMatrix boundary(const SimplicialComplex& cx, int p);

/// Hodge Laplacian: L0 = d1 d1^T (equals the graph Laplacian D - A);
/// L1 = d1^T d1 + d2 d2^T. Dense, symmetric, PSD.
Matrix hodge_laplacian(const SimplicialComplex& cx, int p);

/// Rayleigh estimate of the largest eigenvalue from `steps` power iterations
/// with a seeded start vector. Returns 1 for an all-zero (or empty) matrix.
double power_iteration_lambda_max(const Matrix& L, int steps, std::uint64_t seed);

/// Per-layer dense weights for the simplicial forward pass, one pair
/// (vertex-dim, edge-dim) per layer.
struct SNNWeights {
  std::vector<Matrix> theta0;  // layer l: d_l x d_{l+1}
  std::vector<Matrix> theta1;
  std::uint64_t seed = 0;

  int layers() const { return static_cast<int>(theta0.size()); }

  /// Seeded uniform(-0.1, 0.1) weights with constant width d per layer.
  static SNNWeights seeded(int layers, int d, std::uint64_t seed);
};

/// Simplicial forward pass. Edge features start as endpoint means
/// (|d1|^T X0 / 2); each layer applies X <- tanh(P X Theta) on both dimensions
/// with P = I - L / lambda_max_estimate. The output row for vertex v
/// concatenates its vertex features with the mean of its incident edges'
/// features (zeros when deg(v) = 0).
Matrix snn_forward(const SimplicialComplex& cx, const Matrix& X0, const SNNWeights& weights);

/// Text export with "[edges]" and "[triangles]" sections, one simplex per
/// line in canonical order.
void save_complex(const SimplicialComplex& cx, const std::string& path);

}  // namespace rt4sc
