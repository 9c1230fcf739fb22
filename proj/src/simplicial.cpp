#include "rt4sc/simplicial.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace rt4sc {

int SimplicialComplex::edge_index(int u, int v) const {
  if (u == v) return -1;
  std::array<int, 2> key{std::min(u, v), std::max(u, v)};
  const auto it = std::lower_bound(edges.begin(), edges.end(), key);
  if (it == edges.end() || *it != key) return -1;
  return static_cast<int>(it - edges.begin());
}

SimplicialComplex clique_lift(const TextAttributedGraph& g, int max_dim) {
  SimplicialComplex cx;
  cx.n = g.n;
  cx.edges = g.edges;  // already sorted (u < v, lexicographic)

  if (max_dim >= 2) {
    const auto adj = g.adjacency_lists();
    for (const auto& e : cx.edges) {
      const auto& nu = adj[static_cast<std::size_t>(e[0])];
      const auto& nv = adj[static_cast<std::size_t>(e[1])];
      // Common neighbors above the larger endpoint close each triangle once.
      std::vector<int> common;
      std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(),
                            std::back_inserter(common));
      for (const int w : common)
        if (w > e[1]) cx.triangles.push_back({e[0], e[1], w});
    }
    std::sort(cx.triangles.begin(), cx.triangles.end());
  }
  return cx;
}

SparseMatrix boundary(const SimplicialComplex& cx, int p) {
  if (p != 1 && p != 2) throw std::invalid_argument("boundary: p must be 1 or 2");
  std::vector<Eigen::Triplet<double>> trips;
  if (p == 1) {
    SparseMatrix d1(cx.n, static_cast<Eigen::Index>(cx.edges.size()));
    trips.reserve(2 * cx.edges.size());
    for (std::size_t j = 0; j < cx.edges.size(); ++j) {
      trips.emplace_back(cx.edges[j][0], static_cast<int>(j), -1.0);
      trips.emplace_back(cx.edges[j][1], static_cast<int>(j), 1.0);
    }
    d1.setFromTriplets(trips.begin(), trips.end());
    return d1;
  }
  SparseMatrix d2(static_cast<Eigen::Index>(cx.edges.size()),
                  static_cast<Eigen::Index>(cx.triangles.size()));
  trips.reserve(3 * cx.triangles.size());
  for (std::size_t j = 0; j < cx.triangles.size(); ++j) {
    const auto& t = cx.triangles[j];
    // d[a,b,c] = [b,c] - [a,c] + [a,b]
    trips.emplace_back(cx.edge_index(t[1], t[2]), static_cast<int>(j), 1.0);
    trips.emplace_back(cx.edge_index(t[0], t[2]), static_cast<int>(j), -1.0);
    trips.emplace_back(cx.edge_index(t[0], t[1]), static_cast<int>(j), 1.0);
  }
  d2.setFromTriplets(trips.begin(), trips.end());
  return d2;
}

Matrix hodge_laplacian(const SimplicialComplex& cx, int p) {
  if (p != 0 && p != 1) throw std::invalid_argument("hodge_laplacian: p must be 0 or 1");
  const SparseMatrix d1 = boundary(cx, 1);
  if (p == 0) return Matrix(d1 * d1.transpose());
  const SparseMatrix d2 = boundary(cx, 2);
  return Matrix(d1.transpose() * d1) + Matrix(d2 * d2.transpose());
}

double power_iteration_lambda_max(const Matrix& L, int steps, std::uint64_t seed) {
  if (L.size() == 0 || L.cwiseAbs().maxCoeff() == 0.0) return 1.0;

  Rng rng(seed);
  Vector v = rng.uniform_vector(L.rows(), -1.0, 1.0);
  v.normalize();
  double rayleigh = 0.0;
  for (int i = 0; i < steps; ++i) {
    Vector w = L * v;
    rayleigh = v.dot(w);
    const double norm = w.norm();
    if (norm == 0.0) break;  // v landed in the kernel
    v = w / norm;
  }
  // Gershgorin fallback if the start vector was degenerate.
  if (rayleigh <= 0.0) return L.cwiseAbs().rowwise().sum().maxCoeff();
  return rayleigh;
}

SNNWeights SNNWeights::seeded(int layers, int d, std::uint64_t seed) {
  SNNWeights w;
  w.seed = seed;
  Rng rng(seed);
  for (int l = 0; l < layers; ++l) {
    w.theta0.push_back(rng.uniform_matrix(d, d, -0.1, 0.1));
    w.theta1.push_back(rng.uniform_matrix(d, d, -0.1, 0.1));
  }
  return w;
}

Matrix snn_forward(const SimplicialComplex& cx, const Matrix& X0in, const SNNWeights& weights) {
  if (X0in.rows() != cx.n) throw std::invalid_argument("snn_forward: X0 must have n rows");
  if (weights.theta0.size() != weights.theta1.size())
    throw std::invalid_argument("snn_forward: mismatched weight lists");

  const SparseMatrix d1 = boundary(cx, 1);
  const Matrix absd1 = Matrix(d1).cwiseAbs();

  Matrix x0 = X0in;
  Matrix x1 = 0.5 * absd1.transpose() * x0;  // edge features = endpoint mean

  const Matrix l0 = hodge_laplacian(cx, 0);
  const Matrix l1 = hodge_laplacian(cx, 1);
  const Matrix p0 =
      Matrix::Identity(cx.n, cx.n) - l0 / power_iteration_lambda_max(l0, 100, weights.seed);
  const Matrix p1 = Matrix::Identity(l1.rows(), l1.rows()) -
                    l1 / power_iteration_lambda_max(l1, 100, weights.seed + 1);

  for (int l = 0; l < weights.layers(); ++l) {
    if (weights.theta0[static_cast<std::size_t>(l)].rows() != x0.cols() ||
        weights.theta1[static_cast<std::size_t>(l)].rows() != x1.cols())
      throw std::invalid_argument("snn_forward: weight shape does not chain");
    x0 = ((p0 * x0) * weights.theta0[static_cast<std::size_t>(l)]).array().tanh().matrix();
    x1 = ((p1 * x1) * weights.theta1[static_cast<std::size_t>(l)]).array().tanh().matrix();
  }

  // Pool edge features back to their endpoints.
  Matrix pooled = Matrix::Zero(cx.n, x1.cols());
  Vector deg = Vector::Zero(cx.n);
  for (std::size_t j = 0; j < cx.edges.size(); ++j) {
    const auto& e = cx.edges[j];
    pooled.row(e[0]) += x1.row(static_cast<Eigen::Index>(j));
    pooled.row(e[1]) += x1.row(static_cast<Eigen::Index>(j));
    deg(e[0]) += 1.0;
    deg(e[1]) += 1.0;
  }
  for (Eigen::Index v = 0; v < cx.n; ++v)
    if (deg(v) > 0.0) pooled.row(v) /= deg(v);

  Matrix out(cx.n, x0.cols() + pooled.cols());
  out.leftCols(x0.cols()) = x0;
  out.rightCols(pooled.cols()) = pooled;
  return out;
}

void save_complex(const SimplicialComplex& cx, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write complex file: " + path);
  out << "[edges]\n";
  for (const auto& e : cx.edges) out << e[0] << '\t' << e[1] << '\n';
  out << "[triangles]\n";
  for (const auto& t : cx.triangles) out << t[0] << '\t' << t[1] << '\t' << t[2] << '\n';
}

}  // namespace rt4sc
