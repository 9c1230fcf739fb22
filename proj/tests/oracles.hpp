// Independent brute-force oracles used by the test suites. Everything here is
// deliberately written the slow, obvious way and must stay decoupled from the
// library implementations it checks.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "rt4sc/graph.hpp"
#include "rt4sc/simplicial.hpp"
#include "rt4sc/types.hpp"

namespace oracles {

// Triple-loop dense matrix product.
inline rt4sc::Matrix matmul(const rt4sc::Matrix& a, const rt4sc::Matrix& b) {
  rt4sc::Matrix c = rt4sc::Matrix::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j)
      for (Eigen::Index k = 0; k < a.cols(); ++k) c(i, j) += a(i, k) * b(k, j);
  return c;
}

// Scalar-loop factorization objective.
inline double objective_scalar(const rt4sc::Matrix& m, const rt4sc::Matrix& t,
                               const rt4sc::Matrix& w, const rt4sc::Matrix& h,
                               double lambda) {
  const rt4sc::Matrix ht = matmul(h, t);
  const rt4sc::Matrix wht = matmul(w.transpose(), ht);
  double total = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double d = m(i, j) - wht(i, j);
      total += d * d;
    }
  for (Eigen::Index i = 0; i < w.rows(); ++i)
    for (Eigen::Index j = 0; j < w.cols(); ++j) total += lambda * w(i, j) * w(i, j);
  for (Eigen::Index i = 0; i < h.rows(); ++i)
    for (Eigen::Index j = 0; j < h.cols(); ++j) total += lambda * h(i, j) * h(i, j);
  return total;
}

// Central finite differences of a scalar function w.r.t. one matrix argument.
inline rt4sc::Matrix finite_difference(const std::function<double(const rt4sc::Matrix&)>& f,
                                       rt4sc::Matrix x, double h) {
  rt4sc::Matrix g(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      const double orig = x(i, j);
      x(i, j) = orig + h;
      const double fp = f(x);
      x(i, j) = orig - h;
      const double fm = f(x);
      x(i, j) = orig;
      g(i, j) = (fp - fm) / (2.0 * h);
    }
  }
  return g;
}

// Gaussian elimination rank over GF(2).
inline int gf2_rank(std::vector<std::vector<int>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  int rank = 0;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols && pivot_row < rows.size(); ++c) {
    std::size_t sel = pivot_row;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[sel], rows[pivot_row]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != pivot_row && rows[r][c]) {
        for (std::size_t k = 0; k < cols; ++k) rows[r][k] ^= rows[pivot_row][k];
      }
    }
    ++pivot_row;
    ++rank;
  }
  return rank;
}

// Unsigned GF(2) boundary matrices straight from the simplex lists.
inline std::vector<std::vector<int>> gf2_boundary1(const rt4sc::SimplicialComplex& cx) {
  std::vector<std::vector<int>> rows(
      static_cast<std::size_t>(cx.n),
      std::vector<int>(cx.edges.size(), 0));
  for (std::size_t j = 0; j < cx.edges.size(); ++j) {
    rows[static_cast<std::size_t>(cx.edges[j][0])][j] = 1;
    rows[static_cast<std::size_t>(cx.edges[j][1])][j] = 1;
  }
  return rows;
}

inline std::vector<std::vector<int>> gf2_boundary2(const rt4sc::SimplicialComplex& cx) {
  std::vector<std::vector<int>> rows(cx.edges.size(),
                                     std::vector<int>(cx.triangles.size(), 0));
  auto edge_pos = [&cx](int u, int v) {
    const std::array<int, 2> key{std::min(u, v), std::max(u, v)};
    return static_cast<std::size_t>(
        std::lower_bound(cx.edges.begin(), cx.edges.end(), key) - cx.edges.begin());
  };
  for (std::size_t j = 0; j < cx.triangles.size(); ++j) {
    const auto& t = cx.triangles[j];
    rows[edge_pos(t[0], t[1])][j] = 1;
    rows[edge_pos(t[0], t[2])][j] = 1;
    rows[edge_pos(t[1], t[2])][j] = 1;
  }
  return rows;
}

struct BettiCounts {
  int creators0 = 0, creators1 = 0;  // |K_p| - rank(boundary_p)
  int betti0 = 0, betti1 = 0;        // creators minus rank(boundary_{p+1})
};

inline BettiCounts betti_gf2(const rt4sc::SimplicialComplex& cx) {
  const int rank1 = gf2_rank(gf2_boundary1(cx));
  const int rank2 = gf2_rank(gf2_boundary2(cx));
  BettiCounts b;
  b.creators0 = cx.n;  // boundary_0 = 0
  b.creators1 = static_cast<int>(cx.edges.size()) - rank1;
  b.betti0 = b.creators0 - rank1;
  b.betti1 = b.creators1 - rank2;
  return b;
}

// Pairwise AUC with half credit for ties.
inline double auc_pairs(const std::vector<double>& scores, const std::vector<int>& labels) {
  double wins = 0.0;
  long total = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!labels[i]) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (labels[j]) continue;
      ++total;
      if (scores[i] > scores[j]) wins += 1.0;
      else if (scores[i] == scores[j]) wins += 0.5;
    }
  }
  return wins / static_cast<double>(total);
}

// All-pairs shortest hop distances (Floyd-Warshall).
inline std::vector<std::vector<int>> hop_distances(const rt4sc::TextAttributedGraph& g) {
  const int inf = 1 << 28;
  std::vector<std::vector<int>> d(static_cast<std::size_t>(g.n),
                                  std::vector<int>(static_cast<std::size_t>(g.n), inf));
  for (int i = 0; i < g.n; ++i) d[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 0;
  for (const auto& e : g.edges) {
    d[static_cast<std::size_t>(e[0])][static_cast<std::size_t>(e[1])] = 1;
    d[static_cast<std::size_t>(e[1])][static_cast<std::size_t>(e[0])] = 1;
  }
  for (int k = 0; k < g.n; ++k)
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j)
        d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::min(
            d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
            d[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] +
                d[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]);
  return d;
}

// Every 3-subset checked against the edge set.
inline std::vector<std::array<int, 3>> triangles_bruteforce(const rt4sc::TextAttributedGraph& g) {
  std::vector<std::array<int, 3>> tris;
  for (int a = 0; a < g.n; ++a)
    for (int b = a + 1; b < g.n; ++b)
      for (int c = b + 1; c < g.n; ++c)
        if (g.has_edge(a, b) && g.has_edge(a, c) && g.has_edge(b, c))
          tris.push_back({a, b, c});
  return tris;
}

// Seeded G(n, p) for property tests.
inline rt4sc::TextAttributedGraph random_graph(int n, double p, std::uint64_t seed) {
  rt4sc::Rng rng(seed);
  rt4sc::TextAttributedGraph g;
  g.n = n;
  g.docs.assign(static_cast<std::size_t>(n), "");
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) g.edges.push_back({u, v});
  return g;
}

// Kernel dimension of a symmetric PSD matrix (eigenvalues below tol).
inline int nullity(const rt4sc::Matrix& m, double tol = 1e-8) {
  if (m.rows() == 0) return 0;
  Eigen::SelfAdjointEigenSolver<rt4sc::Matrix> es(m);
  int count = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()(i)) < tol) ++count;
  return count;
}

}  // namespace oracles
