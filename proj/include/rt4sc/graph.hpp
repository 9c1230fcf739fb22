#pragma once

#include <array>
#include <string>
#include <vector>

#include "rt4sc/types.hpp"

namespace rt4sc {

/// Undirected graph with one text document per node. Node ids are dense
/// 0..n-1; edges are stored as (u, v) with u < v in lexicographic order,
/// without duplicates or self-loops.
struct TextAttributedGraph {
  int n = 0;
  std::vector<std::array<int, 2>> edges;
  std::vector<std::string> docs;  // size n; entries may be empty

  std::vector<std::vector<int>> adjacency_lists() const;
  std::vector<int> degrees() const;
  bool has_edge(int u, int v) const;
};

struct LoadStats {
  int self_loops_dropped = 0;
  int duplicate_edges_dropped = 0;
};

/// Parses a tab-separated edge list ("u<TAB>v" per line) and an optional docs
/// file ("id<TAB>free text" per line). Self-loops are dropped and counted in
/// `stats`; duplicate and reversed edges collapse to one undirected edge.
/// n = 1 + max id seen in either file. Throws std::runtime_error with the
/// offending line number on parse failure or negative ids.
TextAttributedGraph load_edge_list(const std::string& edge_path,
                                   const std::string& docs_path = {},
                                   LoadStats* stats = nullptr);

void save_edge_list(const TextAttributedGraph& g, const std::string& edge_path);
void save_docs(const TextAttributedGraph& g, const std::string& docs_path);

Matrix adjacency_matrix(const TextAttributedGraph& g);

/// Row-stochastic transition matrix S = D^-1 A. Rows of isolated nodes are
/// all zero.
Matrix transition_matrix(const TextAttributedGraph& g);

/// Affinity matrix M = (S + S^2) / 2, the factorization target. Entries lie
/// in [0,1]; rows sum to 1 for non-isolated nodes and 0 otherwise.
Matrix affinity(const Matrix& S);

}  // namespace rt4sc
