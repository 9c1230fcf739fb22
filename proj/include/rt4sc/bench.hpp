#pragma once

#include <cstdint>
#include <vector>

#include "rt4sc/graph.hpp"

namespace rt4sc {

/// Planted-partition benchmark: dense intra-community edges (p_in), sparse
/// inter-community edges (p_out), and per-node documents drawn from a
/// community vocabulary mixed with shared noise words.
struct PlantedSpec {
  int n = 60;
  int communities = 2;
  double p_in = 0.3;
  double p_out = 0.02;
  int vocab_per_community = 30;
  int shared_vocab = 20;
  int doc_len = 40;
  double noise_fraction = 0.3;
};

struct PlantedGraph {
  TextAttributedGraph graph;
  std::vector<int> labels;  // community of each node
};

PlantedGraph generate_planted(const PlantedSpec& spec, std::uint64_t seed);

}  // namespace rt4sc
