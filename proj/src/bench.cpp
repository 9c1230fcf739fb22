#include "rt4sc/bench.hpp"

#include <stdexcept>
#include <string>

namespace rt4sc {

PlantedGraph generate_planted(const PlantedSpec& spec, std::uint64_t seed) {
  if (spec.n < 1 || spec.communities < 1)
    throw std::invalid_argument("generate_planted: need n >= 1 and communities >= 1");
  if (spec.p_in < 0 || spec.p_in > 1 || spec.p_out < 0 || spec.p_out > 1)
    throw std::invalid_argument("generate_planted: probabilities must lie in [0,1]");
  if (spec.vocab_per_community < 1)
    throw std::invalid_argument("generate_planted: vocab_per_community must be >= 1");

  Rng rng(seed);
  PlantedGraph out;
  out.graph.n = spec.n;
  out.labels.resize(static_cast<std::size_t>(spec.n));
  // Contiguous balanced blocks.
  for (int v = 0; v < spec.n; ++v)
    out.labels[static_cast<std::size_t>(v)] =
        static_cast<int>(static_cast<long>(v) * spec.communities / spec.n);

  for (int u = 0; u < spec.n; ++u) {
    for (int v = u + 1; v < spec.n; ++v) {
      const bool same = out.labels[static_cast<std::size_t>(u)] ==
                        out.labels[static_cast<std::size_t>(v)];
      if (rng.bernoulli(same ? spec.p_in : spec.p_out))
        out.graph.edges.push_back({u, v});
    }
  }

  out.graph.docs.resize(static_cast<std::size_t>(spec.n));
  for (int v = 0; v < spec.n; ++v) {
    const int c = out.labels[static_cast<std::size_t>(v)];
    std::string doc;
    for (int w = 0; w < spec.doc_len; ++w) {
      if (!doc.empty()) doc.push_back(' ');
      if (spec.shared_vocab > 0 && rng.bernoulli(spec.noise_fraction)) {
        doc += "noise" + std::to_string(rng.below(static_cast<std::uint64_t>(spec.shared_vocab)));
      } else {
        doc += "c" + std::to_string(c) + "w" +
               std::to_string(rng.below(static_cast<std::uint64_t>(spec.vocab_per_community)));
      }
    }
    out.graph.docs[static_cast<std::size_t>(v)] = doc;
  }
  return out;
}

}  // namespace rt4sc
