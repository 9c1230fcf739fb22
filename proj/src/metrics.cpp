#include "rt4sc/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace rt4sc {

double auc(const std::vector<double>& scores, const std::vector<int>& labels) {
  if (scores.size() != labels.size())
    throw std::invalid_argument("auc: scores and labels must align");
  const std::size_t pos =
      static_cast<std::size_t>(std::count_if(labels.begin(), labels.end(),
                                             [](int l) { return l != 0; }));
  const std::size_t neg = labels.size() - pos;
  if (pos == 0 || neg == 0)
    throw std::invalid_argument("auc: both classes must be present");

  // Average ranks over tied scores, then the rank-sum statistic.
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  double pos_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double avg_rank = 0.5 * static_cast<double>(i + 1 + j);  // ranks are 1-based
    for (std::size_t u = i; u < j; ++u)
      if (labels[order[u]] != 0) pos_rank_sum += avg_rank;
    i = j;
  }
  const double u_stat =
      pos_rank_sum - static_cast<double>(pos) * (static_cast<double>(pos) + 1.0) / 2.0;
  return u_stat / (static_cast<double>(pos) * static_cast<double>(neg));
}

double precision_at_k(const std::vector<double>& scores, const std::vector<int>& labels,
                      int k) {
  if (scores.size() != labels.size())
    throw std::invalid_argument("precision_at_k: scores and labels must align");
  if (k <= 0) throw std::invalid_argument("precision_at_k: k must be >= 1");
  if (static_cast<std::size_t>(k) > scores.size())
    throw std::invalid_argument("precision_at_k: k exceeds item count");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });

  int hits = 0;
  for (int i = 0; i < k; ++i)
    if (labels[order[static_cast<std::size_t>(i)]] != 0) ++hits;
  return static_cast<double>(hits) / static_cast<double>(k);
}

}  // namespace rt4sc
