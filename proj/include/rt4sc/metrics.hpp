#pragma once

#include <vector>

#include "rt4sc/types.hpp"

namespace rt4sc {

/// Mann-Whitney AUC: probability that a positive outscores a negative, ties
/// counting 1/2. Throws std::invalid_argument unless both classes appear.
double auc(const std::vector<double>& scores, const std::vector<int>& labels);

/// Fraction of positives among the k top-scored items, ties broken by item id
/// ascending. Requires 1 <= k <= scores.size().
double precision_at_k(const std::vector<double>& scores, const std::vector<int>& labels,
                      int k);

}  // namespace rt4sc
