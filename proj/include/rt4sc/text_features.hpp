#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rt4sc/types.hpp"

namespace rt4sc {

/// Raw tf-idf term-document matrix, |vocab| x n, with documents as columns.
struct TermDocMatrix {
  Matrix X;
  std::vector<std::string> vocab;  // sorted lexicographically
};

/// Reduced text features T (t x n); column j belongs to node j.
struct TextFeatureMatrix {
  Matrix T;
  std::vector<std::string> vocab;
};

/// Lowercase alphanumeric tokens, split on every non-alphanumeric byte.
std::vector<std::string> tokenize(const std::string& text);

/// entry(w, j) = tf(w, j) * ln(n / df(w)) with raw term counts. Terms present
/// in every document get weight 0. An all-empty corpus yields a 0 x n matrix
/// with an empty vocabulary.
TermDocMatrix build_tfidf(const std::vector<std::string>& docs);

/// Rank-t reduction of X via seeded subspace iteration on X^T X: T's i-th row
/// is sqrt(lambda_i) * v_i^T for the leading eigenpairs of the document Gram
/// matrix, so T^T T converges to X^T X as t grows. Rows beyond rank(X) are
/// exactly zero. Deterministic for fixed (X, t, seed).
TextFeatureMatrix reduce_to_t(const TermDocMatrix& td, int t, std::uint64_t seed);

void save_features_csv(const TextFeatureMatrix& tf, const std::string& path);

}  // namespace rt4sc
