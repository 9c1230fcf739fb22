#include "rt4sc/text_features.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

namespace rt4sc {

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (const char c : text) {
    const unsigned char uc = static_cast<unsigned char>(c);
    if (std::isalnum(uc)) {
      cur.push_back(static_cast<char>(std::tolower(uc)));
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

TermDocMatrix build_tfidf(const std::vector<std::string>& docs) {
  const int n = static_cast<int>(docs.size());

  // Per-document term counts and document frequencies. std::map keeps the
  // vocabulary in lexicographic order.
  std::vector<std::map<std::string, int>> counts(docs.size());
  std::map<std::string, int> df;
  for (std::size_t j = 0; j < docs.size(); ++j) {
    for (const auto& tok : tokenize(docs[j])) ++counts[j][tok];
    for (const auto& [term, cnt] : counts[j]) ++df[term];
  }

  TermDocMatrix td;
  td.vocab.reserve(df.size());
  for (const auto& [term, freq] : df) td.vocab.push_back(term);

  td.X = Matrix::Zero(static_cast<Eigen::Index>(td.vocab.size()), n);
  for (std::size_t w = 0; w < td.vocab.size(); ++w) {
    const double idf = std::log(static_cast<double>(n) / df[td.vocab[w]]);
    if (idf == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      const auto it = counts[static_cast<std::size_t>(j)].find(td.vocab[w]);
      if (it != counts[static_cast<std::size_t>(j)].end())
        td.X(static_cast<Eigen::Index>(w), j) = it->second * idf;
    }
  }
  return td;
}

TextFeatureMatrix reduce_to_t(const TermDocMatrix& td, int t, std::uint64_t seed) {
  if (t < 1) throw std::invalid_argument("reduce_to_t: t must be >= 1");
  const Eigen::Index n = td.X.cols();

  TextFeatureMatrix out;
  out.vocab = td.vocab;
  out.T = Matrix::Zero(t, n);
  if (n == 0) return out;

  const Matrix gram = td.X.transpose() * td.X;  // n x n, PSD
  const double gmax = gram.size() > 0 ? gram.cwiseAbs().maxCoeff() : 0.0;
  if (gmax == 0.0) return out;

  const Eigen::Index p = std::min<Eigen::Index>(t, n);

  // Block power iteration with QR re-orthonormalization.
  Rng rng(seed);
  Matrix q = rng.uniform_matrix(n, p, -1.0, 1.0);
  {
    Eigen::HouseholderQR<Matrix> qr(q);
    q = qr.householderQ() * Matrix::Identity(n, p);
  }
  constexpr int kMaxIters = 300;
  constexpr double kTol = 1e-10;  // residual outside the previous subspace
  for (int it = 0; it < kMaxIters; ++it) {
    Matrix z = gram * q;
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix qn = qr.householderQ() * Matrix::Identity(n, p);
    const double resid = (qn - q * (q.transpose() * qn)).norm();
    q = qn;
    if (resid < kTol) break;
  }

  // Rayleigh-Ritz on the converged subspace.
  const Matrix small = q.transpose() * gram * q;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (small + small.transpose()));
  if (es.info() != Eigen::Success)
    throw std::runtime_error("reduce_to_t: eigen decomposition failed");

  // Eigenvalues ascending from Eigen; emit rows by descending eigenvalue.
  const double rank_tol = static_cast<double>(n) * 1e-13 * es.eigenvalues().cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < p; ++i) {
    const Eigen::Index src = p - 1 - i;
    const double lambda = es.eigenvalues()(src);
    if (lambda <= rank_tol) continue;  // below rank(X): row stays zero
    out.T.row(i) = std::sqrt(lambda) * (q * es.eigenvectors().col(src)).transpose();
  }
  return out;
}

void save_features_csv(const TextFeatureMatrix& tf, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write features file: " + path);
  out.precision(17);
  for (Eigen::Index i = 0; i < tf.T.rows(); ++i) {
    for (Eigen::Index j = 0; j < tf.T.cols(); ++j) {
      if (j) out << ',';
      out << tf.T(i, j);
    }
    out << '\n';
  }
}

}  // namespace rt4sc
