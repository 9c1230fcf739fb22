#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rt4sc/text_features.hpp"

using namespace rt4sc;

TEST_CASE("tokenizer lowercases and splits on non-alphanumerics") {
  const auto toks = tokenize("Hello, wORLD-42!  x");
  REQUIRE(toks.size() == 4);
  CHECK(toks[0] == "hello");
  CHECK(toks[1] == "world");
  CHECK(toks[2] == "42");
  CHECK(toks[3] == "x");
}

TEST_CASE("ubiquitous terms get zero weight") {
  const auto td = build_tfidf({"a", "a"});
  REQUIRE(td.vocab == std::vector<std::string>{"a"});
  CHECK(td.X.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("tf-idf matches the hand oracle on a two-doc corpus") {
  const auto td = build_tfidf({"a", "b"});
  REQUIRE(td.vocab == std::vector<std::string>{"a", "b"});
  CHECK(td.X(0, 0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(td.X(0, 1) == 0.0);
  CHECK(td.X(1, 0) == 0.0);
  CHECK(td.X(1, 1) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("tf uses raw counts") {
  const auto td = build_tfidf({"dog dog dog", "cat"});
  REQUIRE(td.vocab == std::vector<std::string>{"cat", "dog"});
  CHECK(td.X(1, 0) == doctest::Approx(3.0 * std::log(2.0)));
}

TEST_CASE("empty corpus yields an empty vocabulary") {
  const auto td = build_tfidf({"", ""});
  CHECK(td.vocab.empty());
  CHECK(td.X.rows() == 0);
  CHECK(td.X.cols() == 2);
}

TEST_CASE("identity term-document matrix reproduces its Gram matrix") {
  TermDocMatrix td;
  td.X = Matrix::Identity(3, 3);
  td.vocab = {"a", "b", "c"};
  const auto tf = reduce_to_t(td, 3, 7);
  const Matrix gram = tf.T.transpose() * tf.T;
  CHECK((gram - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("rank-1 reduction to t=1 preserves the Gram matrix") {
  TermDocMatrix td;
  Vector u(4), v(3);
  u << 1.0, -2.0, 0.5, 3.0;
  v << 2.0, 1.0, -1.0;
  td.X = u * v.transpose();
  const auto tf = reduce_to_t(td, 1, 11);
  const Matrix gram_x = td.X.transpose() * td.X;
  const Matrix gram_t = tf.T.transpose() * tf.T;
  CHECK((gram_x - gram_t).norm() / gram_x.norm() <= 1e-6);
}

TEST_CASE("rows beyond the rank are exactly zero") {
  TermDocMatrix td;
  Rng rng(3);
  const Matrix a = rng.uniform_matrix(4, 2, -1.0, 1.0);
  const Matrix b = rng.uniform_matrix(2, 6, -1.0, 1.0);
  td.X = a * b;  // rank 2
  const auto tf = reduce_to_t(td, 5, 13);
  REQUIRE(tf.T.rows() == 5);
  for (int i = 2; i < 5; ++i) CHECK(tf.T.row(i).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Gram error decreases in t and vanishes at full rank") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    Rng rng(200 + seed);
    const int terms = 3 + static_cast<int>(seed % 4);
    const int n = 2 + static_cast<int>(seed % 6);
    TermDocMatrix td;
    td.X = rng.uniform_matrix(terms, n, 0.0, 2.0);
    const Matrix gram = td.X.transpose() * td.X;

    const int max_rank = static_cast<int>(std::min(terms, n));
    double prev = std::numeric_limits<double>::infinity();
    for (int t = 1; t <= max_rank; ++t) {
      const auto tf = reduce_to_t(td, t, 997);
      const double err = (gram - tf.T.transpose() * tf.T).norm();
      CHECK(err <= prev + 1e-9);
      prev = err;
    }
    CHECK(prev <= 1e-6 * gram.norm());
  }
}

TEST_CASE("reduction is deterministic in (X, t, seed)") {
  TermDocMatrix td;
  Rng rng(17);
  td.X = rng.uniform_matrix(5, 4, -1.0, 1.0);
  const auto a = reduce_to_t(td, 3, 42);
  const auto b = reduce_to_t(td, 3, 42);
  CHECK(a.T == b.T);
}
