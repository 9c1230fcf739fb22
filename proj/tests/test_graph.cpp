#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "rt4sc/graph.hpp"

using namespace rt4sc;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name, const std::string& content) {
  const fs::path p = fs::temp_directory_path() / ("rt4sc_graph_" + name);
  std::ofstream out(p);
  out << content;
  return p;
}

}  // namespace

TEST_CASE("load_edge_list parses tab-separated pairs") {
  const auto p = write_temp("basic.tsv", "0\t1\n1\t2\n");
  const auto g = load_edge_list(p.string());
  CHECK(g.n == 3);
  REQUIRE(g.edges.size() == 2);
  CHECK(g.edges[0] == std::array<int, 2>{0, 1});
  CHECK(g.edges[1] == std::array<int, 2>{1, 2});
}

TEST_CASE("load_edge_list drops and counts self-loops") {
  const auto p = write_temp("selfloop.tsv", "0\t0\n");
  LoadStats stats;
  const auto g = load_edge_list(p.string(), "", &stats);
  CHECK(g.n == 1);
  CHECK(g.edges.empty());
  CHECK(stats.self_loops_dropped == 1);
}

TEST_CASE("load_edge_list deduplicates reversed edges") {
  const auto p = write_temp("dup.tsv", "0\t1\n1\t0\n");
  LoadStats stats;
  const auto g = load_edge_list(p.string(), "", &stats);
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0] == std::array<int, 2>{0, 1});
  CHECK(stats.duplicate_edges_dropped == 1);
}

TEST_CASE("load_edge_list rejects junk with a line number") {
  const auto p = write_temp("junk.tsv", "0\t1\nnot an edge\n");
  CHECK_THROWS_WITH_AS(load_edge_list(p.string()), doctest::Contains(":2"),
                       std::runtime_error);
}

TEST_CASE("load_edge_list rejects negative ids") {
  const auto p = write_temp("neg.tsv", "0\t-3\n");
  CHECK_THROWS_AS(load_edge_list(p.string()), std::runtime_error);
}

TEST_CASE("docs file extends n and attaches text") {
  const auto pe = write_temp("docs_e.tsv", "0\t1\n");
  const auto pd = write_temp("docs_d.tsv", "0\thello world\n3\tlast node\n");
  const auto g = load_edge_list(pe.string(), pd.string());
  CHECK(g.n == 4);
  CHECK(g.docs[0] == "hello world");
  CHECK(g.docs[1].empty());
  CHECK(g.docs[3] == "last node");
}

TEST_CASE("round trip through save + load is the identity") {
  TextAttributedGraph g;
  g.n = 5;
  g.edges = {{0, 2}, {1, 4}, {2, 3}};
  g.docs = {"a", "", "c d", "", "e"};
  const fs::path pe = fs::temp_directory_path() / "rt4sc_graph_rt_e.tsv";
  const fs::path pd = fs::temp_directory_path() / "rt4sc_graph_rt_d.tsv";
  save_edge_list(g, pe.string());
  save_docs(g, pd.string());
  const auto g2 = load_edge_list(pe.string(), pd.string());
  CHECK(g2.n == g.n);
  CHECK(g2.edges == g.edges);
  CHECK(g2.docs == g.docs);
}

TEST_CASE("transition matrix of a single edge swaps the endpoints") {
  TextAttributedGraph g;
  g.n = 2;
  g.edges = {{0, 1}};
  const Matrix s = transition_matrix(g);
  CHECK(s(0, 0) == 0.0);
  CHECK(s(0, 1) == 1.0);
  CHECK(s(1, 0) == 1.0);
  CHECK(s(1, 1) == 0.0);
}

TEST_CASE("triangle rows hold two entries of one half") {
  TextAttributedGraph g;
  g.n = 3;
  g.edges = {{0, 1}, {0, 2}, {1, 2}};
  const Matrix s = transition_matrix(g);
  for (int i = 0; i < 3; ++i) {
    int halves = 0;
    for (int j = 0; j < 3; ++j)
      if (s(i, j) == 0.5) ++halves;
    CHECK(halves == 2);
    CHECK(s(i, i) == 0.0);
  }
}

TEST_CASE("isolated nodes get zero transition rows") {
  TextAttributedGraph g;
  g.n = 3;
  g.edges = {{0, 1}};
  const Matrix s = transition_matrix(g);
  CHECK(s.row(2).cwiseAbs().sum() == 0.0);
}

TEST_CASE("transition row sums are exactly 1 or 0") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = oracles::random_graph(2 + static_cast<int>(seed % 5), 0.4, seed);
    const Matrix s = transition_matrix(g);
    const auto deg = g.degrees();
    for (int i = 0; i < g.n; ++i) {
      if (deg[static_cast<std::size_t>(i)] > 0) {
        CHECK(s.row(i).sum() == doctest::Approx(1.0).epsilon(1e-15));
      } else {
        CHECK(s.row(i).sum() == 0.0);
      }
    }
  }
}

TEST_CASE("affinity of a single edge averages S and S squared") {
  TextAttributedGraph g;
  g.n = 2;
  g.edges = {{0, 1}};
  const Matrix m = affinity(transition_matrix(g));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(m(i, j) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("affinity of K3 is 0.25 on and 0.375 off the diagonal") {
  TextAttributedGraph g;
  g.n = 3;
  g.edges = {{0, 1}, {0, 2}, {1, 2}};
  const Matrix m = affinity(transition_matrix(g));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(m(i, j) == doctest::Approx(i == j ? 0.25 : 0.375).epsilon(1e-15));
}

TEST_CASE("affinity of the empty graph is zero") {
  TextAttributedGraph g;
  g.n = 4;
  const Matrix m = affinity(transition_matrix(g));
  CHECK(m.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("affinity matches the triple-loop product oracle on small graphs") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int n = 1 + static_cast<int>(seed % 6);
    const auto g = oracles::random_graph(n, 0.5, 1000 + seed);
    const Matrix s = transition_matrix(g);
    const Matrix expected = 0.5 * (s + oracles::matmul(s, s));
    const Matrix m = affinity(s);
    CHECK((m - expected).cwiseAbs().maxCoeff() <= 1e-12);

    // Type invariants: entries in [0,1], row sums 1 (non-isolated) or 0.
    const auto deg = g.degrees();
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        CHECK(m(i, j) >= 0.0);
        CHECK(m(i, j) <= 1.0);
      }
      if (deg[static_cast<std::size_t>(i)] > 0) {
        CHECK(m.row(i).sum() == doctest::Approx(1.0).epsilon(1e-12));
      } else {
        CHECK(m.row(i).sum() == 0.0);
      }
    }
  }
}
