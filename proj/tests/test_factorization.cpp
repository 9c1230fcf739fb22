#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "oracles.hpp"
#include "rt4sc/factorization.hpp"

using namespace rt4sc;

namespace {

// Planted instance M = W*^T H* T with modest factor norms so the ridge floor
// stays well below the recovery tolerance.
struct Planted {
  Matrix M, T, W, H;
};

Planted planted_instance(std::uint64_t seed, int k = 2, int n = 6, int t = 3) {
  Rng rng(seed);
  Planted p;
  p.W = rng.uniform_matrix(k, n, -0.25, 0.25);
  p.H = rng.uniform_matrix(k, t, -0.25, 0.25);
  p.T = rng.uniform_matrix(t, n, -1.0, 1.0);
  p.M = p.W.transpose() * p.H * p.T;
  return p;
}

}  // namespace

TEST_CASE("objective with zero factors is the squared norm of M") {
  Rng rng(4);
  const Matrix m = rng.uniform_matrix(4, 4, -1.0, 1.0);
  const Matrix t = rng.uniform_matrix(2, 4, -1.0, 1.0);
  const Matrix w = Matrix::Zero(3, 4);
  const Matrix h = Matrix::Zero(3, 2);
  CHECK(objective(m, t, w, h, 0.0) == doctest::Approx(m.squaredNorm()).epsilon(1e-15));
}

TEST_CASE("objective vanishes on an exact factorization") {
  const Planted p = planted_instance(5);
  CHECK(objective(p.M, p.T, p.W, p.H, 0.0) <= 1e-24);
}

TEST_CASE("objective matches the scalar-loop oracle") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(100 + seed);
    const Matrix m = rng.uniform_matrix(4, 4, -1.0, 1.0);
    const Matrix t = rng.uniform_matrix(3, 4, -1.0, 1.0);
    const Matrix w = rng.uniform_matrix(2, 4, -1.0, 1.0);
    const Matrix h = rng.uniform_matrix(2, 3, -1.0, 1.0);
    const double got = objective(m, t, w, h, 0.3);
    const double want = oracles::objective_scalar(m, t, w, h, 0.3);
    CHECK(got == doctest::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("objective rejects mismatched shapes") {
  const Matrix m = Matrix::Zero(3, 3);
  const Matrix t = Matrix::Zero(2, 4);  // wrong n
  CHECK_THROWS_AS(objective(m, t, Matrix::Zero(2, 3), Matrix::Zero(2, 2), 0.1),
                  std::invalid_argument);
}

TEST_CASE("factorize recovers a planted model") {
  FactorizationConfig cfg;
  cfg.k = 2;
  cfg.lambda = 1e-6;
  cfg.max_iters = 50;
  cfg.tol = 1e-12;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Planted p = planted_instance(40 + seed);
    cfg.seed = seed;
    const FactorModel model = factorize(p.M, p.T, cfg);
    CHECK(model.objective_trace.back() <= 1e-6);
  }
}

TEST_CASE("objective trace is non-increasing for lambda > 0") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(300 + seed);
    const Matrix m = rng.uniform_matrix(6, 6, 0.0, 1.0);
    const Matrix t = rng.uniform_matrix(3, 6, -1.0, 1.0);
    FactorizationConfig cfg;
    cfg.k = 2;
    cfg.lambda = 0.05;
    cfg.max_iters = 30;
    cfg.tol = 1e-14;
    cfg.seed = seed;
    const FactorModel model = factorize(m, t, cfg);
    for (std::size_t i = 1; i < model.objective_trace.size(); ++i)
      CHECK(model.objective_trace[i] <= model.objective_trace[i - 1] + 1e-9);
  }
}

TEST_CASE("zero text features drive W to the degenerate ridge solution") {
  Rng rng(8);
  const Matrix m = rng.uniform_matrix(4, 4, 0.0, 1.0);
  const Matrix t = Matrix::Zero(2, 4);
  FactorizationConfig cfg;
  cfg.k = 2;
  cfg.lambda = 1e-4;
  cfg.max_iters = 5;
  const FactorModel model = factorize(m, t, cfg);
  CHECK(model.W.cwiseAbs().maxCoeff() == 0.0);  // B = HT = 0 makes W = 0
  const Matrix r = embed(model, t);
  CHECK(r.rightCols(2).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("max_iters = 0 returns the initialization") {
  const Planted p = planted_instance(9);
  FactorizationConfig cfg;
  cfg.k = 2;
  cfg.max_iters = 0;
  const FactorModel model = factorize(p.M, p.T, cfg);
  CHECK(model.objective_trace.size() == 1);
}

TEST_CASE("lambda = 0 with a singular subproblem advises lambda > 0") {
  const Planted p = planted_instance(10);
  FactorizationConfig cfg;
  cfg.k = 2;
  cfg.lambda = 0.0;
  cfg.max_iters = 3;
  // H0 = 0 makes B B^T singular on the first W half-step.
  CHECK_THROWS_WITH_AS(
      factorize(p.M, p.T, cfg, Matrix::Zero(2, 6), Matrix::Zero(2, 3)),
      doctest::Contains("lambda"), std::runtime_error);
}

TEST_CASE("analytic gradients match central finite differences") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(500 + seed);
    const Matrix m = rng.uniform_matrix(4, 4, -1.0, 1.0);
    const Matrix t = rng.uniform_matrix(2, 4, -1.0, 1.0);
    const Matrix w = rng.uniform_matrix(3, 4, -0.5, 0.5);
    const Matrix h = rng.uniform_matrix(3, 2, -0.5, 0.5);
    const double lambda = 0.2;

    const auto [gw, gh] = objective_gradients(m, t, w, h, lambda);
    const Matrix fw = oracles::finite_difference(
        [&](const Matrix& x) { return objective(m, t, x, h, lambda); }, w, 1e-5);
    const Matrix fh = oracles::finite_difference(
        [&](const Matrix& x) { return objective(m, t, w, x, lambda); }, h, 1e-5);
    CHECK((gw - fw).norm() / fw.norm() <= 1e-4);
    CHECK((gh - fh).norm() / fh.norm() <= 1e-4);
  }
}

TEST_CASE("node relabeling permutes the embedding rows") {
  Rng rng(77);
  const int n = 5, k = 2, t = 3;
  const Matrix m0 = rng.uniform_matrix(n, n, 0.0, 1.0);
  const Matrix t0 = rng.uniform_matrix(t, n, -1.0, 1.0);
  const Matrix w0 = rng.uniform_matrix(k, n, -0.1, 0.1);
  const Matrix h0 = rng.uniform_matrix(k, t, -0.1, 0.1);

  const std::vector<int> perm{2, 0, 4, 1, 3};  // node i -> perm[i]
  Matrix m1(n, n), t1(t, n), w1(k, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m1(perm[i], perm[j]) = m0(i, j);
    t1.col(perm[i]) = t0.col(i);
    w1.col(perm[i]) = w0.col(i);
  }

  FactorizationConfig cfg;
  cfg.k = k;
  cfg.lambda = 0.1;
  cfg.max_iters = 20;
  cfg.tol = 1e-14;
  const Matrix r0 = embed(factorize(m0, t0, cfg, w0, h0), t0);
  const Matrix r1 = embed(factorize(m1, t1, cfg, w1, h0), t1);
  for (int i = 0; i < n; ++i)
    CHECK((r1.row(perm[i]) - r0.row(i)).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("embedding has shape n x 2k") {
  const Planted p = planted_instance(12, 2, 5, 3);
  FactorizationConfig cfg;
  cfg.k = 2;
  cfg.max_iters = 2;
  const FactorModel model = factorize(p.M, p.T, cfg);
  const Matrix r = embed(model, p.T);
  CHECK(r.rows() == 5);
  CHECK(r.cols() == 4);
}

TEST_CASE("embedding concatenates W and HT columns") {
  FactorModel model;
  model.W = Matrix(1, 2);
  model.W << 1.0, 2.0;
  model.H = Matrix(1, 1);
  model.H << 3.0;
  Matrix t(1, 2);
  t << 1.0, 0.0;
  const Matrix r = embed(model, t);
  CHECK(r(0, 0) == 1.0);
  CHECK(r(0, 1) == 3.0);
  CHECK(r(1, 0) == 2.0);
  CHECK(r(1, 1) == 0.0);
}

TEST_CASE("model save/load round trip preserves everything") {
  const Planted p = planted_instance(13);
  FactorizationConfig cfg;
  cfg.k = 2;
  cfg.max_iters = 3;
  cfg.seed = 99;
  const FactorModel model = factorize(p.M, p.T, cfg);
  const auto path =
      (std::filesystem::temp_directory_path() / "rt4sc_model_rt.bin").string();
  save_model(model, path);
  const FactorModel loaded = load_model(path);
  CHECK(loaded.W == model.W);
  CHECK(loaded.H == model.H);
  CHECK(loaded.seed == model.seed);
}

TEST_CASE("loading a non-model file fails on the magic string") {
  const auto path =
      (std::filesystem::temp_directory_path() / "rt4sc_model_bad.bin").string();
  std::FILE* f = std::fopen(path.c_str(), "wb");
  std::fputs("NOTAMODEL", f);
  std::fclose(f);
  CHECK_THROWS_WITH_AS(load_model(path), doctest::Contains("RT4SC1"), std::runtime_error);
}
