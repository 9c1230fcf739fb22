#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rt4sc/types.hpp"

namespace rt4sc {

struct FactorizationConfig {
  int k = 40;
  double lambda = 0.2;
  int max_iters = 50;
  double tol = 1e-6;  // relative objective-decrease stopping threshold
  std::uint64_t seed = 0;
};

/// Three-matrix factor model M ~ W^T H T with W (k x n) and H (k x t).
struct FactorModel {
  Matrix W;
  Matrix H;
  std::vector<double> objective_trace;  // non-increasing, one entry per iteration + init
  std::uint64_t seed = 0;
};

/// ||M - W^T H T||_F^2 + lambda * (||W||_F^2 + ||H||_F^2).
/// Throws std::invalid_argument on shape mismatch.
double objective(const Matrix& M, const Matrix& T, const Matrix& W,
                 const Matrix& H, double lambda);

/// Analytic gradients of `objective` with respect to W and H.
std::pair<Matrix, Matrix> objective_gradients(const Matrix& M, const Matrix& T,
                                              const Matrix& W, const Matrix& H,
                                              double lambda);

/// Alternating exact ridge minimization. Each half-step solves its regularized
/// least-squares subproblem in closed form, so the objective is non-increasing
/// whenever lambda > 0. Initialization is seeded uniform(-0.1, 0.1). Stops at
/// max_iters or when the relative objective decrease falls below tol.
/// With lambda == 0 a singular half-step solve throws std::runtime_error
/// advising lambda > 0.
FactorModel factorize(const Matrix& M, const Matrix& T, const FactorizationConfig& cfg);

/// Same, but from caller-supplied initial factors.
FactorModel factorize(const Matrix& M, const Matrix& T, const FactorizationConfig& cfg,
                      Matrix W0, Matrix H0);

/// Node representations R (n x 2k): row i concatenates column i of W and
/// column i of HT. Rows are L2-normalized only when `l2_normalize` is set.
Matrix embed(const FactorModel& model, const Matrix& T, bool l2_normalize = false);

/// Binary model format, versioned by the leading magic string "RT4SC1".
void save_model(const FactorModel& model, const std::string& path);
FactorModel load_model(const std::string& path);

void save_embeddings_csv(const Matrix& R, const std::string& path);
Matrix load_embeddings_csv(const std::string& path);

}  // namespace rt4sc
