#include "rt4sc/factorization.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rt4sc {

namespace {

void check_shapes(const Matrix& M, const Matrix& T, const Matrix& W, const Matrix& H) {
  const Eigen::Index n = M.rows();
  if (M.cols() != n) throw std::invalid_argument("objective: M must be square");
  if (T.cols() != n) throw std::invalid_argument("objective: T must have n columns");
  if (W.cols() != n) throw std::invalid_argument("objective: W must have n columns");
  if (H.rows() != W.rows()) throw std::invalid_argument("objective: W and H disagree on k");
  if (H.cols() != T.rows()) throw std::invalid_argument("objective: H and T disagree on t");
}

[[noreturn]] void throw_singular() {
  throw std::runtime_error(
      "factorize: singular ridge solve with lambda = 0; set lambda > 0");
}

// Exact minimizer of ||M - W^T B||^2 + lambda ||W||^2 for fixed B = HT:
// W = (B B^T + lambda I)^-1 B M^T.
Matrix solve_w(const Matrix& B, const Matrix& M, double lambda) {
  Matrix lhs = B * B.transpose();
  lhs.diagonal().array() += lambda;
  if (lambda == 0.0) {
    Eigen::FullPivLU<Matrix> lu(lhs);
    if (!lu.isInvertible()) throw_singular();
    return lu.solve(B * M.transpose());
  }
  return lhs.llt().solve(B * M.transpose());
}

// Exact minimizer of ||M - W^T H T||^2 + lambda ||H||^2 for fixed W, T.
// The stationarity condition (W W^T) H (T T^T) + lambda H = W M T^T is a
// Sylvester-type equation; diagonalizing both Gram matrices solves it
// entrywise: with W W^T = U1 D1 U1^T and T T^T = U2 D2 U2^T,
// H = U1 [ (U1^T W M T^T U2)_ij / (d1_i d2_j + lambda) ] U2^T.
Matrix solve_h(const Matrix& W, const Matrix& T, const Matrix& M, double lambda) {
  Eigen::SelfAdjointEigenSolver<Matrix> e1(W * W.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> e2(T * T.transpose());
  if (e1.info() != Eigen::Success || e2.info() != Eigen::Success)
    throw std::runtime_error("factorize: eigen decomposition failed");

  const Vector d1 = e1.eigenvalues().cwiseMax(0.0);
  const Vector d2 = e2.eigenvalues().cwiseMax(0.0);
  Matrix c = e1.eigenvectors().transpose() * (W * M * T.transpose()) * e2.eigenvectors();

  const double scale = 1.0 + d1.maxCoeff() * d2.maxCoeff();
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    for (Eigen::Index j = 0; j < c.cols(); ++j) {
      const double denom = d1(i) * d2(j) + lambda;
      if (denom <= 1e-14 * scale) throw_singular();
      c(i, j) /= denom;
    }
  }
  return e1.eigenvectors() * c * e2.eigenvectors().transpose();
}

}  // namespace

double objective(const Matrix& M, const Matrix& T, const Matrix& W,
                 const Matrix& H, double lambda) {
  check_shapes(M, T, W, H);
  const Matrix resid = M - W.transpose() * (H * T);
  return resid.squaredNorm() + lambda * (W.squaredNorm() + H.squaredNorm());
}

std::pair<Matrix, Matrix> objective_gradients(const Matrix& M, const Matrix& T,
                                              const Matrix& W, const Matrix& H,
                                              double lambda) {
  check_shapes(M, T, W, H);
  const Matrix B = H * T;
  const Matrix E = M - W.transpose() * B;  // n x n residual
  Matrix gw = -2.0 * B * E.transpose() + 2.0 * lambda * W;
  Matrix gh = -2.0 * W * E * T.transpose() + 2.0 * lambda * H;
  return {std::move(gw), std::move(gh)};
}

FactorModel factorize(const Matrix& M, const Matrix& T, const FactorizationConfig& cfg) {
  if (cfg.k < 1) throw std::invalid_argument("factorize: k must be >= 1");
  Rng rng(cfg.seed);
  Matrix w0 = rng.uniform_matrix(cfg.k, M.rows(), -0.1, 0.1);
  Matrix h0 = rng.uniform_matrix(cfg.k, T.rows(), -0.1, 0.1);
  return factorize(M, T, cfg, std::move(w0), std::move(h0));
}

FactorModel factorize(const Matrix& M, const Matrix& T, const FactorizationConfig& cfg,
                      Matrix W0, Matrix H0) {
  if (cfg.tol <= 0) throw std::invalid_argument("factorize: tol must be > 0");
  check_shapes(M, T, W0, H0);

  FactorModel model;
  model.W = std::move(W0);
  model.H = std::move(H0);
  model.seed = cfg.seed;
  model.objective_trace.push_back(objective(M, T, model.W, model.H, cfg.lambda));

  for (int it = 0; it < cfg.max_iters; ++it) {
    model.W = solve_w(model.H * T, M, cfg.lambda);
    model.H = solve_h(model.W, T, M, cfg.lambda);
    const double obj = objective(M, T, model.W, model.H, cfg.lambda);
    const double prev = model.objective_trace.back();
    model.objective_trace.push_back(obj);
    if (prev - obj < cfg.tol * std::max(prev, 1e-300)) break;
  }
  return model;
}

Matrix embed(const FactorModel& model, const Matrix& T, bool l2_normalize) {
  const Eigen::Index k = model.W.rows();
  const Eigen::Index n = model.W.cols();
  if (model.H.cols() != T.rows() || T.cols() != n)
    throw std::invalid_argument("embed: inconsistent shapes");

  const Matrix ht = model.H * T;  // k x n
  Matrix r(n, 2 * k);
  r.leftCols(k) = model.W.transpose();
  r.rightCols(k) = ht.transpose();
  if (l2_normalize) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double norm = r.row(i).norm();
      if (norm > 0.0) r.row(i) /= norm;
    }
  }
  return r;
}

namespace {
constexpr char kMagic[] = "RT4SC1";

void write_i64(std::ofstream& out, std::int64_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::int64_t read_i64(std::ifstream& in) {
  std::int64_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  return v;
}
}  // namespace

void save_model(const FactorModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write model file: " + path);
  out.write(kMagic, 6);
  write_i64(out, model.W.rows());
  write_i64(out, model.H.cols());
  write_i64(out, model.W.cols());
  write_i64(out, static_cast<std::int64_t>(model.seed));
  out.write(reinterpret_cast<const char*>(model.W.data()),
            static_cast<std::streamsize>(sizeof(double)) * model.W.size());
  out.write(reinterpret_cast<const char*>(model.H.data()),
            static_cast<std::streamsize>(sizeof(double)) * model.H.size());
  if (!out) throw std::runtime_error("write failed: " + path);
}

FactorModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  char magic[6];
  in.read(magic, 6);
  if (!in || std::memcmp(magic, kMagic, 6) != 0)
    throw std::runtime_error("not an RT4SC1 model file: " + path);
  const std::int64_t k = read_i64(in);
  const std::int64_t t = read_i64(in);
  const std::int64_t n = read_i64(in);
  const std::int64_t seed = read_i64(in);
  if (!in || k < 1 || t < 0 || n < 0)
    throw std::runtime_error("corrupt model header: " + path);

  FactorModel model;
  model.seed = static_cast<std::uint64_t>(seed);
  model.W.resize(k, n);
  model.H.resize(k, t);
  in.read(reinterpret_cast<char*>(model.W.data()),
          static_cast<std::streamsize>(sizeof(double)) * model.W.size());
  in.read(reinterpret_cast<char*>(model.H.data()),
          static_cast<std::streamsize>(sizeof(double)) * model.H.size());
  if (!in) throw std::runtime_error("truncated model file: " + path);
  return model;
}

void save_embeddings_csv(const Matrix& R, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write embeddings file: " + path);
  out.precision(17);
  for (Eigen::Index i = 0; i < R.rows(); ++i) {
    for (Eigen::Index j = 0; j < R.cols(); ++j) {
      if (j) out << ',';
      out << R(i, j);
    }
    out << '\n';
  }
}

Matrix load_embeddings_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open embeddings file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) row.push_back(std::stod(field));
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::runtime_error("ragged embeddings csv: " + path);
    rows.push_back(std::move(row));
  }
  Matrix r(static_cast<Eigen::Index>(rows.size()),
           rows.empty() ? 0 : static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index i = 0; i < r.rows(); ++i)
    for (Eigen::Index j = 0; j < r.cols(); ++j)
      r(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return r;
}

}  // namespace rt4sc
