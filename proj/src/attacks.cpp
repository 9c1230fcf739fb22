#include "rt4sc/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rt4sc/metrics.hpp"

namespace rt4sc {

EdgeAttackResult distance_edge_attack(const Matrix& R,
                                      const std::vector<std::array<int, 2>>& pairs) {
  if (pairs.size() < 2)
    throw std::invalid_argument("distance_edge_attack: need at least 2 candidate pairs");

  EdgeAttackResult res;
  res.pairs = pairs;
  res.scores.reserve(pairs.size());
  for (const auto& p : pairs) {
    if (p[0] < 0 || p[1] < 0 || p[0] >= R.rows() || p[1] >= R.rows() || p[0] == p[1])
      throw std::invalid_argument("distance_edge_attack: bad candidate pair");
    res.scores.push_back(-(R.row(p[0]) - R.row(p[1])).norm());
  }

  // 1-D 2-means on the scores, centers seeded at the extremes. The lower-mean
  // cluster means "non-edge"; equidistant scores join it.
  double lo = *std::min_element(res.scores.begin(), res.scores.end());
  double hi = *std::max_element(res.scores.begin(), res.scores.end());
  for (int it = 0; it < 100; ++it) {
    double sum_lo = 0.0, sum_hi = 0.0;
    int cnt_lo = 0, cnt_hi = 0;
    for (const double s : res.scores) {
      if (std::abs(s - lo) <= std::abs(s - hi)) {
        sum_lo += s;
        ++cnt_lo;
      } else {
        sum_hi += s;
        ++cnt_hi;
      }
    }
    const double new_lo = cnt_lo ? sum_lo / cnt_lo : lo;
    const double new_hi = cnt_hi ? sum_hi / cnt_hi : hi;
    if (new_lo == lo && new_hi == hi) break;
    lo = new_lo;
    hi = new_hi;
  }

  res.threshold = 0.5 * (lo + hi);
  res.predictions.reserve(res.scores.size());
  for (const double s : res.scores)
    res.predictions.push_back(s > res.threshold ? 1 : 0);
  return res;
}

namespace {

Matrix sigmoid_offdiag(const Matrix& Z) {
  Matrix s = (1.0 / (1.0 + (-Z.array()).exp())).matrix();
  s.diagonal().setZero();
  return s;
}

struct DecoderForward {
  Matrix P;  // rownorm(S + I)
  Matrix Y;  // P X
  Matrix F;  // tanh(Y theta)
  Vector rowsum;
  double loss = 0.0;
};

DecoderForward decoder_forward(const Matrix& Z, const Matrix& theta, const Matrix& X,
                               const Matrix& R_target) {
  DecoderForward fwd;
  Matrix a = sigmoid_offdiag(Z);
  a.diagonal().array() += 1.0;
  fwd.rowsum = a.rowwise().sum();
  fwd.P = fwd.rowsum.cwiseInverse().asDiagonal() * a;
  fwd.Y = fwd.P * X;
  fwd.F = ((fwd.Y * theta).array().tanh()).matrix();
  fwd.loss = (fwd.F - R_target).squaredNorm();
  return fwd;
}

}  // namespace

Matrix DecoderState::edge_scores() const { return sigmoid_offdiag(Z); }

double decoder_loss(const Matrix& Z, const Matrix& theta, const Matrix& X,
                    const Matrix& R_target) {
  return decoder_forward(Z, theta, X, R_target).loss;
}

std::pair<Matrix, Matrix> decoder_gradients(const Matrix& Z, const Matrix& theta,
                                            const Matrix& X, const Matrix& R_target) {
  const DecoderForward fwd = decoder_forward(Z, theta, X, R_target);

  const Matrix gu =
      (2.0 * (fwd.F - R_target).array() * (1.0 - fwd.F.array().square())).matrix();
  Matrix gtheta = fwd.Y.transpose() * gu;

  const Matrix gy = gu * theta.transpose();
  const Matrix gp = gy * X.transpose();

  // P_ij = A_ij / r_i, so dL/dA_ij = (GP_ij - <GP_i, P_i>) / r_i.
  const Vector dot = (gp.array() * fwd.P.array()).rowwise().sum();
  Matrix gz = (gp.colwise() - dot).array().colwise() * fwd.rowsum.cwiseInverse().array();
  gz.diagonal().setZero();  // diagonal of sigmoid(Z) never enters the forward
  const Matrix sig = sigmoid_offdiag(Z);
  gz = (gz.array() * sig.array() * (1.0 - sig.array())).matrix();
  return {std::move(gz), std::move(gtheta)};
}

DecoderState decoder_gra(const Matrix& R_target, const Matrix& X, int steps,
                         double lr, std::uint64_t seed) {
  const Eigen::Index n = R_target.rows();
  if (n < 2) throw std::invalid_argument("decoder_gra: need n >= 2");
  if (X.rows() != n) throw std::invalid_argument("decoder_gra: X must have n rows");

  Rng rng(seed);
  DecoderState st;
  Matrix z0 = rng.uniform_matrix(n, n, -0.1, 0.1);
  st.Z = 0.5 * (z0 + z0.transpose());
  st.Z.diagonal().setZero();
  st.theta = rng.uniform_matrix(X.cols(), R_target.cols(), -0.1, 0.1);

  double cur = decoder_loss(st.Z, st.theta, X, R_target);
  st.loss_trace.push_back(cur);

  for (int step = 0; step < steps; ++step) {
    // Theta half-step with backtracking.
    {
      const Matrix gtheta = decoder_gradients(st.Z, st.theta, X, R_target).second;
      double eta = lr;
      for (int h = 0; h <= 20; ++h, eta *= 0.5) {
        const Matrix cand = st.theta - eta * gtheta;
        const double cand_loss = decoder_loss(st.Z, cand, X, R_target);
        if (cand_loss <= cur) {
          st.theta = cand;
          cur = cand_loss;
          break;
        }
      }
    }
    // Z half-step; the symmetrized gradient keeps Z exactly symmetric.
    {
      const Matrix gz = decoder_gradients(st.Z, st.theta, X, R_target).first;
      const Matrix gsym = 0.5 * (gz + gz.transpose());
      double eta = lr;
      for (int h = 0; h <= 20; ++h, eta *= 0.5) {
        const Matrix cand = st.Z - eta * gsym;
        const double cand_loss = decoder_loss(cand, st.theta, X, R_target);
        if (cand_loss <= cur) {
          st.Z = cand;
          cur = cand_loss;
          break;
        }
      }
    }
    st.loss_trace.push_back(cur);
  }
  return st;
}

Matrix SoftmaxClassifier::predict_proba(const Matrix& rows) const {
  Matrix logits = rows * W.transpose();
  logits.rowwise() += b.transpose();
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    const double mx = logits.row(i).maxCoeff();
    logits.row(i) = (logits.row(i).array() - mx).exp();
    logits.row(i) /= logits.row(i).sum();
  }
  return logits;
}

double SoftmaxClassifier::cross_entropy(const Matrix& rows,
                                        const std::vector<int>& labels) const {
  if (static_cast<std::size_t>(rows.rows()) != labels.size())
    throw std::invalid_argument("cross_entropy: rows and labels must align");
  const Matrix p = predict_proba(rows);
  double total = 0.0;
  for (Eigen::Index i = 0; i < rows.rows(); ++i)
    total += -std::log(std::max(p(i, labels[static_cast<std::size_t>(i)]), 1e-300));
  return total / static_cast<double>(rows.rows());
}

SoftmaxClassifier train_softmax(const Matrix& R, const std::vector<int>& labels,
                                const std::vector<int>& ids, int epochs, double lr,
                                std::uint64_t seed) {
  if (ids.empty()) throw std::invalid_argument("train_softmax: empty training subset");
  if (labels.size() != static_cast<std::size_t>(R.rows()))
    throw std::invalid_argument("train_softmax: labels must align with R rows");

  int classes = 0;
  for (const int l : labels) {
    if (l < 0) throw std::invalid_argument("train_softmax: negative label");
    classes = std::max(classes, l + 1);
  }
  {
    std::vector<int> seen;
    for (const int id : ids) seen.push_back(labels[static_cast<std::size_t>(id)]);
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    if (seen.size() < 2)
      throw std::invalid_argument("train_softmax: training subset has a single class");
  }

  const Eigen::Index m = static_cast<Eigen::Index>(ids.size());
  Matrix x(m, R.cols());
  Matrix y = Matrix::Zero(m, classes);
  for (Eigen::Index i = 0; i < m; ++i) {
    x.row(i) = R.row(ids[static_cast<std::size_t>(i)]);
    y(i, labels[static_cast<std::size_t>(ids[static_cast<std::size_t>(i)])]) = 1.0;
  }

  Rng rng(seed);
  SoftmaxClassifier clf;
  clf.W = rng.uniform_matrix(classes, R.cols(), -0.01, 0.01);
  clf.b = rng.uniform_vector(classes, -0.01, 0.01);

  for (int epoch = 0; epoch < epochs; ++epoch) {
    const Matrix p = clf.predict_proba(x);
    const Matrix g = (p - y) / static_cast<double>(m);
    clf.W -= lr * (g.transpose() * x);
    clf.b -= lr * g.colwise().sum().transpose();
  }
  return clf;
}

MembershipRecord make_membership_record(const SoftmaxClassifier& model, const Matrix& R,
                                        int node, int true_label, int member) {
  MembershipRecord rec;
  rec.node = node;
  rec.member = member;

  const Matrix p = model.predict_proba(R.row(node));
  std::vector<double> conf(p.data(), p.data() + p.size());
  std::sort(conf.begin(), conf.end(), std::greater<>());
  for (int i = 0; i < 3 && i < static_cast<int>(conf.size()); ++i)
    rec.features(i) = conf[static_cast<std::size_t>(i)];
  rec.features(3) = -std::log(std::max(p(0, true_label), 1e-300));
  return rec;
}

MembershipReport membership_inference(const SoftmaxClassifier& target, const Matrix& R,
                                      const std::vector<int>& labels,
                                      const std::vector<int>& member_ids,
                                      const std::vector<int>& nonmember_ids,
                                      const ShadowSplit& shadow, int epochs, double lr,
                                      std::uint64_t seed) {
  if (member_ids.empty() || nonmember_ids.empty() || shadow.members.empty() ||
      shadow.nonmembers.empty())
    throw std::invalid_argument("membership_inference: empty split");

  const SoftmaxClassifier shadow_model =
      train_softmax(R, labels, shadow.members, epochs, lr, seed + 1);

  MembershipReport report;
  for (const int id : shadow.members)
    report.records.push_back(
        make_membership_record(shadow_model, R, id, labels[static_cast<std::size_t>(id)], 1));
  for (const int id : shadow.nonmembers)
    report.records.push_back(
        make_membership_record(shadow_model, R, id, labels[static_cast<std::size_t>(id)], 0));

  Matrix feats(static_cast<Eigen::Index>(report.records.size()), 4);
  std::vector<int> rec_labels(report.records.size());
  std::vector<int> rec_ids(report.records.size());
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    feats.row(static_cast<Eigen::Index>(i)) = report.records[i].features.transpose();
    rec_labels[i] = report.records[i].member;
    rec_ids[i] = static_cast<int>(i);
  }
  const SoftmaxClassifier attack =
      train_softmax(feats, rec_labels, rec_ids, epochs, lr, seed + 2);

  std::vector<int> truth;
  for (const int id : member_ids) {
    const auto rec =
        make_membership_record(target, R, id, labels[static_cast<std::size_t>(id)], 1);
    report.target_scores.push_back(
        attack.predict_proba(rec.features.transpose())(0, 1));
    truth.push_back(1);
  }
  for (const int id : nonmember_ids) {
    const auto rec =
        make_membership_record(target, R, id, labels[static_cast<std::size_t>(id)], 0);
    report.target_scores.push_back(
        attack.predict_proba(rec.features.transpose())(0, 1));
    truth.push_back(0);
  }

  report.auc = auc(report.target_scores, truth);
  int correct = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const int pred = report.target_scores[i] >= 0.5 ? 1 : 0;
    if (pred == truth[i]) ++correct;
  }
  report.accuracy = static_cast<double>(correct) / static_cast<double>(truth.size());
  return report;
}

}  // namespace rt4sc
