#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "rt4sc/types.hpp"

namespace rt4sc {

/// Result of a score-and-threshold edge inference attack. Scores are ordered
/// like `pairs`; predictions come from 2-means clustering of the scores with
/// ties at the threshold resolved to non-edge.
struct EdgeAttackResult {
  std::vector<std::array<int, 2>> pairs;
  std::vector<double> scores;  // higher = more likely an edge
  std::vector<char> predictions;
  double threshold = 0.0;  // midpoint of the final 2-means centers
};

/// Distance-based edge inference: score(u,v) = -||R[u] - R[v]||_2, thresholded
/// by 1-D 2-means (centers initialized at min/max, 100 Lloyd iterations).
/// Requires at least 2 candidate pairs.
EdgeAttackResult distance_edge_attack(const Matrix& R,
                                      const std::vector<std::array<int, 2>>& pairs);

/// State of the decoder-based graph reconstruction attack. Z holds symmetric
/// edge logits whose diagonal never contributes to the forward pass.
struct DecoderState {
  Matrix Z;      // n x n, symmetric
  Matrix theta;  // f x d surrogate weights
  std::vector<double> loss_trace;  // non-increasing; loss_trace[0] = init

  /// sigmoid(Z) with a zero diagonal.
  Matrix edge_scores() const;
};

/// Forward pass of the surrogate decoder:
///   f(Z, theta) = tanh( rownorm(sigmoid_offdiag(Z) + I) * X * theta ).
double decoder_loss(const Matrix& Z, const Matrix& theta, const Matrix& X,
                    const Matrix& R_target);

/// Analytic gradients of decoder_loss w.r.t. Z (diagonal entries are zero)
/// and theta.
std::pair<Matrix, Matrix> decoder_gradients(const Matrix& Z, const Matrix& theta,
                                            const Matrix& X, const Matrix& R_target);

/// Alternating gradient descent (theta then Z each step) with backtracking
/// line search; Z stays symmetric by construction. Non-convergence is not an
/// error; the loss trace records it.
DecoderState decoder_gra(const Matrix& R_target, const Matrix& X, int steps,
                         double lr, std::uint64_t seed);

/// Single linear layer + softmax trained by full-batch gradient descent on
/// mean cross-entropy.
struct SoftmaxClassifier {
  Matrix W;  // classes x d
  Vector b;  // classes

  int classes() const { return static_cast<int>(W.rows()); }
  /// One probability row per input row.
  Matrix predict_proba(const Matrix& rows) const;
  double cross_entropy(const Matrix& rows, const std::vector<int>& labels) const;
};

/// Trains on the feature rows R[ids] with labels[ids]. Throws
/// std::invalid_argument when fewer than 2 classes appear in the subset.
SoftmaxClassifier train_softmax(const Matrix& R, const std::vector<int>& labels,
                                const std::vector<int>& ids, int epochs, double lr,
                                std::uint64_t seed);

/// Shadow-attack feature vector: top-3 confidences sorted descending (zero
/// padded) plus the cross-entropy loss of the true label.
struct MembershipRecord {
  int node = 0;
  Eigen::Vector4d features = Eigen::Vector4d::Zero();
  int member = 0;
};

struct ShadowSplit {
  std::vector<int> members;     // shadow model training set
  std::vector<int> nonmembers;  // held out from the shadow model
};

struct MembershipReport {
  double auc = 0.0;
  double accuracy = 0.0;  // threshold 0.5
  std::vector<MembershipRecord> records;  // shadow records the attacker trained on
  std::vector<double> target_scores;      // member then nonmember order
};

/// Shadow-model membership inference: trains one shadow classifier on the
/// shadow member split, learns a logistic attack model from the shadow
/// records, then scores the target's members and non-members.
MembershipReport membership_inference(const SoftmaxClassifier& target, const Matrix& R,
                                      const std::vector<int>& labels,
                                      const std::vector<int>& member_ids,
                                      const std::vector<int>& nonmember_ids,
                                      const ShadowSplit& shadow, int epochs, double lr,
                                      std::uint64_t seed);

MembershipRecord make_membership_record(const SoftmaxClassifier& model, const Matrix& R,
                                        int node, int true_label, int member);

}  // namespace rt4sc
