#include "topicrank/weights.hpp"

#include <cmath>

#include "topicrank/errors.hpp"

namespace topicrank {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Shared post-processing: solve, clip, renormalize. Columns of rhs are
// A-projected documents; solver is a factorization of the K x K system.
TopicWeights finish_columns(const Eigen::LDLT<MatrixXd>& solver, const MatrixXd& rhs,
                            const std::vector<char>& zero_doc) {
  const int K = static_cast<int>(rhs.rows());
  const int n = static_cast<int>(rhs.cols());
  TopicWeights out;
  out.W_hat.resize(K, n);
  for (int i = 0; i < n; ++i) {
    if (zero_doc[i]) {
      out.W_hat.col(i).setConstant(1.0 / K);
      out.uniform_docs.push_back(i);
      continue;
    }
    VectorXd w = solver.solve(rhs.col(i)).cwiseMax(0.0);
    double s = w.sum();
    if (s <= 0.0)
      fail(Err::AllZeroSolution, "weight column " + std::to_string(i) +
                                     " is all zero after clipping");
    out.W_hat.col(i) = w / s;
  }
  out.dominant = dominant_topic(out.W_hat);
  return out;
}

std::vector<char> find_zero_docs(const SparseMatrixD& D) {
  std::vector<char> zero(D.cols(), 1);
  for (int i = 0; i < D.outerSize(); ++i)
    for (SparseMatrixD::InnerIterator it(D, i); it; ++it)
      if (it.value() != 0.0) {
        zero[it.col()] = 0;
        break;
      }
  return zero;
}

}  // namespace

TopicWeights estimate_weights_ridge(const MatrixXd& A_hat, const SparseMatrixD& D, double lambda) {
  if (lambda < 0.0) fail(Err::InvalidArgument, "ridge lambda must be >= 0");
  if (A_hat.rows() != D.rows()) fail(Err::ShapeMismatch, "A_hat and D row counts differ");
  const int K = static_cast<int>(A_hat.cols());

  MatrixXd G = A_hat.transpose() * A_hat + lambda * MatrixXd::Identity(K, K);
  Eigen::LDLT<MatrixXd> solver(G);
  if (solver.info() != Eigen::Success ||
      (lambda == 0.0 && G.fullPivLu().rank() < K))
    fail(Err::SingularSystem, "A'A + lambda I is singular");

  MatrixXd rhs = A_hat.transpose() * D;
  return finish_columns(solver, rhs, find_zero_docs(D));
}

TopicWeights estimate_weights_wls(const MatrixXd& A_hat, const SparseMatrixD& D,
                                  const VectorXd& M_diag) {
  if (A_hat.rows() != D.rows()) fail(Err::ShapeMismatch, "A_hat and D row counts differ");
  if (M_diag.size() != A_hat.rows()) fail(Err::ShapeMismatch, "M_diag length mismatch");
  if ((M_diag.array() <= 0.0).any()) fail(Err::InvalidArgument, "M_diag must be strictly positive");
  const int K = static_cast<int>(A_hat.cols());

  // Theta^2 = diag(1/M); normal equations (A' Theta^2 A) w = A' Theta^2 d.
  VectorXd inv_m = M_diag.cwiseInverse();
  MatrixXd Aw = inv_m.asDiagonal() * A_hat;
  MatrixXd G = A_hat.transpose() * Aw;
  Eigen::LDLT<MatrixXd> solver(G);
  if (solver.info() != Eigen::Success || G.fullPivLu().rank() < K)
    fail(Err::SingularSystem, "weighted design is rank deficient");

  MatrixXd rhs = Aw.transpose() * D;
  return finish_columns(solver, rhs, find_zero_docs(D));
}

std::vector<int> dominant_topic(const MatrixXd& W_hat) {
  const int K = static_cast<int>(W_hat.rows());
  const int n = static_cast<int>(W_hat.cols());
  std::vector<int> labels(n, 0);
  for (int i = 0; i < n; ++i) {
    int arg = 0;
    double best = W_hat(0, i);
    for (int k = 1; k < K; ++k)
      if (W_hat(k, i) > best) {
        best = W_hat(k, i);
        arg = k;
      }
    labels[i] = arg;
  }
  return labels;
}

}  // namespace topicrank
