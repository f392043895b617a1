#pragma once

#include <vector>

#include <Eigen/Dense>

#include "topicrank/corpus.hpp"

namespace topicrank {

// Estimated topic weights. Each column of W_hat lies on the simplex;
// dominant(i) is the smallest index attaining the column maximum.
// uniform_docs lists documents whose word vector was all zero and were
// assigned the uniform weight vector instead of failing the pipeline.
struct TopicWeights {
  Eigen::MatrixXd W_hat;  // K x n
  std::vector<int> dominant;
  std::vector<int> uniform_docs;
};

// Per-column ridge solve (A'A + lambda I)^{-1} A'd_i, then clip negatives
// and renormalize to unit sum. lambda = 0 requires full column rank.
TopicWeights estimate_weights_ridge(const Eigen::MatrixXd& A_hat, const SparseMatrixD& D,
                                    double lambda = 0.3);

// Weighted least squares with Theta = diag(M_diag)^{-1/2}, same
// post-processing as the ridge path.
TopicWeights estimate_weights_wls(const Eigen::MatrixXd& A_hat, const SparseMatrixD& D,
                                  const Eigen::VectorXd& M_diag);

// Argmax per column, smallest index on ties.
std::vector<int> dominant_topic(const Eigen::MatrixXd& W_hat);

}  // namespace topicrank
