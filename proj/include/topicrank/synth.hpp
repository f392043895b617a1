#pragma once

#include <vector>

#include <Eigen/Dense>

#include "topicrank/corpus.hpp"
#include "topicrank/rng.hpp"

namespace topicrank {

// Parameters of a generated instance. A is column-stochastic with
// anchor_count anchor rows per topic; W is column-stochastic with rank K;
// mu has median zero.
struct GroundTruth {
  Eigen::MatrixXd A;
  Eigen::MatrixXd W;
  Eigen::VectorXd mu;
  std::uint64_t seed = 0;
};

// Topic matrix with the declared anchor layout: rows [k*anchor_count,
// (k+1)*anchor_count) are anchors of topic k. Row magnitudes follow a
// geometric profile spanning a factor of `heterogeneity`; non-anchor rows
// split their mass by a concentrated Dirichlet so no interior word sits
// near a simplex vertex.
Eigen::MatrixXd random_topic_matrix(int p, int K, int anchor_count, double heterogeneity,
                                    Rng& rng);

// ceil(pure_fraction * n) one-hot columns cycling over topics, the rest
// Dirichlet(alpha).
Eigen::MatrixXd random_weights(int n, int K, double dirichlet_alpha, double pure_fraction,
                               Rng& rng);

// Column i ~ Multinomial(N, A w_i), drawn word by word through the
// topic-mixture decomposition.
DocumentTermMatrix sample_counts(const Eigen::MatrixXd& A, const Eigen::MatrixXd& W, long N,
                                 Rng& rng);

// Each unordered pair is comparable with probability pair_prob; a
// comparable pair gets one directed edge, oriented i -> j with the
// logistic probability of mu'(w_i - w_j). duplicate_pairs draws the
// direction twice per comparable pair, so mutual citations (C-bar = 2)
// occur.
CitationGraph sample_citations(const Eigen::MatrixXd& W, const Eigen::VectorXd& mu,
                               double pair_prob, Rng& rng, bool duplicate_pairs = false);

struct MatchedError {
  double error = 0.0;
  std::vector<int> perm;  // column k of the estimate matches column perm[k] of the truth
};

// Sum of column l1 distances, minimized over column permutations
// (exhaustive for K <= 8, optimal assignment above).
MatchedError l1_error(const Eigen::MatrixXd& A_hat, const Eigen::MatrixXd& A_true);

// Mean column l1 distance between weight matrices, minimized over row
// permutations.
MatchedError w_error(const Eigen::MatrixXd& W_hat, const Eigen::MatrixXd& W_true);

}  // namespace topicrank
