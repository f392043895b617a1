#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "topicrank/corpus.hpp"

namespace topicrank {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// SVD of M^{-1/2} D plus the SCORE ratio embedding. Column k of xi is the
// k-th left singular vector; R(i,k) = xi_{k+1}(i) / xi_1(i).
struct ScoreEmbedding {
  MatrixXd xi;              // p x K, orthonormal columns
  VectorXd singular_values; // K, nonincreasing
  MatrixXd R;               // p x (K-1)
  VectorXd M_diag;          // p, row means of D
};

// Estimated simplex vertices, one per column of V in R^{K-1}. cond is the
// condition number of [V; 1'], reported so callers can see how close the
// vertex set is to affine degeneracy.
struct SimplexVertices {
  MatrixXd V;  // (K-1) x K
  double cond = 0.0;
};

struct VertexHuntOptions {
  int sketch_centers = 0;      // 0 means 10*K
  std::uint64_t seed = 0;
  bool cluster = true;         // false: successive projection on raw rows
  int lloyd_max_iter = 100;
  double lloyd_tol = 1e-8;
};

struct TopicScoreOptions {
  VertexHuntOptions vertex_hunt;
  bool exact_simplex_ls = false;  // active-set simplex projection instead of clip+renormalize
  int dense_svd_threshold = 512;
};

struct TopicModelFit {
  MatrixXd A_hat;           // p x K, column-stochastic
  ScoreEmbedding embedding;
  SimplexVertices vertices;
  MatrixXd pi;              // p x K barycentric rows, each on the simplex
};

struct ScreeReport {
  VectorXd singular_values;       // top L, nonincreasing
  std::optional<int> k_hat;       // count of values above threshold, when given
  std::optional<double> threshold;
};

// Diagonal normalization: M_diag(j) is the mean of row j of D. Errors on
// all-zero rows, since those words carry no signal and break M^{-1/2}.
VectorXd normalization_matrix(const SparseMatrixD& D);

// Top-K SVD of M^{-1/2} D with deterministic sign fixing: xi_1 is flipped
// to positive entry sum and must be entrywise positive; trailing columns
// are flipped so their largest-magnitude entry is positive.
ScoreEmbedding score_embed(const SparseMatrixD& D, int K, int dense_svd_threshold = 512);

// Vertex hunting on the rows of R: Lloyd clustering into L sketch centers,
// then successive projection picks K of them. K = 1 returns the empty
// vertex; the raw-row fallback skips the clustering stage.
SimplexVertices vertex_hunt(const MatrixXd& R, int K, const VertexHuntOptions& options = {});

// Barycentric coordinates of r in the vertex basis: exact solve of
// [V; 1']pi = [r; 1], negatives clipped and the result renormalized.
// exact_ls instead solves the simplex-constrained least squares.
VectorXd barycentric(const VectorXd& r, const SimplexVertices& vertices, bool exact_ls = false);

// Full estimation pipeline for the topic matrix.
TopicModelFit estimate_topic_matrix(const SparseMatrixD& D, int K,
                                    const TopicScoreOptions& options = {});

ScreeReport select_k_scree(const SparseMatrixD& X, std::optional<double> threshold, int max_L,
                           int dense_svd_threshold = 512);

// Row-normalized topic loadings a_j(k); an anchor word has loading 1 on
// its topic.
MatrixXd topic_loadings(const MatrixXd& A_hat);

// Indices of the m largest loadings in column k, descending; ties broken
// by ascending word index.
std::vector<int> frequent_anchor_words(const MatrixXd& loadings, int k, int m);

}  // namespace topicrank
