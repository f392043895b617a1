#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "topicrank/corpus.hpp"
#include "topicrank/spectral.hpp"
#include "topicrank/weights.hpp"

namespace topicrank {

// Aggregated citation exchanges between J entities. wins(a,b) counts
// citations from a to b; the diagonal is structurally zero (within-entity
// citations are not paired comparisons).
struct PairedComparisons {
  std::vector<std::string> entities;
  Eigen::MatrixXd wins;  // J x J, integer-valued
};

// Export scores under the Stigler model, identified by median(mu) = 0.
// phi is the quasi-likelihood dispersion; n_pairs the number of
// comparable pairs that entered the fit. degenerate marks fits with no
// predictor variation (mu is returned as zero); phi_defined is false when
// there are no residual degrees of freedom.
struct ExportScores {
  Eigen::VectorXd mu;
  double phi = 0.0;
  long n_pairs = 0;
  bool degenerate = false;
  bool phi_defined = true;
};

struct StiglerOptions {
  double tol = 1e-10;
  int max_iter = 200;
  // Pairs entering the sample count N: true counts every pair with
  // C-bar >= 1 (consistent with the dispersion sum); false counts only
  // C-bar == 1.
  bool count_pairs_geq1 = true;
};

// Between-journal citation matrix: a citation from a paper published in
// base year y to a paper published within [y - window + 1, y] counts one
// win for the citing journal's row; matrices over base years are summed.
// Within-journal citations are excluded (zero diagonal).
PairedComparisons journal_citation_matrix(const std::vector<PaperMeta>& metas,
                                          const CitationGraph& graph, int window_years,
                                          const std::vector<int>& base_years);

// Bradley-Terry fit by IRLS on binomial pair data; errors on a
// disconnected comparison graph and on complete separation.
ExportScores fit_stigler(const PairedComparisons& pc, const StiglerOptions& options = {});

// Stationary vector of alpha * S + (1 - alpha) * uniform, where S is the
// column-stochastic citation matrix (column i spreads entity i's outgoing
// citations; dangling columns become uniform).
Eigen::VectorXd pagerank(const Eigen::MatrixXd& adjacency, double alpha = 0.85,
                         double tol = 1e-12);

struct TrScoreResult {
  ExportScores scores;
  TopicModelFit fit;
  TopicWeights weights;
};

struct TrScoreOptions {
  double lambda = 0.3;
  TopicScoreOptions topic_score;
  StiglerOptions stigler;
};

// Three-step topic ranking: topic matrix estimation, ridge weights, then
// the quasi-likelihood fit of directed citations over comparable pairs.
TrScoreResult tr_score(const SparseMatrixD& D, const CitationGraph& C, int K,
                       const TrScoreOptions& options = {});

// Quasi-likelihood export-score fit given weights; exposed separately so
// precomputed weights can be ranked without refitting the topic model.
ExportScores fit_export_scores(const Eigen::MatrixXd& W_hat, const CitationGraph& C,
                               const StiglerOptions& options = {});

enum class CrossTopicMode { Weighted, Dominant };

// K x K citation flows between topics. P is the row-normalized N_counts;
// all-zero rows are left zero and listed in zero_rows.
struct CrossTopicGraph {
  Eigen::MatrixXd P;
  Eigen::MatrixXd N_counts;
  CrossTopicMode mode = CrossTopicMode::Weighted;
  std::vector<int> zero_rows;
};

CrossTopicGraph cross_topic_graph(const Eigen::MatrixXd& W_hat, const CitationGraph& C,
                                  CrossTopicMode mode);

struct GraphEdge {
  int from = 0;
  int to = 0;
  double weight = 0.0;
};

// Off-diagonal entries of P at or above cutoff, sorted by weight
// descending. The diagonal is never emitted.
std::vector<GraphEdge> threshold_edges(const CrossTopicGraph& graph, double cutoff);

}  // namespace topicrank
